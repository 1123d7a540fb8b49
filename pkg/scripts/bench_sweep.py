"""Time a K sweep on synthetic headers of growing size.

    python3 scripts/bench_sweep.py --sizes 200 400 800 --ks 4..10
"""

import argparse
import tempfile
import time
from pathlib import Path

from godsplit.evaluator import mojofm
from godsplit.ingest import IngestConfig, scan_project
from godsplit.pipeline import decompose_range
from godsplit.synthetic import generate_project


def k_range(text):
    lo, _, hi = text.partition("..")
    return list(range(int(lo), int(hi or lo) + 1))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[200, 400, 800])
    ap.add_argument("--groups", type=int, default=8)
    ap.add_argument("--ks", type=k_range, default=list(range(4, 11)))
    args = ap.parse_args()

    print(f"{'elements':>8}  {'scan s':>7}  {'sweep s':>8}  best K  MoJoFM@groups")
    for size in args.sizes:
        with tempfile.TemporaryDirectory() as tmp:
            syn = generate_project(Path(tmp), groups=args.groups, per_group=size // args.groups)
            t0 = time.perf_counter()
            project = scan_project(syn.root, IngestConfig(include_dirs=["include"]))
            t1 = time.perf_counter()
            sweep = decompose_range(project, syn.header, args.ks)
            t2 = time.perf_counter()
            plan = sweep.plans.get(args.groups)
            score = f"{mojofm(plan.assignment(), syn.truth):.1f}" if plan else "-"
            n = len(project.elements_of(syn.header))
            print(f"{n:>8}  {t1 - t0:>7.2f}  {t2 - t1:>8.2f}  {sweep.ranking[0][0]:>6}  {score:>13}")


if __name__ == "__main__":
    main()
