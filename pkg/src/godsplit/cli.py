"""Command-line entry point: ``godsplit <command> ...``.

Exit codes: 0 ok, 1 usage, 2 parse failure, 3 algorithmic failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

from .clusterer import cluster
from .config import Config, load_config
from .detector import Thresholds, detect_god_headers, joint_stats, joint_stats_csv
from .element_graph import assemble
from .errors import GodsplitError, ParseFailure, UsageError
from .evaluator import MetricsReport, acc, ari, f1, modularity, mojofm, nmi, synth_merge, write_synthetic_project
from .ingest import scan_project
from .pipeline import decompose, decompose_range, prepare
from .plan import DecompositionPlan, emit_subfiles, write_report
from .rebuild import CompileTimeTable, load_commits, summarize

log = logging.getLogger("godsplit")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(UsageError.exit_code)


def _k_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected K or LO..HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> argparse.ArgumentParser:
    # Subcommands accept the global flags too; SUPPRESS keeps them from
    # resetting values already given before the subcommand name.
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument("--config", help="TOML or JSON configuration file", **kw)
    parser.add_argument("--seed", type=int, help="random seed (overrides the configuration)", **kw)
    parser.add_argument("--json", action="store_true", help="print JSON instead of text", **kw)
    parser.add_argument("-v", "--verbose", action="count", **({"default": 0} if not suppress else kw))
    return parser


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(_Parser(add_help=False), suppress=True)
    p = _global_flags(
        _Parser(prog="godsplit", description="Detect and decompose God Header Files in C projects."),
        suppress=False,
    )
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("detect", parents=[common], help="report headers above both thresholds")
    d.add_argument("root")
    d.add_argument("--min-elements", type=int)
    d.add_argument("--min-impact", type=float)
    d.add_argument("--csv", "--joint-stats", dest="joint_stats", metavar="CSV",
                   help="write (header, code size, file impact) for every header")

    c = sub.add_parser("decompose", parents=[common], help="split a header into acyclic parts")
    c.add_argument("root")
    c.add_argument("header", help="project-relative header path")
    c.add_argument("-K", "--clusters", type=_k_range, help="K or LO..HI")
    c.add_argument("--out", help="plan file (single K) or directory (K range)")
    c.add_argument("--alpha", type=float)
    c.add_argument("--od-max", type=int)
    c.add_argument("--iterations", type=int)
    c.add_argument("--restarts", type=int)
    c.add_argument("--hops", type=int)
    c.add_argument("--embed-dim", type=int)
    c.add_argument("--raw-powers", action="store_true", help="unnormalised matrix powers in view refinement")
    c.add_argument("--debug-dump", metavar="DIR", help="write intermediate matrices as JSON")

    e = sub.add_parser("evaluate", parents=[common], help="compare a plan with a ground truth")
    e.add_argument("--plan", required=True)
    e.add_argument("--truth", required=True)
    e.add_argument("--root", help="project root, to recompute modularity")

    s = sub.add_parser("estimate", parents=[common], help="recompilation cost per commit")
    s.add_argument("root")
    s.add_argument("--plan", required=True)
    s.add_argument("--commits", required=True, help="JSON Lines commit file")
    s.add_argument("--times", help="CSV path,seconds")
    s.add_argument("--unknown-touches-all", action="store_true",
                   help="treat elements missing from the plan as touching every part")
    s.add_argument("--format", choices=["json", "text", "csv"])

    y = sub.add_parser("synth", parents=[common], help="merge cohesive headers into a synthetic God Header")
    y.add_argument("root")
    y.add_argument("--headers", nargs="+", required=True)
    y.add_argument("--out", required=True, help="output project directory (must be empty)")
    y.add_argument("--name", default="merged.h")
    y.add_argument("--no-cohesion-filter", action="store_true")

    m = sub.add_parser("emit", parents=[common], help="write the sub-header files of a plan")
    m.add_argument("root")
    m.add_argument("--plan", required=True)
    m.add_argument("--out", required=True)
    m.add_argument("--umbrella", action="store_true",
                   help="also write an umbrella header (forfeits rebuild savings if adopted)")
    return p


def _config(args) -> Config:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg.cluster = replace(cfg.cluster, seed=args.seed)
    return cfg


def _emit(data: bytes, out: str | None = None) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _read_plan(path: str) -> DecompositionPlan:
    try:
        return DecompositionPlan.from_json(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


def cmd_detect(args, cfg: Config) -> int:
    project = scan_project(args.root, cfg.ingest)
    t = Thresholds(
        args.min_elements if args.min_elements is not None else cfg.thresholds.min_elements,
        args.min_impact if args.min_impact is not None else cfg.thresholds.min_impact,
    )
    found = detect_god_headers(project, t)
    if args.joint_stats:
        Path(args.joint_stats).write_text(joint_stats_csv(joint_stats(project)), encoding="utf-8")
    if args.json:
        _emit(write_report([
            {"header": r.header, "code_size": r.code_size, "file_impact": r.file_impact,
             "impacted_files": len(r.impacted_files), "impacted_loc": r.impacted_loc}
            for r in found
        ]))
    else:
        lines = [f"{r.header}\t{r.code_size} elements\t{100 * r.file_impact:.1f}% impact" for r in found]
        _emit(("\n".join(lines) + "\n" if lines else "no God Header Files found\n").encode())
    return 0


def _decomposable(project, header: str) -> None:
    f = project.file(header)
    if f.kind != "header":
        raise UsageError(f"{header}: not a header file")
    if f.parse_failed:
        raise ParseFailure(f"{header}: could not be parsed")


def _cluster_overrides(args, cfg: Config) -> None:
    over = {k: getattr(args, k) for k in ("alpha", "od_max", "iterations", "restarts", "hops", "embed_dim")
            if getattr(args, k) is not None}
    if args.raw_powers:
        over["raw_powers"] = True
    if over:
        cfg.cluster = replace(cfg.cluster, **over)


def _debug_dump(project, header: str, cfg: Config, where: str) -> None:
    out = Path(where)
    out.mkdir(parents=True, exist_ok=True)
    graph, coarse = prepare(project, header)
    (out / "element_graph.json").write_text(graph.to_json(), encoding="utf-8")
    (out / "coarse_graph.json").write_text(json.dumps(coarse.to_dict(), indent=2) + "\n", encoding="utf-8")
    if coarse.n >= cfg.cluster.K:
        result = cluster(coarse, cfg.cluster)
        doc = {"ids": coarse.ids, "history": result.history, "rates": result.rates}
        (out / "cluster_history.json").write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def cmd_decompose(args, cfg: Config) -> int:
    project = scan_project(args.root, cfg.ingest)
    _decomposable(project, args.header)
    _cluster_overrides(args, cfg)
    if args.debug_dump:
        _debug_dump(project, args.header, cfg, args.debug_dump)
    Ks = args.clusters or [cfg.cluster.K]
    if len(Ks) == 1:
        plan = decompose(project, args.header, replace(cfg.cluster, K=Ks[0]))
        data = plan.to_json().encode()
        if args.out:
            _emit(data, args.out)
        if args.json or not args.out:
            _emit(data)
        else:
            _emit(f"K={plan.K_effective} modularity={plan.metrics['modularity']:.4f} -> {args.out}\n".encode())
        return 0
    sweep = decompose_range(project, args.header, Ks, cfg.cluster)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for k, plan in sweep.plans.items():
            (out / f"plan_K{k}.json").write_text(plan.to_json(), encoding="utf-8")
        summary = {"ranking": sweep.to_dict()["ranking"], "notices": sweep.notices}
        (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    _emit(write_report(sweep, "json" if args.json else "text"))
    return 0


def _load_truth(path: str) -> dict:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    except ValueError as exc:
        raise UsageError(f"{path}: malformed truth file: {exc}") from None
    if not isinstance(doc, dict) or "groups" not in doc:
        raise UsageError(f"{path}: truth file needs a 'groups' object")
    return doc


def cmd_evaluate(args, cfg: Config) -> int:
    plan = _read_plan(args.plan)
    truth = _load_truth(args.truth)["groups"]
    pred = plan.assignment()
    rep = MetricsReport(
        mojofm=mojofm(pred, truth), nmi=nmi(pred, truth), ari=ari(pred, truth),
        acc=acc(pred, truth), f1=f1(pred, truth), modularity=plan.metrics.get("modularity"),
    )
    if args.root:
        project = scan_project(args.root, cfg.ingest)
        graph = assemble(project, plan.header)
        by_key = {e.key: e.id for e in project.elements_of(plan.header)}
        rep.modularity = modularity({by_key[k]: c for k, c in pred.items()}, graph)
    if args.json:
        _emit(write_report(rep))
    else:
        _emit(write_report(rep, "text"))
    return 0


def cmd_estimate(args, cfg: Config) -> int:
    project = scan_project(args.root, cfg.ingest)
    plan = _read_plan(args.plan)
    times = CompileTimeTable()
    if args.times:
        try:
            times = CompileTimeTable.from_csv(Path(args.times).read_text(encoding="utf-8"))
        except OSError as exc:
            raise UsageError(f"{args.times}: {exc.strerror}") from None
    commits = load_commits(args.commits)
    summary = summarize(commits, plan, project, times, args.unknown_touches_all)
    fmt = args.format or ("json" if args.json else "text")
    _emit(write_report(summary, fmt))
    return 0


def cmd_synth(args, cfg: Config) -> int:
    project = scan_project(args.root, cfg.ingest)
    for h in args.headers:
        _decomposable(project, h)
    if not args.no_cohesion_filter:
        synth_merge(args.headers, project, enforce_cohesion=True)
    truth = write_synthetic_project(project, args.headers, args.out, args.name)
    path = Path(args.out) / "truth.json"
    path.write_text(json.dumps(truth, indent=2) + "\n", encoding="utf-8")
    if args.json:
        _emit(write_report(truth))
    else:
        _emit(f"{truth['header']}: {len(truth['groups'])} elements from {len(args.headers)} headers; "
              f"truth in {path}\n".encode())
    return 0


def cmd_emit(args, cfg: Config) -> int:
    project = scan_project(args.root, cfg.ingest)
    plan = _read_plan(args.plan)
    _decomposable(project, plan.header)
    text = (Path(project.root) / plan.header).read_text(encoding="utf-8", errors="replace")
    files = emit_subfiles(plan, text, umbrella=args.umbrella)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, body in files.items():
        (out / name).write_text(body, encoding="utf-8")
    if args.json:
        _emit(write_report(sorted(files)))
    else:
        _emit("".join(f"{out / n}\n" for n in files).encode())
    return 0


COMMANDS = {
    "detect": cmd_detect,
    "decompose": cmd_decompose,
    "evaluate": cmd_evaluate,
    "estimate": cmd_estimate,
    "synth": cmd_synth,
    "emit": cmd_emit,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=[logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)],
        format="%(levelname)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args, _config(args))
    except GodsplitError as exc:
        print(f"godsplit: error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
