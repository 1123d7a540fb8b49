"""Synthetic C projects with a planted God Header File.

The header is made of ``groups`` thematic sections, each with its own
identifier prefix, structs, constants and functions. Each source file
works mostly with a single group. Cross-group references only point
from a group to an earlier one, so the planted partition is acyclic.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

PREFIXES = [
    "net", "disk", "user", "auth", "cache", "queue", "timer", "audio",
    "font", "shader", "codec", "packet", "ledger", "sensor", "plugin", "script",
]
VERBS = [
    "open", "close", "read", "write", "flush", "parse", "format", "lookup", "insert",
    "remove", "resize", "encode", "decode", "attach", "detach", "lock", "unlock",
    "push", "pop", "scan", "merge", "split", "copy", "clear", "load", "store",
]
NOUNS = [
    "entry", "handle", "record", "buffer", "header", "table", "state", "option",
    "segment", "frame", "token", "slot", "chain", "block", "range", "event",
]


@dataclass
class SyntheticProject:
    root: Path
    header: str
    truth: dict[str, str]  # element key -> group prefix


def _unique(rng, made: set[str], build) -> str:
    for _ in range(1000):
        name = build()
        if name not in made:
            made.add(name)
            return name
    raise RuntimeError("name space exhausted; lower the group size")


def generate_project(root: str | Path, groups: int = 8, per_group: int = 100,
                     sources_per_group: int = 4, cross_rate: float = 0.05,
                     seed: int = 0, header: str = "include/core.h") -> SyntheticProject:
    if not 2 <= groups <= len(PREFIXES):
        raise ValueError(f"groups must lie in [2, {len(PREFIXES)}]")
    rng = np.random.default_rng(seed)
    root = Path(root)
    (root / "include").mkdir(parents=True, exist_ok=True)
    (root / "src").mkdir(parents=True, exist_ok=True)

    made: set[str] = set()
    sections, truth = [], {}
    structs: list[list[str]] = []
    functions: list[list[str]] = []
    for g in range(groups):
        pre = PREFIXES[g]
        n_struct = max(2, per_group // 10)
        n_macro = max(2, per_group // 5)
        n_func = per_group - n_struct - n_macro
        sn = [_unique(rng, made, lambda: f"{pre}_{rng.choice(NOUNS)}") for _ in range(n_struct)]
        structs.append(sn)
        lines = [f"/* {pre} */"]
        for k, s in enumerate(sn):
            fields = [f"    unsigned {rng.choice(NOUNS)}_count;", f"    void *{rng.choice(NOUNS)}_data;"]
            if k:
                fields.append(f"    struct {sn[int(rng.integers(k))]} *parent;")
            lines.append(f"struct {s} {{\n" + "\n".join(fields) + "\n};")
            truth[f"struct:{s}"] = pre
        for _ in range(n_macro):
            m = _unique(rng, made, lambda: f"{pre}_{rng.choice(NOUNS)}_{rng.choice(['max', 'min', 'size', 'flags'])}".upper())
            lines.append(f"#define {m} {int(rng.integers(1, 4096))}")
            truth[f"macro:{m}"] = pre
        fn = []
        for _ in range(n_func):
            f = _unique(rng, made, lambda: f"{pre}_{rng.choice(VERBS)}_{rng.choice(NOUNS)}")
            own = sn[int(rng.integers(len(sn)))]
            args = [f"struct {own} *self"]
            if g and rng.random() < cross_rate:
                other = int(rng.integers(g))
                args.append(f"const struct {structs[other][int(rng.integers(len(structs[other])))]} *peer")
            if rng.random() < 0.3:
                args.append(f"struct {sn[int(rng.integers(len(sn)))]} *aux")
            lines.append(f"int {f}({', '.join(args)});")
            truth[f"function_decl:{f}"] = pre
            fn.append(f)
        functions.append(fn)
        sections.append("\n".join(lines))

    guard = "CORE_H"
    text = f"#ifndef {guard}\n#define {guard}\n\n" + "\n\n".join(sections) + f"\n\n#endif /* {guard} */\n"
    (root / header).write_text(text, encoding="utf-8")

    hname = Path(header).name
    for g in range(groups):
        fn = functions[g]
        for s in range(sources_per_group):
            picked = sorted(set(rng.choice(fn, size=min(len(fn), 12), replace=False).tolist()))
            if g and rng.random() < 0.5:
                other = int(rng.integers(g))
                picked.append(str(rng.choice(functions[other])))
            body = "\n".join(f"    rc |= {f}(0{', 0' * 2});" for f in picked)
            src = (
                f'#include "{hname}"\n\nint {PREFIXES[g]}_unit_{s}(void)\n{{\n    int rc = 0;\n'
                f"{body}\n    return rc;\n}}\n"
            )
            (root / "src" / f"{PREFIXES[g]}_{s}.c").write_text(src, encoding="utf-8")
    return SyntheticProject(root, header, truth)
