"""Synthetic God Header Files built by merging cohesive headers."""

from __future__ import annotations

import logging
import os
import shutil
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path, PurePosixPath

import numpy as np

from ..element_graph import ElementGraph, assemble, graph_for_elements
from ..errors import AlgorithmError, UsageError
from ..ingest import ProjectModel, parse_text

log = logging.getLogger(__name__)

TRUTH_VERSION = 1


def cohesion(graph: ElementGraph, members=None) -> float:
    """Mean combined pairwise weight (A_sem + A_couse + A_dep) / 3 over member pairs."""
    idx = range(graph.n) if members is None else [graph.index()[e] for e in members]
    idx = list(idx)
    if len(idx) < 2:
        raise AlgorithmError("cohesion needs at least two elements")
    W = graph.combined()[np.ix_(idx, idx)] / 3.0
    iu = np.triu_indices(len(idx), 1)
    return float(W[iu].mean())


def header_cohesion(project: ProjectModel, header: str) -> float | None:
    if len(project.elements_of(header)) < 2:
        return None
    return cohesion(assemble(project, header))


def project_cohesion(project: ProjectModel) -> float:
    vals = [c for h in project.headers if (c := header_cohesion(project, h)) is not None]
    return float(np.mean(vals)) if vals else 0.0


@dataclass
class SynthResult:
    graph: ElementGraph
    truth: dict[int, str]
    warnings: list[str] = field(default_factory=list)


def synth_merge(headers: list[str], project: ProjectModel, enforce_cohesion: bool = True) -> SynthResult:
    """Merge headers into one element universe; ground truth is the header of origin."""
    if len(headers) < 2:
        raise UsageError("synthetic merge needs at least two headers")
    if enforce_cohesion:
        avg = project_cohesion(project)
        for h in headers:
            c = header_cohesion(project, h)
            if c is None or c <= avg:
                shown = "undefined" if c is None else f"{c:.4f}"
                raise AlgorithmError(
                    f"{h}: cohesion {shown} is not above the project average {avg:.4f}"
                )
    elements = [e for h in headers for e in project.elements_of(h)]
    warnings = []
    counts = Counter(e.name for e in elements)
    for name, k in sorted(counts.items()):
        hdrs = sorted({e.header for e in elements if e.name == name})
        if len(hdrs) > 1:
            msg = f"name {name!r} appears in {', '.join(hdrs)}; elements kept apart by id"
            warnings.append(msg)
            log.warning(msg)
    graph = graph_for_elements(elements, project.usage)
    return SynthResult(graph, {e.id: e.header for e in elements}, warnings)


def _strip_boilerplate(text: str, parsed) -> str:
    """Header text without its include guard, for concatenation."""
    if parsed.guard is None:
        return text
    lines = text.split("\n")
    out = []
    state = 0
    for line in lines:
        s = line.strip()
        if state == 0 and s.startswith("#") and "ifndef" in s and parsed.guard in s:
            state = 1
            continue
        if state == 1 and s.startswith("#") and "define" in s and parsed.guard in s:
            state = 2
            continue
        out.append(line)
    # drop the final #endif
    for k in range(len(out) - 1, -1, -1):
        if out[k].strip().startswith("#") and "endif" in out[k]:
            del out[k]
            break
    return "\n".join(out)


def write_synthetic_project(project: ProjectModel, headers: list[str], out_dir: str | os.PathLike,
                            merged_name: str = "merged.h") -> dict:
    """Copy the project into ``out_dir`` with ``headers`` merged into one file.

    Includes of any merged header are redirected to the merged file. Returns
    the ground-truth document mapping element keys of the merged header to
    the header each element came from.
    """
    root = Path(project.root)
    out = Path(out_dir)
    if out.exists() and any(out.iterdir()):
        raise UsageError(f"{out}: output directory is not empty")
    merged_rel = str(PurePosixPath(headers[0]).parent / merged_name)
    shutil.copytree(root, out, dirs_exist_ok=True)
    merged_parts = []
    regions = []
    guard = "GODSPLIT_" + "".join(ch if ch.isalnum() else "_" for ch in merged_rel.upper())
    head = f"#ifndef {guard}\n#define {guard}\n\n"
    offset = len(head)
    for h in headers:
        text = (root / h).read_text(encoding="utf-8", errors="replace")
        lines = text.split("\n")
        for d in project.file(h).include_directives:
            # includes between merged headers become self-includes; drop them
            if _resolve_one(h, d, project) in set(headers):
                lines[d.line - 1] = ""
        text = "\n".join(lines)
        body = _strip_boilerplate(text, parse_text(text)).strip("\n") + "\n\n"
        merged_parts.append(f"/* from {h} */\n" + body)
        start = offset + len(f"/* from {h} */\n")
        offset += len(merged_parts[-1])
        regions.append((start, offset, h))
        (out / h).unlink()
    merged_text = head + "".join(merged_parts) + f"#endif /* {guard} */\n"
    (out / merged_rel).write_text(merged_text, encoding="utf-8")

    # redirect includes of merged headers
    merged_set = set(headers)
    for f in project.files:
        if f.path in merged_set or not (set(f.resolved_includes) & merged_set):
            continue
        path = out / f.path
        lines = path.read_text(encoding="utf-8", errors="replace").split("\n")
        rel = os.path.relpath(merged_rel, str(PurePosixPath(f.path).parent) or ".").replace(os.sep, "/")
        done = False
        for d in sorted(f.include_directives, key=lambda d: d.line):
            target = _resolve_one(f.path, d, project)
            if target not in merged_set:
                continue
            if done:
                lines[d.line - 1] = ""
                continue
            spelled = rel
            if PurePosixPath(target).parent == PurePosixPath(merged_rel).parent:
                # keep the includer's spelling, which resolves through the same directory
                spelled = str(PurePosixPath(d.target).parent / merged_name)
                spelled = spelled[2:] if spelled.startswith("./") else spelled
            lines[d.line - 1] = f"#include <{spelled}>" if d.angled else f'#include "{spelled}"'
            done = True
        path.write_text("\n".join(lines), encoding="utf-8")

    parsed = parse_text(merged_text)
    truth = {}
    seen: dict[str, int] = {}
    for e in parsed.elements:
        base = f"{e.kind}:{e.name}"
        seen[base] = seen.get(base, 0) + 1
        key = base if seen[base] == 1 else f"{base}#{seen[base]}"
        origin = next(h for s, t, h in regions if s <= e.start < t)
        truth[key] = origin
    return {"truth_version": TRUTH_VERSION, "header": merged_rel, "groups": truth}


def _resolve_one(path: str, d, project: ProjectModel) -> str | None:
    here = str(PurePosixPath(path).parent)
    cand = os.path.normpath(os.path.join(here, d.target)).replace(os.sep, "/")
    cand = cand[2:] if cand.startswith("./") else cand
    if not d.angled and project.has_file(cand):
        return cand
    for r in project.file(path).resolved_includes:
        if r.endswith("/" + d.target) or r == d.target:
            return r
    return None
