"""Per-commit recompilation cost before and after decomposing a header.

After decomposition every file that reached the original header is assumed
to include exactly the parts whose elements it names (minimal includes).
Parts include each other along the plan's include DAG. The set of
translation units rebuilt for a commit is then recomputed as a closure over
this rewritten include graph.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .errors import UsageError
from .ingest import ProjectModel, transitive_includes
from .plan import DecompositionPlan, part_name

log = logging.getLogger(__name__)


@dataclass
class CommitRecord:
    commit_id: str
    modified_elements: frozenset[str]

    def __post_init__(self):
        if not self.commit_id:
            raise UsageError("commit id must be non-empty")
        self.modified_elements = frozenset(self.modified_elements)


@dataclass
class CompileTimeTable:
    seconds: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        bad = [p for p, s in self.seconds.items() if s < 0]
        if bad:
            raise UsageError(f"negative compile time for {bad[0]}")
        self._warned: set[str] = set()

    def get(self, path: str) -> float:
        if path in self.seconds:
            return self.seconds[path]
        if path not in self._warned:
            self._warned.add(path)
            log.warning("%s: no compile time recorded, counted as 0 s", path)
        return 0.0

    @classmethod
    def from_csv(cls, text: str) -> "CompileTimeTable":
        out = {}
        for k, row in enumerate(csv.reader(io.StringIO(text))):
            if not row or (k == 0 and row[0].strip().lower() == "path"):
                continue
            try:
                out[row[0].strip()] = float(row[1])
            except (IndexError, ValueError):
                raise UsageError(f"compile-time table line {k + 1}: expected 'path,seconds'") from None
        return cls(out)


@dataclass
class ImpactResult:
    recompiled_files: int = 0
    recompiled_loc: int = 0
    recompile_seconds: float = 0.0
    files: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def load_commits(path: str | Path) -> list[CommitRecord]:
    """Read JSON Lines ``{"commit": id, "elements": [names]}``."""
    out = []
    for k, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines()):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            out.append(CommitRecord(str(obj["commit"]), frozenset(obj.get("elements", []))))
        except (ValueError, KeyError, TypeError):
            raise UsageError(f"{path}:{k + 1}: malformed commit record") from None
    return out


def impacted_files(headers: Iterable[str], include_graph: Mapping[str, Iterable[str]]) -> set[str]:
    """Files whose transitive include closure meets ``headers``."""
    targets = set(headers)
    closure = transitive_includes({k: list(v) for k, v in include_graph.items()})
    return {f for f, reach in closure.items() if not targets.isdisjoint(reach)}


def _result(paths: set[str], project: ProjectModel, times: CompileTimeTable) -> ImpactResult:
    units = sorted(p for p in paths if project.has_file(p) and project.file(p).kind == "source")
    return ImpactResult(
        recompiled_files=len(units),
        recompiled_loc=sum(project.file(p).line_count for p in units),
        recompile_seconds=float(sum(times.get(p) for p in units)),
        files=units,
    )


def baseline_impact(commit: CommitRecord, header: str, project: ProjectModel,
                    times: CompileTimeTable) -> ImpactResult:
    """Any edit to the undecomposed header rebuilds every unit including it."""
    return _result(impacted_files([header], project.include_graph), project, times)


def _part_node(header: str, cluster: int) -> str:
    # graph node for a part; the "::" keeps it apart from real project paths
    return f"{header}::{part_name(header, cluster)}"


def rewritten_graph(plan: DecompositionPlan, project: ProjectModel) -> dict[str, list[str]]:
    """Include graph after replacing the header by its parts under minimal includes."""
    header = plan.header
    project.file(header)
    key_to_id = {e.key: e.id for e in project.elements_of(header)}
    owner = {}
    for c, keys in plan.clusters.items():
        for k in keys:
            if k in key_to_id:
                owner[key_to_id[k]] = c
    parts = {c: _part_node(header, c) for c in plan.clusters if plan.clusters[c]}
    closure = project.include_closure()
    graph: dict[str, list[str]] = {}
    for f in project.files:
        if f.path == header:
            continue
        arcs = [h for h in f.resolved_includes if h != header]
        if header in closure.get(f.path, ()):
            named = {owner[e] for e in project.usage.file_uses.get(f.path, ()) if e in owner}
            arcs.extend(parts[c] for c in sorted(named))
        graph[f.path] = arcs
    for c, name in parts.items():
        graph[name] = [parts[b] for a, b in plan.include_dag if a == c]
    return graph


def modified_parts(commit: CommitRecord, plan: DecompositionPlan, project: ProjectModel,
                   unknown_touches_all: bool = False) -> set[int]:
    by_name: dict[str, set[int]] = {}
    keys = plan.assignment()
    for e in project.elements_of(plan.header):
        if e.key in keys:
            for n in e.names:
                by_name.setdefault(n, set()).add(keys[e.key])
    touched: set[int] = set()
    for name in sorted(commit.modified_elements):
        hit = by_name.get(name)
        if hit:
            touched |= hit
            continue
        if unknown_touches_all:
            log.warning("commit %s: %r not in plan, assuming every part changed", commit.commit_id, name)
            touched |= {c for c in plan.clusters if plan.clusters[c]}
        else:
            log.warning("commit %s: %r not in plan, skipped", commit.commit_id, name)
    return touched


def commit_impact(commit: CommitRecord, plan: DecompositionPlan, project: ProjectModel,
                  times: CompileTimeTable, unknown_touches_all: bool = False,
                  graph: Mapping[str, list[str]] | None = None) -> ImpactResult:
    graph = graph if graph is not None else rewritten_graph(plan, project)
    touched = modified_parts(commit, plan, project, unknown_touches_all)
    if not touched:
        return ImpactResult()
    names = {_part_node(plan.header, c) for c in touched}
    return _result(impacted_files(names, graph), project, times)


@dataclass
class CommitRow:
    commit_id: str
    baseline: ImpactResult
    decomposed: ImpactResult


@dataclass
class ImpactSummary:
    header: str
    rows: list[CommitRow]
    mean_baseline: dict[str, float]
    mean_decomposed: dict[str, float]
    reduction_pct: dict[str, float]
    total_saved_seconds: float

    def to_dict(self) -> dict:
        return {
            "header": self.header,
            "commits": [
                {"commit": r.commit_id, "baseline": r.baseline.to_dict(), "decomposed": r.decomposed.to_dict()}
                for r in self.rows
            ],
            "mean_baseline": self.mean_baseline,
            "mean_decomposed": self.mean_decomposed,
            "reduction_pct": self.reduction_pct,
            "total_saved_seconds": self.total_saved_seconds,
        }

    def csv_rows(self) -> list[list]:
        out = [["commit", "base_files", "base_loc", "base_seconds", "new_files", "new_loc", "new_seconds"]]
        for r in self.rows:
            b, d = r.baseline, r.decomposed
            out.append([r.commit_id, b.recompiled_files, b.recompiled_loc, b.recompile_seconds,
                        d.recompiled_files, d.recompiled_loc, d.recompile_seconds])
        return out

    def to_text(self) -> str:
        cols = ["#recompiled files", "#recompiled LOC", "recompile time (s)"]
        keys = ["files", "loc", "seconds"]
        head = ["", *cols]
        body = [
            ["before", *(_fmt(self.mean_baseline[k]) for k in keys)],
            ["after", *(_fmt(self.mean_decomposed[k]) for k in keys)],
            ["reduction", *(f"{self.reduction_pct[k]:.1f}%" for k in keys)],
        ]
        widths = [max(len(r[i]) for r in [head, *body]) for i in range(len(head))]
        lines = [f"Average recompilation cost per commit ({len(self.rows)} commits, {self.header})"]
        for r in [head, *body]:
            lines.append("  ".join(c.rjust(w) if i else c.ljust(w) for i, (c, w) in enumerate(zip(r, widths))))
        lines.append(f"total time saved: {self.total_saved_seconds:.2f} s")
        return "\n".join(lines) + "\n"


def _fmt(x: float) -> str:
    return f"{x:,.2f}"


def _mean(results: list[ImpactResult]) -> dict[str, float]:
    n = len(results)
    return {
        "files": sum(r.recompiled_files for r in results) / n,
        "loc": sum(r.recompiled_loc for r in results) / n,
        "seconds": sum(r.recompile_seconds for r in results) / n,
    }


def summarize(commits: list[CommitRecord], plan: DecompositionPlan, project: ProjectModel,
              times: CompileTimeTable, unknown_touches_all: bool = False) -> ImpactSummary:
    if not commits:
        raise UsageError("at least one commit is required")
    graph = rewritten_graph(plan, project)
    rows = [
        CommitRow(
            c.commit_id,
            baseline_impact(c, plan.header, project, times),
            commit_impact(c, plan, project, times, unknown_touches_all, graph),
        )
        for c in commits
    ]
    mb = _mean([r.baseline for r in rows])
    md = _mean([r.decomposed for r in rows])
    red = {k: (100.0 * (1 - md[k] / mb[k]) if mb[k] > 0 else 0.0) for k in mb}
    saved = sum(r.baseline.recompile_seconds - r.decomposed.recompile_seconds for r in rows)
    return ImpactSummary(plan.header, rows, mb, md, red, saved)
