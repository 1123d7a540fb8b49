"""God Header File detection by code size and file impact."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .ingest import ProjectModel

DEFAULT_MIN_ELEMENTS = 400
DEFAULT_MIN_IMPACT = 0.40


@dataclass
class Thresholds:
    min_elements: int = DEFAULT_MIN_ELEMENTS
    min_impact: float = DEFAULT_MIN_IMPACT


@dataclass
class GodHeaderReport:
    header: str
    code_size: int
    file_impact: float
    impacted_files: list[str] = field(default_factory=list)
    impacted_loc: int = 0


def impacted_set(header: str, project: ProjectModel) -> set[str]:
    """Includers of the header, plus the header itself when it has any includer."""
    includers = project.includers_of(header)
    if includers:
        includers.add(header)
    return includers


def file_impact(header: str, project: ProjectModel) -> float:
    project.file(header)
    total = sum(f.line_count for f in project.files)
    if total == 0:
        return 0.0
    hit = impacted_set(header, project)
    return sum(project.file(p).line_count for p in hit) / total


def report_for(header: str, project: ProjectModel) -> GodHeaderReport:
    hit = impacted_set(header, project)
    return GodHeaderReport(
        header=header,
        code_size=len(project.elements_of(header)),
        file_impact=file_impact(header, project),
        impacted_files=sorted(hit),
        impacted_loc=sum(project.file(p).line_count for p in hit),
    )


def detect_god_headers(project: ProjectModel, thresholds: Thresholds | None = None) -> list[GodHeaderReport]:
    t = thresholds or Thresholds()
    found = []
    for h in project.headers:
        if len(project.elements_of(h)) <= t.min_elements:
            continue
        rep = report_for(h, project)
        if rep.file_impact > t.min_impact:
            found.append(rep)
    found.sort(key=lambda r: (-r.code_size, r.header))
    return found


def joint_stats(project: ProjectModel) -> list[tuple[str, int, float]]:
    """(header, code size, file impact) for every header, in path order."""
    return [(h, len(project.elements_of(h)), file_impact(h, project)) for h in project.headers]


def joint_stats_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["header", "code_size", "file_impact"])
    for h, size, impact in rows:
        w.writerow([h, size, f"{impact:.6f}"])
    return buf.getvalue()
