"""Decomposition plans, their serialisation, and sub-header emission."""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import asdict, dataclass, field, is_dataclass
from pathlib import PurePosixPath

from .errors import AlgorithmError, UsageError
from .ingest import parse_text

PLAN_VERSION = 1


@dataclass
class DecompositionPlan:
    header: str
    K_requested: int
    K_effective: int
    clusters: dict[int, list[str]]  # cluster id -> element keys in source order
    include_dag: list[list[int]]  # [including, included]
    repairs: list[dict] = field(default_factory=list)
    dropped_clusters: list[int] = field(default_factory=list)
    params: dict = field(default_factory=dict)
    metrics: dict = field(default_factory=dict)
    notices: list[str] = field(default_factory=list)
    plan_version: int = PLAN_VERSION

    def assignment(self) -> dict[str, int]:
        return {k: c for c, keys in self.clusters.items() for k in keys}

    def to_dict(self) -> dict:
        return {
            "plan_version": self.plan_version,
            "header": self.header,
            "K_requested": self.K_requested,
            "K_effective": self.K_effective,
            "clusters": {str(c): list(v) for c, v in self.clusters.items()},
            "include_dag": [list(a) for a in self.include_dag],
            "repairs": self.repairs,
            "dropped_clusters": list(self.dropped_clusters),
            "params": self.params,
            "metrics": self.metrics,
            "notices": list(self.notices),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "DecompositionPlan":
        version = d.get("plan_version")
        if version != PLAN_VERSION:
            raise UsageError(f"unsupported plan_version {version!r}")
        return cls(
            header=d["header"],
            K_requested=d["K_requested"],
            K_effective=d["K_effective"],
            clusters={int(c): list(v) for c, v in d["clusters"].items()},
            include_dag=[list(a) for a in d["include_dag"]],
            repairs=d.get("repairs", []),
            dropped_clusters=list(d.get("dropped_clusters", [])),
            params=d.get("params", {}),
            metrics=d.get("metrics", {}),
            notices=list(d.get("notices", [])),
            plan_version=version,
        )

    @classmethod
    def from_json(cls, text: str) -> "DecompositionPlan":
        try:
            return cls.from_dict(json.loads(text))
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed plan: {exc}") from None


# --- reports ------------------------------------------------------------

def _plain(obj):
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if is_dataclass(obj):
        return asdict(obj)
    if isinstance(obj, (list, tuple)):
        return [_plain(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    return obj


def _scalar_rows(obj) -> list[tuple[str, object]]:
    d = _plain(obj)
    if not isinstance(d, dict):
        return [("value", d)]
    rows = []
    for k, v in d.items():
        rows.append((k, json.dumps(v) if isinstance(v, (dict, list)) else v))
    return rows


def write_report(obj, fmt: str = "json") -> bytes:
    """Serialise a result object as ``json``, ``text`` or ``csv``.

    Objects may provide ``to_text()`` or ``csv_rows()`` for bespoke layouts;
    otherwise top-level fields are listed one per line or row.
    """
    if fmt == "json":
        return (json.dumps(_plain(obj), indent=2) + "\n").encode()
    if fmt == "text":
        if hasattr(obj, "to_text"):
            return obj.to_text().encode()
        rows = _scalar_rows(obj)
        width = max((len(k) for k, _ in rows), default=0)
        return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows).encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if hasattr(obj, "csv_rows"):
            w.writerows(obj.csv_rows())
        elif isinstance(obj, list) and obj and isinstance(obj[0], (list, tuple)):
            w.writerows(obj)
        else:
            w.writerow(["field", "value"])
            w.writerows(_scalar_rows(obj))
        return buf.getvalue().encode()
    raise UsageError(f"unknown report format {fmt!r} (choose json, text or csv)")


# --- emission -----------------------------------------------------------

def topological_order(nodes, arcs) -> list[int]:
    """Nodes ordered so that an included file precedes every file including it.

    Ties are broken by the smallest id.
    """
    nodes = sorted(nodes)
    deps = {v: set() for v in nodes}
    for a, b in arcs:
        deps[a].add(b)
    done: list[int] = []
    placed: set[int] = set()
    while len(done) < len(nodes):
        ready = [v for v in nodes if v not in placed and deps[v] <= placed]
        if not ready:
            raise AlgorithmError("include_dag contains a cycle")
        done.append(ready[0])
        placed.add(ready[0])
    return done


def part_name(header: str, cluster: int) -> str:
    return f"{PurePosixPath(header).stem}_part{cluster + 1}.h"


def guard_name(filename: str) -> str:
    return re.sub(r"[^A-Za-z0-9]", "_", filename).upper() + "_"


def element_keys(parsed) -> list[str]:
    seen: dict[str, int] = {}
    out = []
    for e in parsed.elements:
        base = f"{e.kind}:{e.name}"
        seen[base] = seen.get(base, 0) + 1
        out.append(base if seen[base] == 1 else f"{base}#{seen[base]}")
    return out


def _wrap(chunks: list[tuple[str, str, str | None]]) -> str:
    """Join (condition, text, gap) chunks, grouping runs that share a condition.

    ``gap`` is the original text separating a chunk from its predecessor when
    the two were neighbours in the source; otherwise a blank line is used.
    """
    out = []
    k = 0
    while k < len(chunks):
        cond = chunks[k][0]
        body = chunks[k][1]
        k += 1
        while k < len(chunks) and chunks[k][0] == cond:
            gap = chunks[k][2]
            body += (gap if gap is not None else "\n\n") + chunks[k][1]
            k += 1
        out.append(f"#if {cond}\n{body}\n#endif" if cond else body)
    return "\n\n".join(out)


def _comment_only(text: str) -> bool:
    stripped = re.sub(r"/\*.*?\*/|//[^\n]*", "", text, flags=re.S)
    return "#" not in stripped and not stripped.strip()


def emit_subfiles(plan: DecompositionPlan, header_text: str, umbrella: bool = False) -> dict[str, str]:
    """Generated sub-header texts keyed by file name.

    Each element's bytes are copied verbatim from ``header_text``. The
    original header's own includes are repeated in every part.
    """
    parsed = parse_text(header_text)
    keys = element_keys(parsed)
    by_key = dict(zip(keys, parsed.elements))
    owner = plan.assignment()
    missing = sorted(set(owner) - set(by_key))
    if missing:
        raise UsageError(f"plan elements not found in header text: {', '.join(missing[:5])}")
    unplaced = [k for k in keys if k not in owner]
    if unplaced:
        raise UsageError(f"header elements missing from plan: {', '.join(unplaced[:5])}")

    live = [c for c in sorted(plan.clusters) if plan.clusters[c]]
    order = topological_order(live, plan.include_dag)
    rank = {c: r for r, c in enumerate(order)}
    deps = {c: sorted({b for a, b in plan.include_dag if a == c}, key=rank.get) for c in live}
    inherited = []
    self_name = PurePosixPath(plan.header).name
    for d in parsed.includes:
        item = (d.condition, f"#include {d.literal}", "\n")
        if PurePosixPath(d.target).name != self_name and item not in inherited:
            inherited.append(item)
    position = {id(e): k for k, e in enumerate(parsed.elements)}

    files: dict[str, str] = {}
    for c in live:
        name = part_name(plan.header, c)
        guard = guard_name(name)
        lines = [f"#ifndef {guard}", f"#define {guard}", ""]
        incl = [f'#include "{part_name(plan.header, d)}"' for d in deps[c]]
        if incl:
            lines.extend(incl)
            lines.append("")
        if inherited:
            lines.append(_wrap(inherited))
            lines.append("")
        elems = sorted((by_key[k] for k in plan.clusters[c]), key=lambda e: e.start)
        chunks = []
        for k, e in enumerate(elems):
            gap = None
            if k > 0 and position[id(e)] == position[id(elems[k - 1])] + 1:
                between = header_text[elems[k - 1].end:e.start]
                if _comment_only(between):
                    gap = between if "\n" in between else "\n"
            chunks.append((e.condition, header_text[e.start:e.end], gap))
        lines.append(_wrap(chunks))
        lines.extend(["", f"#endif /* {guard} */", ""])
        files[name] = "\n".join(lines)
    if umbrella:
        # Including every part restores compilability but gives up any rebuild savings.
        stem = PurePosixPath(plan.header).stem
        guard = guard_name(f"{stem}_all.h")
        body = [f'#include "{part_name(plan.header, c)}"' for c in order]
        files[f"{stem}_all.h"] = "\n".join(
            [f"#ifndef {guard}", f"#define {guard}", "", *body, "", f"#endif /* {guard} */", ""]
        )
    return files

