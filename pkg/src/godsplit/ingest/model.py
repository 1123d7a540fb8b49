"""Project model: files, code elements, include graph and usage indexes."""

from __future__ import annotations

import fnmatch
import json
import logging
import os
from collections import defaultdict, deque
from dataclasses import dataclass, field
from pathlib import Path, PurePosixPath
from typing import Iterable

from ..errors import UsageError
from ..lexicon import DEFAULT_STOP_WORDS, tokenize_identifier
from .cparse import IncludeDirective, parse_text

log = logging.getLogger(__name__)

MODEL_VERSION = 1
HEADER_EXT = (".h",)
SOURCE_EXT = (".c",)


@dataclass
class IngestConfig:
    include_dirs: list[str] = field(default_factory=list)
    exclude_globs: list[str] = field(default_factory=list)
    stop_words: frozenset[str] = DEFAULT_STOP_WORDS


@dataclass
class SourceFile:
    path: str
    kind: str  # "header" | "source"
    line_count: int
    include_directives: list[IncludeDirective] = field(default_factory=list)
    resolved_includes: list[str] = field(default_factory=list)
    external_includes: list[str] = field(default_factory=list)
    identifiers: frozenset[str] = frozenset()
    guard: str | None = None
    parse_failed: bool = False


@dataclass(frozen=True)
class CodeElement:
    id: int
    name: str
    kind: str
    header: str
    span: tuple[int, int]
    extent: tuple[int, int]
    word_set: frozenset[str]
    referenced_names: frozenset[str]
    extra_names: tuple[str, ...] = ()
    condition: str = ""
    key: str = ""

    @property
    def names(self) -> tuple[str, ...]:
        return (self.name,) + self.extra_names


@dataclass
class UsageIndex:
    users_of_element: dict[int, frozenset[str]]
    successors: dict[int, frozenset[int]]
    uses: dict[int, frozenset[int]]
    file_uses: dict[str, frozenset[int]]  # every file (headers too) -> elements it names
    ambiguities: list[str] = field(default_factory=list)


@dataclass
class ProjectModel:
    root: str
    files: list[SourceFile]
    elements: list[CodeElement]
    usage: UsageIndex
    diagnostics: list[str] = field(default_factory=list)

    def __post_init__(self):
        self._by_path = {f.path: f for f in self.files}
        self._by_header: dict[str, list[CodeElement]] = defaultdict(list)
        for e in self.elements:
            self._by_header[e.header].append(e)
        self._closure: dict[str, frozenset[str]] | None = None

    @property
    def include_graph(self) -> dict[str, list[str]]:
        return {f.path: list(f.resolved_includes) for f in self.files}

    def file(self, path: str) -> SourceFile:
        try:
            return self._by_path[path]
        except KeyError:
            raise UsageError(f"{path}: not a file of the project") from None

    def has_file(self, path: str) -> bool:
        return path in self._by_path

    @property
    def headers(self) -> list[str]:
        return [f.path for f in self.files if f.kind == "header"]

    def elements_of(self, header: str) -> list[CodeElement]:
        self.file(header)
        return list(self._by_header.get(header, []))

    def element(self, eid: int) -> CodeElement:
        return self.elements[eid]

    def include_closure(self) -> dict[str, frozenset[str]]:
        if self._closure is None:
            self._closure = transitive_includes(self.include_graph)
        return self._closure

    def includers_of(self, header: str) -> set[str]:
        """Files that include ``header`` directly or transitively."""
        return {p for p, reach in self.include_closure().items() if header in reach and p != header}

    def to_dict(self) -> dict:
        return {
            "model_version": MODEL_VERSION,
            "root": self.root,
            "files": [
                {
                    "path": f.path,
                    "kind": f.kind,
                    "line_count": f.line_count,
                    "include_directives": [d.literal for d in f.include_directives],
                    "resolved_includes": list(f.resolved_includes),
                    "external_includes": list(f.external_includes),
                    "parse_failed": f.parse_failed,
                }
                for f in self.files
            ],
            "elements": [
                {
                    "id": e.id,
                    "key": e.key,
                    "name": e.name,
                    "kind": e.kind,
                    "header": e.header,
                    "span": list(e.span),
                    "extra_names": list(e.extra_names),
                    "condition": e.condition,
                    "word_set": sorted(e.word_set),
                    "referenced_names": sorted(e.referenced_names),
                }
                for e in self.elements
            ],
            "usage": {
                "users_of_element": {str(k): sorted(v) for k, v in sorted(self.usage.users_of_element.items())},
                "uses": {str(k): sorted(v) for k, v in sorted(self.usage.uses.items()) if v},
            },
            "diagnostics": list(self.diagnostics),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def count_lines(text: str) -> int:
    """Physical lines: newline count + 1, or 0 for an empty file."""
    return text.count("\n") + 1 if text else 0


def transitive_includes(graph: dict[str, Iterable[str]]) -> dict[str, frozenset[str]]:
    """Map each file to every file reachable through include arcs (itself excluded)."""
    out = {}
    for start in graph:
        seen: set[str] = set()
        queue = deque(graph[start])
        while queue:
            p = queue.popleft()
            if p in seen:
                continue
            seen.add(p)
            queue.extend(graph.get(p, ()))
        seen.discard(start)
        out[start] = frozenset(seen)
    return out


def _kind_of(path: str) -> str | None:
    if path.endswith(HEADER_EXT):
        return "header"
    if path.endswith(SOURCE_EXT):
        return "source"
    return None


def _read(path: Path) -> tuple[str | None, str | None]:
    data = path.read_bytes()
    if b"\x00" in data:
        return None, "binary content"
    try:
        return data.decode("utf-8"), None
    except UnicodeDecodeError:
        return data.decode("latin-1"), None


def parse_header(text: str):
    """Parse header text; returns the raw top-level elements in source order."""
    return parse_text(text).elements


def resolve_includes(file: SourceFile, search_dirs: list[str], known: set[str] | "ProjectModel") -> set[str]:
    """Resolve a file's include directives against project files.

    Quoted includes try the including file's directory first, then
    ``search_dirs`` in order; angled includes only ``search_dirs``. Targets
    not found among project files are appended to ``file.external_includes``.
    """
    if isinstance(known, ProjectModel):
        known = {f.path for f in known.files}
    here = str(PurePosixPath(file.path).parent)
    resolved: list[str] = []
    external: list[str] = []
    for d in file.include_directives:
        dirs = ([here] if not d.angled else []) + list(search_dirs)
        hit = None
        for base in dirs:
            cand = os.path.normpath(os.path.join(base, d.target)).replace(os.sep, "/")
            if cand.startswith("./"):
                cand = cand[2:]
            if cand in known:
                hit = cand
                break
        if hit is None:
            external.append(d.literal)
        elif hit not in resolved and hit != file.path:
            resolved.append(hit)
    file.resolved_includes = sorted(resolved)
    file.external_includes = external
    return set(resolved)


def _element_key(kind: str, name: str, seen: dict[str, int]) -> str:
    base = f"{kind}:{name}"
    seen[base] = seen.get(base, 0) + 1
    return base if seen[base] == 1 else f"{base}#{seen[base]}"


def scan_project(root: str | os.PathLike, config: IngestConfig | None = None) -> ProjectModel:
    config = config or IngestConfig()
    root_path = Path(root)
    if not root_path.is_dir():
        raise UsageError(f"{root}: project root does not exist or is not a directory")
    paths = []
    for dirpath, dirnames, filenames in os.walk(root_path):
        dirnames.sort()
        for fn in filenames:
            rel = Path(dirpath, fn).relative_to(root_path).as_posix()
            if _kind_of(rel) is None:
                continue
            if any(fnmatch.fnmatch(rel, g) for g in config.exclude_globs):
                continue
            paths.append(rel)
    paths.sort()

    files: list[SourceFile] = []
    raw_elements = []
    diagnostics: list[str] = []
    for rel in paths:
        text, problem = _read(root_path / rel)
        kind = _kind_of(rel)
        if text is None:
            diagnostics.append(f"{rel}: parse failure ({problem})")
            log.warning("%s: parse failure (%s)", rel, problem)
            files.append(SourceFile(rel, kind, 0, parse_failed=True))
            continue
        res = parse_text(text)
        diagnostics.extend(f"{rel}: {msg}" for msg in res.diagnostics)
        files.append(
            SourceFile(
                rel, kind, count_lines(text), include_directives=res.includes,
                identifiers=res.identifiers, guard=res.guard,
            )
        )
        if kind == "header":
            raw_elements.append((rel, res.elements))

    known = {f.path for f in files}
    search = [d.strip("/") or "." for d in config.include_dirs] + ["."]
    for f in files:
        resolve_includes(f, search, known)

    elements: list[CodeElement] = []
    for rel, raws in raw_elements:
        seen: dict[str, int] = {}
        for r in raws:
            elements.append(
                CodeElement(
                    id=len(elements), name=r.name, kind=r.kind, header=rel,
                    span=(r.first_line, r.last_line), extent=(r.start, r.end),
                    word_set=frozenset().union(
                        *(tokenize_identifier(n, config.stop_words) for n in (r.name,) + r.extra_names)
                    ),
                    referenced_names=r.referenced, extra_names=r.extra_names,
                    condition=r.condition, key=_element_key(r.kind, r.name, seen),
                )
            )
    model = ProjectModel(str(root_path), files, elements, UsageIndex({}, {}, {}, {}), diagnostics)
    model.usage = build_usage_index(model)
    model.diagnostics.extend(model.usage.ambiguities)
    return model


def build_usage_index(project: ProjectModel) -> UsageIndex:
    by_name: dict[str, list[int]] = defaultdict(list)
    for e in project.elements:
        for n in e.names:
            if e.id not in by_name[n]:
                by_name[n].append(e.id)
    ambiguities = []
    for n, ids in sorted(by_name.items()):
        if len(ids) > 1:
            ambiguities.append(f"name {n!r} declared by {len(ids)} elements: usage maps to all")

    uses: dict[int, frozenset[int]] = {}
    successors: dict[int, set[int]] = {e.id: set() for e in project.elements}
    for e in project.elements:
        targets = set()
        for n in e.referenced_names:
            targets.update(by_name.get(n, ()))
        targets.discard(e.id)
        uses[e.id] = frozenset(targets)
        for t in targets:
            successors[t].add(e.id)

    closure = project.include_closure()
    by_header = project._by_header
    users: dict[int, set[str]] = {e.id: set() for e in project.elements}
    file_uses: dict[str, frozenset[int]] = {}
    for f in project.files:
        named = set()
        for h in sorted(closure.get(f.path, ())):
            for e in by_header.get(h, ()):
                if not f.identifiers.isdisjoint(e.names):
                    named.add(e.id)
        file_uses[f.path] = frozenset(named)
        if f.kind == "source":
            for eid in named:
                users[eid].add(f.path)
    return UsageIndex(
        users_of_element={k: frozenset(v) for k, v in users.items()},
        successors={k: frozenset(v) for k, v in successors.items()},
        uses=uses,
        file_uses=file_uses,
        ambiguities=ambiguities,
    )
