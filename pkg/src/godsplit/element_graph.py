"""Three-view code element graph: dependency, semantic and co-usage weights."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import AlgorithmError
from .ingest import CodeElement, ProjectModel, UsageIndex


@dataclass
class ElementGraph:
    """Element ids plus three symmetric n x n weight matrices.

    ``unit_dep`` marks pairs whose dependency weight is exactly 1, decided
    with integer successor counts rather than float comparison.
    ``uses`` is the directed def-use relation restricted to graph nodes,
    as local indices.
    """

    elements: list[int]
    A_dep: np.ndarray
    A_sem: np.ndarray
    A_couse: np.ndarray
    unit_dep: np.ndarray
    uses: list[frozenset[int]] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.elements)

    def index(self) -> dict[int, int]:
        return {eid: k for k, eid in enumerate(self.elements)}

    def combined(self) -> np.ndarray:
        return self.A_sem + self.A_couse + self.A_dep

    def to_dict(self, sparse: bool = True) -> dict:
        out: dict = {"elements": list(self.elements)}
        for name in ("A_dep", "A_sem", "A_couse"):
            m = getattr(self, name)
            if sparse:
                i, j = np.nonzero(np.triu(m, 1))
                out[name] = [[int(a), int(b), float(m[a, b])] for a, b in zip(i, j)]
            else:
                out[name] = m.tolist()
        out["uses"] = [sorted(u) for u in self.uses]
        return out

    def to_json(self, sparse: bool = True) -> str:
        return json.dumps(self.to_dict(sparse), indent=2)


def local_uses(ids: Sequence[int], usage: UsageIndex) -> list[frozenset[int]]:
    idx = {eid: k for k, eid in enumerate(ids)}
    return [frozenset(idx[t] for t in usage.uses.get(eid, ()) if t in idx and t != eid) for eid in ids]


def dependency_weights(uses: Sequence[frozenset[int]]) -> dict[tuple[int, int], Fraction]:
    """Exact symmetric weights max(d_ij, d_ji) with d_ij = 1/|successors of j|."""
    n = len(uses)
    succ_count = [0] * n
    for i in range(n):
        for j in uses[i]:
            succ_count[j] += 1
    w: dict[tuple[int, int], Fraction] = {}
    for i in range(n):
        for j in uses[i]:
            d = Fraction(1, succ_count[j])
            key = (min(i, j), max(i, j))
            if d > w.get(key, 0):
                w[key] = d
    return w


def build_dependency_matrix(uses: Sequence[frozenset[int]]) -> tuple[np.ndarray, np.ndarray]:
    """Return (A_dep, unit_mask) over local indices."""
    n = len(uses)
    A = np.zeros((n, n))
    unit = np.zeros((n, n), dtype=bool)
    for (i, j), d in dependency_weights(uses).items():
        A[i, j] = A[j, i] = float(d)
        if d == 1:
            unit[i, j] = unit[j, i] = True
    return A, unit


def jaccard_matrix(sets: Sequence[frozenset]) -> np.ndarray:
    """Pairwise |a & b| / |a | b|; 0 where both sets are empty; zero diagonal."""
    n = len(sets)
    if n == 0:
        return np.zeros((0, 0))
    vocab = {w: k for k, w in enumerate(sorted(set().union(*sets), key=str))}
    M = np.zeros((n, len(vocab)))
    for i, s in enumerate(sets):
        for w in s:
            M[i, vocab[w]] = 1.0
    inter = M @ M.T
    size = M.sum(axis=1)
    union = size[:, None] + size[None, :] - inter
    with np.errstate(invalid="ignore", divide="ignore"):
        J = np.where(union > 0, inter / np.where(union > 0, union, 1), 0.0)
    np.fill_diagonal(J, 0.0)
    return J


def build_semantic_matrix(elements: Sequence[CodeElement]) -> np.ndarray:
    return jaccard_matrix([e.word_set for e in elements])


def build_cousage_matrix(elements: Sequence[CodeElement], usage: UsageIndex) -> np.ndarray:
    return jaccard_matrix([usage.users_of_element.get(e.id, frozenset()) for e in elements])


def graph_for_elements(elements: Sequence[CodeElement], usage: UsageIndex) -> ElementGraph:
    ids = [e.id for e in elements]
    uses = local_uses(ids, usage)
    A_dep, unit = build_dependency_matrix(uses)
    return ElementGraph(
        elements=ids,
        A_dep=A_dep,
        A_sem=build_semantic_matrix(elements),
        A_couse=build_cousage_matrix(elements, usage),
        unit_dep=unit,
        uses=uses,
    )


def assemble(project: ProjectModel, header: str) -> ElementGraph:
    elements = project.elements_of(header)
    if len(elements) < 2:
        raise AlgorithmError(f"{header}: nothing to decompose ({len(elements)} element(s))")
    return graph_for_elements(elements, project.usage)


def from_matrices(A_dep, A_sem, A_couse, uses: Mapping[int, frozenset[int]] | None = None) -> ElementGraph:
    """Build a graph directly from matrices. The dependency mask is taken as A_dep == 1."""
    A_dep = np.asarray(A_dep, dtype=float)
    n = A_dep.shape[0]
    return ElementGraph(
        elements=list(range(n)),
        A_dep=A_dep,
        A_sem=np.asarray(A_sem, dtype=float),
        A_couse=np.asarray(A_couse, dtype=float),
        unit_dep=A_dep == 1.0,
        uses=[frozenset((uses or {}).get(i, ())) for i in range(n)],
    )
