"""Contract element pairs whose dependency weight is exactly 1."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .element_graph import ElementGraph


@dataclass
class CoarseGraph:
    """Supernodes in ascending id order; a supernode's id is its smallest element id."""

    supernodes: dict[int, frozenset[int]]
    A_dep: np.ndarray
    A_sem: np.ndarray
    A_couse: np.ndarray

    @property
    def ids(self) -> list[int]:
        return list(self.supernodes)

    @property
    def n(self) -> int:
        return len(self.supernodes)

    def to_dict(self) -> dict:
        return {
            "supernodes": {str(k): sorted(v) for k, v in self.supernodes.items()},
            "A_dep": self.A_dep.tolist(),
            "A_sem": self.A_sem.tolist(),
            "A_couse": self.A_couse.tolist(),
        }


def coarsen(graph: ElementGraph, rng: np.random.Generator | None = None) -> CoarseGraph:
    """Merge weight-1 pairs until none remain, updating weights by max.

    Pairs are taken in index order, or in an order drawn from ``rng`` when
    given; the final result does not depend on it.
    """
    n = graph.n
    mats = [graph.A_dep.copy(), graph.A_sem.copy(), graph.A_couse.copy()]
    unit = graph.unit_dep.copy()
    np.fill_diagonal(unit, False)
    members = {k: {k} for k in range(n)}

    while True:
        i_idx, j_idx = np.nonzero(np.triu(unit, 1))
        if len(i_idx) == 0:
            break
        pick = 0 if rng is None else int(rng.integers(len(i_idx)))
        i, j = int(i_idx[pick]), int(j_idx[pick])
        # the merged node keeps slot i; slot j is retired
        for M in mats:
            row = np.maximum(M[i], M[j])
            M[i, :] = row
            M[:, i] = row
            M[i, i] = 0.0
            M[j, :] = 0.0
            M[:, j] = 0.0
        urow = unit[i] | unit[j]
        unit[i, :] = urow
        unit[:, i] = urow
        unit[i, i] = False
        unit[j, :] = False
        unit[:, j] = False
        members[i] |= members.pop(j)

    slots = sorted(members, key=lambda k: min(graph.elements[m] for m in members[k]))
    sel = np.array(slots, dtype=int)
    supernodes = {
        min(graph.elements[m] for m in members[k]): frozenset(graph.elements[m] for m in members[k])
        for k in slots
    }
    return CoarseGraph(
        supernodes=supernodes,
        A_dep=mats[0][np.ix_(sel, sel)],
        A_sem=mats[1][np.ix_(sel, sel)],
        A_couse=mats[2][np.ix_(sel, sel)],
    )


def expand(coarse_assignment: Mapping[int, int], coarse: CoarseGraph) -> dict[int, int]:
    """Give every element the cluster of its supernode."""
    out = {}
    for sid, elems in coarse.supernodes.items():
        c = coarse_assignment[sid]
        for e in elems:
            out[e] = c
    return dict(sorted(out.items()))
