"""Partition-agreement metrics and graph modularity."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Hashable, Mapping

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..errors import UsageError

Partition = Mapping[Hashable, Hashable]


@dataclass
class MetricsReport:
    mojofm: float | None = None
    nmi: float | None = None
    ari: float | None = None
    acc: float | None = None
    f1: float | None = None
    modularity: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def _aligned(A: Partition, B: Partition):
    if set(A) != set(B):
        raise UsageError("partitions cover different element sets")
    keys = sorted(A, key=repr)
    return [A[k] for k in keys], [B[k] for k in keys]


def contingency(A: Partition, B: Partition) -> np.ndarray:
    a, b = _aligned(A, B)
    ra = {c: k for k, c in enumerate(sorted(set(a), key=repr))}
    rb = {c: k for k, c in enumerate(sorted(set(b), key=repr))}
    M = np.zeros((len(ra), len(rb)), dtype=np.int64)
    for x, y in zip(a, b):
        M[ra[x], rb[y]] += 1
    return M


# --- MoJo ---------------------------------------------------------------

def mno(A: Partition, B: Partition) -> int:
    """Minimum number of Move and Join operations turning A into B.

    Each cluster of A is tagged with a cluster of B it overlaps most; tags are
    chosen by maximum bipartite matching so that as many A clusters as possible
    land in distinct groups. Moves = elements outside their tag, joins =
    clusters of A minus the number of groups.
    """
    V = contingency(A, B)
    if V.size == 0:
        return 0
    n = int(V.sum())
    best = V.max(axis=1)
    moves = n - int(best.sum())
    tag = (V == best[:, None]).astype(float)
    rows, cols = linear_sum_assignment(tag, maximize=True)
    groups = int(tag[rows, cols].sum())
    joins = V.shape[0] - groups
    return moves + joins


def max_mno(B: Partition) -> int:
    """max over all partitions A of mno(A, B), in closed form.

    With B's cluster sizes sorted descending (s_1 >= ... >= s_m) the worst A
    places at most one element of each B cluster per A cluster and makes the
    bipartite tag graph as poor as possible; its maximum matching can be
    squeezed to min_k (k + s_{k+1}).
    """
    sizes = sorted(_sizes(B), reverse=True)
    n = sum(sizes)
    if n == 0:
        return 0
    padded = sizes + [0]
    g = min(k + padded[k] for k in range(len(sizes) + 1))
    return n - g


def _sizes(P: Partition) -> list[int]:
    counts: dict = {}
    for c in P.values():
        counts[c] = counts.get(c, 0) + 1
    return list(counts.values())


def mojofm(A: Partition, B: Partition) -> float:
    """Similarity of A to the reference B as a percentage."""
    _aligned(A, B)
    worst = max_mno(B)
    if worst == 0:
        return 100.0
    return 100.0 * (1.0 - mno(A, B) / worst)


# --- information / pair-counting ---------------------------------------

def _entropy(counts: np.ndarray, n: int) -> float:
    p = counts[counts > 0] / n
    return float(-(p * np.log(p)).sum())


def nmi(A: Partition, B: Partition) -> float:
    """Mutual information normalised by the arithmetic mean of the entropies."""
    M = contingency(A, B)
    n = int(M.sum())
    if n == 0:
        return 1.0
    ha = _entropy(M.sum(axis=1), n)
    hb = _entropy(M.sum(axis=0), n)
    if ha + hb == 0:
        return 1.0  # both single-cluster, hence equal
    P = M / n
    pa = P.sum(axis=1, keepdims=True)
    pb = P.sum(axis=0, keepdims=True)
    nz = P > 0
    mi = float((P[nz] * np.log(P[nz] / (pa @ pb)[nz])).sum())
    return max(0.0, min(1.0, 2.0 * mi / (ha + hb)))


def _pairs(x) -> float:
    x = np.asarray(x, dtype=float)
    return float((x * (x - 1) / 2).sum())


def ari(A: Partition, B: Partition) -> float:
    M = contingency(A, B)
    n = M.sum()
    if n < 2:
        return 1.0
    index = _pairs(M)
    sa = _pairs(M.sum(axis=1))
    sb = _pairs(M.sum(axis=0))
    expected = sa * sb / _pairs([n])
    top = (sa + sb) / 2
    if top == expected:
        return 1.0 if index == top else 0.0
    return (index - expected) / (top - expected)


def acc(A: Partition, B: Partition) -> float:
    """Best one-to-one matching between cluster labels (Kuhn-Munkres)."""
    M = contingency(A, B)
    n = M.sum()
    if n == 0:
        return 1.0
    rows, cols = linear_sum_assignment(M, maximize=True)
    return float(M[rows, cols].sum() / n)


def f1(A: Partition, B: Partition) -> float:
    """Pair-counting F1: precision/recall over same-cluster element pairs, A predicted."""
    M = contingency(A, B)
    tp = _pairs(M)
    pred = _pairs(M.sum(axis=1))
    true = _pairs(M.sum(axis=0))
    if pred == 0 and true == 0:
        return 1.0
    if tp == 0:
        return 0.0
    precision, recall = tp / pred, tp / true
    return 2 * precision * recall / (precision + recall)


# --- modularity ---------------------------------------------------------

def modularity_matrix(labels, W: np.ndarray) -> float:
    """Newman modularity of ``labels`` over a symmetric weight matrix."""
    W = np.asarray(W, dtype=float)
    two_m = W.sum()
    if two_m <= 0:
        return 0.0
    k = W.sum(axis=1)
    labels = np.asarray(labels)
    same = labels[:, None] == labels[None, :]
    return float(((W - np.outer(k, k) / two_m) * same).sum() / two_m)


def modularity(partition: Partition, graph) -> float:
    """Modularity under the combined weight A_sem + A_couse + A_dep."""
    labels = [partition[e] for e in graph.elements]
    return modularity_matrix(labels, graph.combined())


def report(A: Partition, B: Partition, graph=None) -> MetricsReport:
    out = MetricsReport(mojofm=mojofm(A, B), nmi=nmi(A, B), ari=ari(A, B), acc=acc(A, B), f1=f1(A, B))
    if graph is not None:
        out.modularity = modularity(A, graph)
    return out
