"""Multi-view clustering of the coarsened graph over the semantic and co-usage views.

The pipeline follows a dual-label refinement scheme: a soft label built from
the shared features yields a global refinement matrix, a pseudo label from the
current clustering sets a per-view propagation order and fusion weight, and the
fused consensus graph is propagated over the features before k-means.

Two components are deterministic stand-ins for trained models: the soft label
is a truncated SVD of the features (instead of a pretrained autoencoder) and
the encoder is parameter-free p-hop propagation (instead of a trained GCN).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .coarsener import CoarseGraph
from .errors import AlgorithmError, UsageError


@dataclass
class ClusterParams:
    K: int = 4
    alpha: float = 0.5
    od_max: int = 2
    iterations: int = 10
    seed: int = 42
    embed_dim: int | None = None  # None -> min(32, n)
    restarts: int = 10
    hops: int = 2
    raw_powers: bool = False

    def __post_init__(self):
        if self.K < 2:
            raise UsageError("K must be at least 2")
        if not 1 <= self.od_max <= 4:
            raise UsageError("od_max must lie in [1, 4]")
        if self.alpha < 0:
            raise UsageError("alpha must be non-negative")
        if self.iterations < 1 or self.restarts < 1 or self.hops < 1:
            raise UsageError("iterations, restarts and hops must be positive")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SoftLabel:
    Z: np.ndarray
    Omega: np.ndarray


@dataclass
class ClusterAssignment:
    labels: np.ndarray  # per coarse node, in CoarseGraph order
    history: list[list[int]] = field(default_factory=list)
    rates: list[tuple[float, float]] = field(default_factory=list)

    def as_dict(self, ids) -> dict[int, int]:
        return {sid: int(c) for sid, c in zip(ids, self.labels)}


def shared_features(A_sem: np.ndarray, A_couse: np.ndarray) -> np.ndarray:
    return np.hstack([A_sem, A_couse])


def soft_label(X: np.ndarray, embed_dim: int) -> SoftLabel:
    n = X.shape[0]
    if n == 0:
        raise AlgorithmError("cannot embed an empty graph")
    h = max(1, min(embed_dim, n, X.shape[1]))
    U, s, _ = np.linalg.svd(X, full_matrices=False)
    U = U[:, :h]
    # sign convention: largest-magnitude entry of each vector is non-negative
    pivots = np.argmax(np.abs(U), axis=0)
    signs = np.where(U[pivots, np.arange(h)] < 0, -1.0, 1.0)
    Z = U * signs * s[:h]
    norms = np.linalg.norm(Z, axis=1)
    nz = norms > 1e-12
    Z[nz] /= norms[nz, None]
    Z[~nz] = 0.0
    return SoftLabel(Z=Z, Omega=Z @ Z.T)


def homophily_rate(A: np.ndarray, labels) -> float:
    labels = np.asarray(labels)
    W = A.copy()
    np.fill_diagonal(W, 0.0)
    total = W.sum()
    if total <= 0:
        return 0.0
    same = labels[:, None] == labels[None, :]
    return float(W[same].sum() / total)


def round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5)) if x >= 0 else -int(math.floor(-x + 0.5))


def homophily_order(A: np.ndarray, labels, od_max: int) -> tuple[int, float]:
    """Propagation order for a view and its homophily rate."""
    h = homophily_rate(A, labels)
    od = min(od_max, max(1, round_half_up(h * od_max)))
    return od, h


def normalized(A: np.ndarray, absolute: bool = False) -> np.ndarray:
    """D^-1/2 (A + I) D^-1/2; with ``absolute`` the degree uses |A + I|."""
    S = A + np.eye(A.shape[0])
    d = (np.abs(S) if absolute else S).sum(axis=1)
    inv = np.where(d > 0, 1.0 / np.sqrt(np.where(d > 0, d, 1.0)), 0.0)
    return S * inv[:, None] * inv[None, :]


def refine_view(A: np.ndarray, od: int, Omega: np.ndarray, alpha: float, raw_powers: bool = False) -> np.ndarray:
    if od < 1:
        raise AlgorithmError("order must be at least 1")
    base = A if raw_powers else normalized(A)
    acc = np.zeros_like(base)
    P = np.eye(base.shape[0])
    for _ in range(od):
        P = P @ base
        acc += P
    return alpha * acc / od + Omega


def fusion_weights(h_sem: float, h_couse: float) -> tuple[float, float]:
    total = h_sem + h_couse
    if total <= 0:
        return 0.5, 0.5
    return h_sem / total, h_couse / total


def fuse(refined_sem, refined_couse, h_sem: float, h_couse: float) -> np.ndarray:
    w_s, w_c = fusion_weights(h_sem, h_couse)
    return w_s * refined_sem + w_c * refined_couse


def encode(A: np.ndarray, X: np.ndarray, hops: int) -> np.ndarray:
    if hops < 1:
        raise AlgorithmError("hops must be at least 1")
    N = normalized(A, absolute=True)
    H = X
    for _ in range(hops):
        H = N @ H
    return H


def _kmeans_once(H: np.ndarray, K: int, rng: np.random.Generator, max_iter: int = 300, tol: float = 1e-8):
    n = H.shape[0]
    sq = np.einsum("ij,ij->i", H, H)
    first = int(rng.integers(n))
    centers = [H[first]]
    d2 = np.maximum(sq - 2 * H @ H[first] + sq[first], 0.0)
    for _ in range(1, K):
        total = d2.sum()
        if total <= 0:
            nxt = int(rng.integers(n))
        else:
            nxt = int(rng.choice(n, p=d2 / total))
        centers.append(H[nxt])
        d2 = np.minimum(d2, np.maximum(sq - 2 * H @ H[nxt] + sq[nxt], 0.0))
    C = np.array(centers)
    labels = np.zeros(n, dtype=int)
    for _ in range(max_iter):
        D = np.maximum(sq[:, None] - 2 * H @ C.T + np.einsum("ij,ij->i", C, C)[None, :], 0.0)
        labels = np.argmin(D, axis=1)
        dist = D[np.arange(n), labels]
        # repair empty clusters from the point farthest from its centroid
        for k in range(K):
            if np.any(labels == k):
                continue
            counts = np.bincount(labels, minlength=K)
            movable = counts[labels] > 1
            cand = np.where(movable, dist, -1.0)
            far = int(np.argmax(cand))
            labels[far] = k
            dist[far] = 0.0
        newC = np.array([H[labels == k].mean(axis=0) for k in range(K)])
        shift = float(np.max(np.linalg.norm(newC - C, axis=1)))
        C = newC
        if shift < tol:
            break
    inertia = float(((H - C[labels]) ** 2).sum())
    return labels, inertia


def canonical(labels) -> np.ndarray:
    """Relabel clusters in order of first appearance."""
    mapping: dict[int, int] = {}
    return np.array([mapping.setdefault(int(c), len(mapping)) for c in labels], dtype=int)


def kmeans(H: np.ndarray, K: int, seed: int = 0, restarts: int = 10) -> np.ndarray:
    n = H.shape[0]
    if K > n:
        raise AlgorithmError(f"cannot form {K} clusters from {n} points")
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(restarts):
        labels, inertia = _kmeans_once(H, K, rng)
        if best is None or inertia < best[1] - 1e-12:
            best = (labels, inertia)
    return canonical(best[0])


def cluster(coarse: CoarseGraph, params: ClusterParams) -> ClusterAssignment:
    n = coarse.n
    if n < params.K:
        raise AlgorithmError(
            f"only {n} supernodes after coarsening; choose K <= {n}"
        )
    X = shared_features(coarse.A_sem, coarse.A_couse)
    embed = params.embed_dim if params.embed_dim is not None else min(32, n)
    soft = soft_label(X, embed)
    pseudo = kmeans(soft.Z, params.K, params.seed, params.restarts)
    out = ClusterAssignment(labels=pseudo, history=[pseudo.tolist()])
    for it in range(params.iterations):
        od_s, h_s = homophily_order(coarse.A_sem, pseudo, params.od_max)
        od_c, h_c = homophily_order(coarse.A_couse, pseudo, params.od_max)
        out.rates.append((h_s, h_c))
        ref_s = refine_view(coarse.A_sem, od_s, soft.Omega, params.alpha, params.raw_powers)
        ref_c = refine_view(coarse.A_couse, od_c, soft.Omega, params.alpha, params.raw_powers)
        A = fuse(ref_s, ref_c, h_s, h_c)
        H = encode(A, X, params.hops)
        labels = kmeans(H, params.K, params.seed + it + 1, params.restarts)
        out.history.append(labels.tolist())
        stable = np.array_equal(labels, pseudo)
        pseudo = labels
        if stable:
            break
    out.labels = pseudo
    return out
