"""Repair cyclic include relations between clusters.

Nodes are local element indices ``0..n-1``; ``uses[i]`` is the set of nodes
that node ``i`` uses, and ``A_dep`` the symmetric dependency weights. A
cluster C_i includes C_j when some member of C_i uses some member of C_j.

Longest cycles are repaired first. A two-cluster cycle is broken by the best
of four closure moves, scored by the moving gain. A longer cycle is reduced
by fixing each member against the union of the others and redistributing,
keeping the candidate with the highest summed gain.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import AlgorithmError

log = logging.getLogger(__name__)

MAX_CYCLE_SEARCH = 12


@dataclass
class ClusterIncludeGraph:
    clusters: dict[int, frozenset[int]]
    arcs: frozenset[tuple[int, int]]

    def successors(self) -> dict[int, set[int]]:
        out: dict[int, set[int]] = {c: set() for c in self.clusters}
        for a, b in self.arcs:
            out[a].add(b)
        return out


@dataclass
class Move:
    element: int
    source: int
    target: int


@dataclass
class RepairStep:
    cycle: tuple[int, ...]
    moves: list[Move]
    gain: float | None  # None for a fallback merge
    longest_after: int
    fallback: bool = False


@dataclass
class MovePlan:
    steps: list[RepairStep] = field(default_factory=list)
    dropped_clusters: list[int] = field(default_factory=list)

    @property
    def moves(self) -> list[Move]:
        return [m for s in self.steps for m in s.moves]


@dataclass
class TwoNodeFix:
    moved: frozenset[int]
    source: int  # 0 -> first cluster, 1 -> second cluster
    gain: float
    option: int


def include_arcs(clusters: Mapping[int, frozenset[int]] | Mapping[int, int], uses: Sequence[frozenset[int]]) -> ClusterIncludeGraph:
    clusters = _as_clusters(clusters)
    owner = {v: c for c, members in clusters.items() for v in members}
    arcs = set()
    for c, members in clusters.items():
        for v in members:
            for u in uses[v]:
                d = owner.get(u)
                if d is not None and d != c:
                    arcs.add((c, d))
    return ClusterIncludeGraph({c: frozenset(m) for c, m in sorted(clusters.items())}, frozenset(arcs))


def _as_clusters(x) -> dict[int, frozenset[int]]:
    if not x:
        return {}
    first = next(iter(x.values()))
    if isinstance(first, (set, frozenset, list, tuple)):
        return {c: frozenset(m) for c, m in x.items()}
    out: dict[int, set[int]] = {}
    for v, c in x.items():
        out.setdefault(c, set()).add(v)
    return {c: frozenset(m) for c, m in sorted(out.items())}


def find_longest_cycle(g: ClusterIncludeGraph, limit: int = MAX_CYCLE_SEARCH) -> tuple[int, ...] | None:
    """Longest simple cycle of cluster ids, normalised to start at its smallest id.

    Among equally long cycles the lexicographically smallest sequence wins.
    Exact dynamic programming over subsets; guarded by ``limit`` nodes.
    """
    nodes = sorted({c for arc in g.arcs for c in arc})
    if not nodes:
        return None
    if len([c for c, m in g.clusters.items() if m]) > limit:
        raise AlgorithmError(f"cycle search is limited to {limit} clusters; use a smaller K")
    m = len(nodes)
    pos = {c: k for k, c in enumerate(nodes)}
    succ = [0] * m
    for a, b in g.arcs:
        succ[pos[a]] |= 1 << pos[b]
    best: tuple[int, ...] | None = None
    for s in range(m):
        higher = ((1 << m) - 1) ^ ((1 << (s + 1)) - 1)
        # close[mask]: bits v of mask from which a path covering mask ends with an arc back to s
        close: dict[int, int] = {}
        sub = 0
        order = []
        while True:
            sub = (sub - higher) & higher
            if sub == 0:
                break
            order.append(sub)
        order.sort()
        top_len, top_masks = 0, []
        for mask in order:
            bits = 0
            rest_bits = mask
            while rest_bits:
                low = rest_bits & -rest_bits
                v = low.bit_length() - 1
                rest_bits ^= low
                rest = mask ^ low
                ok = (succ[v] >> s) & 1 if rest == 0 else succ[v] & close[rest]
                if ok:
                    bits |= low
            close[mask] = bits
            if bits & succ[s]:
                length = bin(mask).count("1") + 1
                if length > top_len:
                    top_len, top_masks = length, [mask]
                elif length == top_len:
                    top_masks.append(mask)
        for mask in top_masks:
            seq = [s]
            cur, R = s, mask
            while R:
                cand = succ[cur] & close[R]
                low = cand & -cand
                v = low.bit_length() - 1
                seq.append(v)
                R ^= low
                cur = v
            cyc = tuple(nodes[k] for k in seq)
            if best is None or (len(cyc), tuple(-x for x in cyc)) > (len(best), tuple(-x for x in best)):
                best = cyc
    return best


def moving_gain(moved, source, target, A_dep: np.ndarray) -> float:
    """Gain of moving ``moved`` out of ``source`` into ``target``."""
    moved = sorted(moved)
    if not moved:
        return 0.0
    stay = sorted(set(source) - set(moved))
    dst = sorted(set(target))
    W = A_dep + A_dep.T
    into = W[np.ix_(moved, dst)].sum() if dst else 0.0
    away = W[np.ix_(moved, stay)].sum() if stay else 0.0
    return float(into - away - len(moved))


def _users(uses: Sequence[frozenset[int]]) -> list[set[int]]:
    rev: list[set[int]] = [set() for _ in uses]
    for v, targets in enumerate(uses):
        for u in targets:
            rev[u].add(v)
    return rev


def dependency_closure(dependent, depended, uses) -> frozenset[int]:
    """Members of ``depended`` reachable from ``dependent`` by uses that stay inside ``depended``."""
    depended = set(depended)
    seen: set[int] = set()
    queue = deque(u for v in dependent for u in uses[v] if u in depended)
    while queue:
        u = queue.popleft()
        if u in seen:
            continue
        seen.add(u)
        queue.extend(w for w in uses[u] if w in depended and w not in seen)
    return frozenset(seen)


def user_closure(dependent, depended, uses, users=None) -> frozenset[int]:
    """Members of ``dependent`` that reach ``depended`` through uses inside ``dependent``."""
    users = users if users is not None else _users(uses)
    dependent = set(dependent)
    depended = set(depended)
    seen: set[int] = set()
    queue = deque(v for v in dependent if not depended.isdisjoint(uses[v]))
    while queue:
        v = queue.popleft()
        if v in seen:
            continue
        seen.add(v)
        queue.extend(w for w in users[v] if w in dependent and w not in seen)
    return frozenset(seen)


def two_node_options(Ci, Cj, uses, A_dep, users=None) -> list[TwoNodeFix]:
    """The four closure repairs, in enumeration order.

    Options 0/1 remove the arc Ci -> Cj (pull into Ci / push into Cj),
    options 2/3 remove Cj -> Ci.
    """
    users = users if users is not None else _users(uses)
    out = []
    for first, (A, B) in ((0, (Ci, Cj)), (1, (Cj, Ci))):
        pull = dependency_closure(A, B, uses)
        out.append(TwoNodeFix(pull, 1 - first, moving_gain(pull, B, A, A_dep), 2 * first))
        push = user_closure(A, B, uses, users)
        out.append(TwoNodeFix(push, first, moving_gain(push, A, B, A_dep), 2 * first + 1))
    return out


def _mutual(Ci, Cj, uses) -> bool:
    Ci, Cj = set(Ci), set(Cj)
    return any(not Cj.isdisjoint(uses[v]) for v in Ci) and any(not Ci.isdisjoint(uses[v]) for v in Cj)


def _best(options: list[TwoNodeFix]) -> TwoNodeFix:
    return min(options, key=lambda o: (-o.gain, len(o.moved), o.option))


def fix_two_node_cycle(Ci, Cj, uses, A_dep) -> tuple[frozenset[int], frozenset[int], TwoNodeFix | None]:
    Ci, Cj = frozenset(Ci), frozenset(Cj)
    if not _mutual(Ci, Cj, uses):
        log.warning("fix_two_node_cycle: clusters do not include each other; nothing to do")
        return Ci, Cj, None
    choice = _best(two_node_options(Ci, Cj, uses, A_dep))
    if choice.source == 0:
        return Ci - choice.moved, Cj | choice.moved, choice
    return Ci | choice.moved, Cj - choice.moved, choice


def _longest_len(clusters, uses) -> int:
    cyc = find_longest_cycle(include_arcs(clusters, uses))
    return len(cyc) if cyc else 0


def _signature(clusters) -> tuple:
    return tuple(sorted((c, tuple(sorted(m))) for c, m in clusters.items()))


def _candidate_two(clusters, a, b, fix: TwoNodeFix):
    new = dict(clusters)
    src, dst = (a, b) if fix.source == 0 else (b, a)
    new[src] = clusters[src] - fix.moved
    new[dst] = clusters[dst] | fix.moved
    moves = [Move(v, src, dst) for v in sorted(fix.moved)]
    return new, moves, fix.gain


def _candidate_multi(clusters, cycle, j, fix: TwoNodeFix, A_dep):
    """Apply a (C_ij, C_else) fix back onto the individual cycle members."""
    hub = cycle[j]
    others = [c for c in cycle if c != hub]
    owner = {v: c for c in others for v in clusters[c]}
    new = dict(clusters)
    moves: list[Move] = []
    groups: dict[tuple[int, int], set[int]] = {}
    if fix.source == 1:
        # members of the merged rest pulled into the hub
        for v in sorted(fix.moved):
            src = owner[v]
            new[src] = new[src] - {v}
            groups.setdefault((src, hub), set()).add(v)
        new[hub] = clusters[hub] | fix.moved
    else:
        new[hub] = clusters[hub] - fix.moved
        base = {c: sorted(new[c]) for c in others}
        W = A_dep + A_dep.T
        for v in sorted(fix.moved):
            scores = [(W[v, base[c]].sum() if base[c] else 0.0, -c) for c in others]
            dst = -max(scores)[1]
            groups.setdefault((hub, dst), set()).add(v)
        for (_, dst), vs in groups.items():
            new[dst] = new[dst] | vs
    gain = 0.0
    for (src, dst), vs in sorted(groups.items()):
        gain += moving_gain(vs, clusters[src], clusters[dst], A_dep)
        moves.extend(Move(v, src, dst) for v in sorted(vs))
    moves.sort(key=lambda m: (m.source, m.target, m.element))
    return new, moves, gain


def fix_cycles(assignment: Mapping[int, int] | Mapping[int, frozenset[int]], uses: Sequence[frozenset[int]],
               A_dep: np.ndarray, budget: int | None = None) -> tuple[dict[int, frozenset[int]], MovePlan]:
    """Repair every include cycle. Returns (non-empty clusters, move plan)."""
    clusters = _as_clusters(assignment)
    K = max(len(clusters), 2)
    budget = budget if budget is not None else K ** 3
    users = _users(uses)
    plan = MovePlan()
    seen = {_signature(clusters)}
    for _ in range(budget):
        cycle = find_longest_cycle(include_arcs(clusters, uses))
        if cycle is None:
            break
        L = len(cycle)
        primary, secondary = [], []
        if L == 2:
            a, b = cycle
            for fix in two_node_options(clusters[a], clusters[b], uses, A_dep, users):
                primary.append(_candidate_two(clusters, a, b, fix) + (len(fix.moved), fix.option))
        else:
            for j, hub in enumerate(cycle):
                rest = frozenset().union(*(clusters[c] for c in cycle if c != hub))
                options = two_node_options(clusters[hub], rest, uses, A_dep, users)
                chosen = _best(options)
                for fix in options:
                    cand = _candidate_multi(clusters, cycle, j, fix, A_dep) + (len(fix.moved), 4 * j + fix.option)
                    (primary if fix is chosen else secondary).append(cand)
        picked = None
        for pool in (primary, secondary):
            for new, moves, gain, nmoved, order in sorted(pool, key=lambda t: (-t[2], t[3], t[4])):
                if not moves:
                    continue
                sig = _signature(new)
                if sig in seen:
                    continue
                after = _longest_len(new, uses)
                if after <= L:
                    picked = (new, moves, gain, after, False)
                    break
            if picked:
                break
        if picked is None:
            # merge the whole cycle into its largest member; never lengthens any cycle
            target = min(cycle, key=lambda c: (-len(clusters[c]), c))
            new = dict(clusters)
            moves = []
            for c in cycle:
                if c == target:
                    continue
                moves.extend(Move(v, c, target) for v in sorted(clusters[c]))
                new[target] = new[target] | clusters[c]
                new[c] = frozenset()
            picked = (new, moves, None, _longest_len(new, uses), True)
            log.info("cycle %s: no admissible move set, merged into cluster %d", cycle, target)
        clusters, moves, gain, after, fallback = picked
        seen.add(_signature(clusters))
        plan.steps.append(RepairStep(tuple(cycle), moves, gain, after, fallback))
    else:
        if find_longest_cycle(include_arcs(clusters, uses)) is not None:
            raise AlgorithmError(f"cycle repair did not converge within {budget} iterations")
    plan.dropped_clusters = sorted(c for c, m in clusters.items() if not m)
    for c in plan.dropped_clusters:
        log.info("cluster %d emptied by cycle repair; dropped", c)
    return {c: m for c, m in clusters.items() if m}, plan
