"""End-to-end decomposition of one header into acyclic parts."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace

from .clusterer import ClusterParams, cluster
from .coarsener import CoarseGraph, coarsen, expand
from .cycle_fixer import MovePlan, fix_cycles, include_arcs
from .element_graph import ElementGraph, assemble
from .errors import AlgorithmError
from .evaluator import MetricsReport, modularity
from .ingest import ProjectModel
from .plan import DecompositionPlan

log = logging.getLogger(__name__)


@dataclass
class SweepResult:
    plans: dict[int, DecompositionPlan]
    ranking: list[tuple[int, float]]  # (K, modularity), best first
    notices: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "plan_version": 1,
            "ranking": [{"K": k, "modularity": q} for k, q in self.ranking],
            "notices": list(self.notices),
            "plans": {str(k): p.to_dict() for k, p in self.plans.items()},
        }

    def to_text(self) -> str:
        lines = ["K   modularity  clusters"]
        for k, q in self.ranking:
            lines.append(f"{k:<3} {q:>10.4f}  {self.plans[k].K_effective}")
        lines.extend(f"note: {n}" for n in self.notices)
        return "\n".join(lines) + "\n"


def _repairs_doc(plan: MovePlan, graph: ElementGraph, project: ProjectModel) -> list[dict]:
    key = [project.element(eid).key for eid in graph.elements]
    return [
        {
            "cycle": list(s.cycle),
            "moves": [{"element": key[m.element], "from": m.source, "to": m.target} for m in s.moves],
            "gain": s.gain,
            "longest_after": s.longest_after,
            "fallback": s.fallback,
        }
        for s in plan.steps
    ]


def plan_from_graph(project: ProjectModel, header: str, graph: ElementGraph, coarse: CoarseGraph,
                    params: ClusterParams) -> DecompositionPlan:
    result = cluster(coarse, params)
    labels = expand(result.as_dict(coarse.ids), coarse)
    index = graph.index()
    local = {index[eid]: c for eid, c in labels.items()}
    clusters, repairs = fix_cycles(local, graph.uses, graph.A_dep)

    # renumber surviving clusters by their first element in source order
    order = sorted(clusters, key=lambda c: min(clusters[c]))
    relabel = {c: k for k, c in enumerate(order)}
    final = {relabel[c]: sorted(m) for c, m in clusters.items()}
    dag = include_arcs({c: frozenset(m) for c, m in final.items()}, graph.uses).arcs
    partition = {graph.elements[v]: c for c, m in final.items() for v in m}

    notices = []
    if repairs.steps:
        notices.append(f"{len(repairs.steps)} cycle repair step(s); repair records use pre-repair labels")
    if any(s.fallback for s in repairs.steps):
        notices.append("some cycles had no admissible move set and were merged")
    if len(final) < params.K:
        notices.append(f"only {len(final)} non-empty cluster(s) remain of {params.K} requested")

    return DecompositionPlan(
        header=header,
        K_requested=params.K,
        K_effective=len(final),
        clusters={c: [project.element(graph.elements[v]).key for v in m] for c, m in sorted(final.items())},
        include_dag=sorted([a, b] for a, b in dag),
        repairs=_repairs_doc(repairs, graph, project),
        dropped_clusters=list(repairs.dropped_clusters),
        params=params.to_dict(),
        metrics=MetricsReport(modularity=modularity(partition, graph)).to_dict(),
        notices=notices,
    )


def prepare(project: ProjectModel, header: str) -> tuple[ElementGraph, CoarseGraph]:
    graph = assemble(project, header)
    return graph, coarsen(graph)


def decompose(project: ProjectModel, header: str, params: ClusterParams | None = None) -> DecompositionPlan:
    params = params or ClusterParams()
    graph, coarse = prepare(project, header)
    if coarse.n < params.K:
        raise AlgorithmError(
            f"{header}: {coarse.n} supernode(s) after coarsening, fewer than K={params.K}"
        )
    return plan_from_graph(project, header, graph, coarse, params)


def decompose_range(project: ProjectModel, header: str, Ks, params: ClusterParams | None = None) -> SweepResult:
    """One plan per K; K above the supernode count is skipped with a notice."""
    params = params or ClusterParams()
    graph, coarse = prepare(project, header)
    plans: dict[int, DecompositionPlan] = {}
    notices = []
    for K in sorted(set(Ks)):
        if K > coarse.n:
            notices.append(f"K={K} skipped: only {coarse.n} supernode(s) after coarsening")
            continue
        plans[K] = plan_from_graph(project, header, graph, coarse, replace(params, K=K))
    if not plans:
        raise AlgorithmError(f"{header}: no K in the range is feasible ({coarse.n} supernodes)")
    ranking = sorted(((k, p.metrics["modularity"]) for k, p in plans.items()), key=lambda t: (-t[1], t[0]))
    return SweepResult(plans, ranking, notices)
