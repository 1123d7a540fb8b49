import pytest

from godsplit.clusterer import ClusterParams
from godsplit.cycle_fixer import include_arcs
from godsplit.errors import AlgorithmError
from godsplit.evaluator import mojofm
from godsplit.ingest import IngestConfig, scan_project
from godsplit.pipeline import decompose, decompose_range
from godsplit.synthetic import generate_project
from oracles import is_dag


@pytest.fixture(scope="module")
def four_groups(tmp_path_factory):
    syn = generate_project(tmp_path_factory.mktemp("g4"), groups=4, per_group=40, seed=3)
    return syn, scan_project(syn.root, IngestConfig(include_dirs=["include"]))


def test_planted_four_groups_recovered(four_groups):
    syn, project = four_groups
    plan = decompose(project, syn.header, ClusterParams(K=4))
    assert mojofm(plan.assignment(), syn.truth) == 100.0
    assert plan.K_effective == 4


def test_plan_is_a_dag_partition(four_groups):
    syn, project = four_groups
    plan = decompose(project, syn.header, ClusterParams(K=6))
    keys = [e.key for e in project.elements_of(syn.header)]
    assert sorted(plan.assignment()) == sorted(keys)
    assert is_dag(plan.clusters, plan.include_dag)
    # the recorded DAG equals the arcs recomputed from element usage
    pos = {e.key: k for k, e in enumerate(project.elements_of(syn.header))}
    ids = [e.id for e in project.elements_of(syn.header)]
    local = {i: k for k, i in enumerate(ids)}
    uses = [frozenset(local[t] for t in project.usage.uses[i] if t in local) for i in ids]
    arcs = include_arcs({c: frozenset(pos[k] for k in m) for c, m in plan.clusters.items()}, uses).arcs
    assert sorted([a, b] for a, b in arcs) == plan.include_dag


def test_clusters_are_numbered_in_source_order(four_groups):
    syn, project = four_groups
    plan = decompose(project, syn.header, ClusterParams(K=4))
    order = {e.key: k for k, e in enumerate(project.elements_of(syn.header))}
    firsts = [min(order[k] for k in plan.clusters[c]) for c in sorted(plan.clusters)]
    assert firsts == sorted(firsts)


def test_same_seed_same_plan(four_groups):
    syn, project = four_groups
    a = decompose(project, syn.header, ClusterParams(K=5, seed=9)).to_json()
    b = decompose(project, syn.header, ClusterParams(K=5, seed=9)).to_json()
    assert a == b


def test_infeasible_K(make_tree):
    p = scan_project(make_tree({"h.h": "#define A 1\n#define B 2\n#define C 3\n"}))
    with pytest.raises(AlgorithmError, match="fewer than K=4"):
        decompose(p, "h.h", ClusterParams(K=4))
    sweep = decompose_range(p, "h.h", [2, 3, 4])
    assert sorted(sweep.plans) == [2, 3]
    assert any("K=4 skipped" in n for n in sweep.notices)
    with pytest.raises(AlgorithmError):
        decompose_range(p, "h.h", [5, 6])


def test_sweep_ranking(four_groups):
    syn, project = four_groups
    sweep = decompose_range(project, syn.header, range(3, 6))
    qs = [q for _, q in sweep.ranking]
    assert qs == sorted(qs, reverse=True)
    assert sweep.ranking[0][0] == 4
    assert "modularity" in sweep.to_text()
