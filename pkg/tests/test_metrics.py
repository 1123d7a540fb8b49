import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from godsplit.element_graph import from_matrices
from godsplit.errors import UsageError
from godsplit.evaluator import (
    acc,
    ari,
    contingency,
    f1,
    max_mno,
    mno,
    modularity,
    modularity_matrix,
    mojofm,
    nmi,
    report,
)
from oracles import as_labels, mno_bfs, modularity_direct, set_partitions, worst_mno_exhaustive

A6 = dict(enumerate([0, 0, 0, 1, 1, 1]))
B6 = dict(enumerate([0, 0, 1, 1, 2, 2]))


def random_pair(rng, n):
    ka, kb = int(rng.integers(1, n + 1)), int(rng.integers(1, n + 1))
    return ({i: int(rng.integers(ka)) for i in range(n)}, {i: int(rng.integers(kb)) for i in range(n)})


def test_contingency():
    assert contingency(A6, B6).tolist() == [[2, 1, 0], [0, 1, 2]]


def test_mismatched_elements():
    with pytest.raises(UsageError):
        mno({0: 0}, {1: 0})


def test_one_join_case():
    A = {"a": 0, "b": 0, "c": 1, "d": 1}
    B = {x: 0 for x in "abcd"}
    assert mno(A, B) == 1 == mno_bfs(A, B)
    assert max_mno(B) == 3
    worst = worst_mno_exhaustive(4)
    assert worst[frozenset({frozenset(range(4))})] == 3
    assert mojofm(A, B) == pytest.approx(100 * (1 - 1 / 3))


def test_identical_is_100():
    assert mojofm(A6, A6) == 100.0
    assert mojofm({0: 0}, {0: 5}) == 100.0


@pytest.mark.parametrize("seed", range(200))
def test_mno_matches_bfs(seed):
    rng = np.random.default_rng(seed)
    A, B = random_pair(rng, int(rng.integers(1, 8)))
    assert mno(A, B) == mno_bfs(A, B)


@pytest.mark.parametrize("n", range(1, 7))
def test_max_mno_matches_exhaustive(n):
    worst = worst_mno_exhaustive(n)
    for blocks, w in worst.items():
        assert max_mno(as_labels(blocks)) == w


def test_mojofm_bounds():
    rng = np.random.default_rng(0)
    for _ in range(100):
        A, B = random_pair(rng, 6)
        assert 0.0 <= mojofm(A, B) <= 100.0


def test_nmi_hand_value():
    assert nmi(A6, B6) == pytest.approx(4 * math.log(2) / (3 * math.log(6)), abs=1e-9)
    assert nmi(A6, A6) == 1.0
    assert nmi(A6, {k: 9 - v for k, v in A6.items()}) == pytest.approx(1.0)


def test_ari_hand_value():
    assert ari(A6, B6) == pytest.approx(8 / 33, abs=1e-9)
    assert ari(A6, A6) == 1.0


def test_ari_of_shuffled_labels_is_near_zero():
    rng = np.random.default_rng(1)
    truth = np.repeat(np.arange(5), 8)
    vals = [ari(dict(enumerate(truth)), dict(enumerate(rng.permutation(truth)))) for _ in range(1000)]
    assert abs(np.mean(vals)) < 0.05


def test_f1_hand_value():
    assert f1(A6, B6) == pytest.approx(4 / 9, abs=1e-9)
    assert f1(A6, A6) == 1.0
    assert f1({0: 0, 1: 1}, {0: 0, 1: 0}) == 0.0


def acc_exhaustive(A, B):
    la, lb = sorted(set(A.values())), sorted(set(B.values()))
    pad = lb + [None] * max(0, len(la) - len(lb))
    best = 0
    for perm in itertools.permutations(pad, len(la)):
        m = dict(zip(la, perm))
        best = max(best, sum(m[A[k]] == B[k] for k in A))
    return best / len(A)


def test_acc_hand_value():
    assert acc(A6, B6) == pytest.approx(2 / 3, abs=1e-9)
    assert acc(A6, {k: "xy"[v] for k, v in A6.items()}) == 1.0


@pytest.mark.parametrize("seed", range(20))
def test_acc_matches_exhaustive_mapping(seed):
    rng = np.random.default_rng(seed)
    A, B = random_pair(rng, 5)
    assert acc(A, B) == pytest.approx(acc_exhaustive(A, B), abs=1e-12)


def two_triangles():
    W = np.zeros((6, 6))
    for tri in ((0, 1, 2), (3, 4, 5)):
        for i, j in itertools.combinations(tri, 2):
            W[i, j] = W[j, i] = 1.0
    return W


def test_two_triangles():
    W = two_triangles()
    labels = [0, 0, 0, 1, 1, 1]
    assert modularity_matrix(labels, W) == pytest.approx(0.5, abs=1e-12)
    assert modularity_matrix(labels, W) == pytest.approx(modularity_direct(labels, W.tolist()), abs=1e-12)
    assert modularity_matrix([0] * 6, W) == pytest.approx(0.0, abs=1e-12)


def test_zero_weight_modularity():
    assert modularity_matrix([0, 1], np.zeros((2, 2))) == 0.0


@given(st.integers(0, 2**32 - 1))
def test_modularity_matches_direct(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 11))
    W = np.triu(rng.random((n, n)) * (rng.random((n, n)) < 0.5), 1)
    W = W + W.T
    labels = rng.integers(0, 3, size=n).tolist()
    assert modularity_matrix(labels, W) == pytest.approx(modularity_direct(labels, W.tolist()), abs=1e-12)


def test_modularity_on_graph_uses_combined_weight():
    W = two_triangles()
    g = from_matrices(np.zeros((6, 6)), W / 2, W / 2)
    part = dict(enumerate([0, 0, 0, 1, 1, 1]))
    assert modularity(part, g) == pytest.approx(0.5)


def test_report_fields():
    r = report(A6, B6).to_dict()
    assert r["nmi"] == pytest.approx(nmi(A6, B6)) and r["modularity"] is None


part_pairs = st.integers(1, 7).flatmap(lambda n: st.tuples(
    st.lists(st.integers(0, n - 1), min_size=n, max_size=n),
    st.lists(st.integers(0, n - 1), min_size=n, max_size=n)))


@given(part_pairs)
def test_metric_ranges_and_symmetry(pair):
    A, B = (dict(enumerate(x)) for x in pair)
    assert 0.0 <= nmi(A, B) <= 1.0 and nmi(A, B) == pytest.approx(nmi(B, A))
    assert ari(A, B) == pytest.approx(ari(B, A))
    assert 0.0 <= acc(A, B) <= 1.0 and 0.0 <= f1(A, B) <= 1.0
    assert mno(A, B) <= max_mno(B)
