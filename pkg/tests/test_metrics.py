import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import oracle
from conftest import oracle_classes, random_case, to_graph, to_partition
from stratassort import (ClassPartition, build_graph, class_stratification_score, dac,
                         expected_class_score, modularity, sac, sta)
from stratassort.errors import DataError, DegenerateError
from stratassort.toygraphs import NAMES, PUBLISHED, partition, toy_graph


# ---------------------------------------------------------------- golden values

@pytest.mark.parametrize("name", NAMES)
def test_toy_graph_matches_published_values(name):
    g, p = toy_graph(name), partition(name)
    want_sta, want_dac, want_sac = PUBLISHED[name]
    assert sta(g, p).sta == pytest.approx(want_sta, abs=0.01)
    assert dac(g, p).value == pytest.approx(want_dac, abs=0.01)
    assert sac(g).value == pytest.approx(want_sac, abs=0.01)


def test_two_class_path_by_hand():
    # scores 0,0 | 10,10 on a path a-b-c-d: one cross edge of weight 0
    g = build_graph([("a", "b"), ("b", "c"), ("c", "d")], {"a": 0, "b": 0, "c": 10, "d": 10})
    p = ClassPartition(((0, 0), (10, 10)))
    r = sta(g, p)
    assert r.per_class_score == (0.5, 0.5)
    # weighted degrees 1,1,1,1; w' = 1/16 on every edge
    e_class = (1 / 16) / (1 / 16 + 15 / 16)
    assert r.per_class_expected == pytest.approx((e_class, e_class))
    assert r.sta == pytest.approx((1 - 2 * e_class) / (2 - 2 * e_class))


def test_class_score_accessors_are_zero_based():
    g, p = toy_graph("G3"), partition("G3")
    r = sta(g, p)
    for i in range(4):
        assert class_stratification_score(g, p, i) == r.per_class_score[i]
        assert expected_class_score(g, p, i) == r.per_class_expected[i]
    with pytest.raises(DataError):
        class_stratification_score(g, p, 4)


def test_class_without_edges_scores_zero():
    g = build_graph([("a", "b")], {"a": 0, "b": 1, "c": 9})
    r = sta(g, ClassPartition(((0, 1), (9, 9))))
    assert r.per_class_score[1] == 0.0 and r.per_class_expected[1] == 0.0


# ---------------------------------------------------------------- orderings

def _vals(name):
    g, p = toy_graph(name), partition(name)
    return sta(g, p).sta, dac(g, p).value, sac(g).value


def test_orderings_between_toy_graphs():
    s1, _, c1 = _vals("G1")
    s2, _, c2 = _vals("G2")
    assert s1 > s2 and c1 < c2
    s3, d3, _ = _vals("G3")
    s4, d4, _ = _vals("G4")
    assert s3 > s4 and abs(d3 - d4) <= 1e-9
    s5, d5, _ = _vals("G5")
    s6, d6, _ = _vals("G6")
    assert s5 < s6 and abs(d5 - d6) <= 1e-9


# ---------------------------------------------------------------- oracle

def _check_against_oracle(case):
    n, edges, scores, bounds = case
    g, p = to_graph(n, edges, scores), to_partition(bounds)
    cls = oracle_classes(scores, bounds)
    k = len(bounds)
    assert p.assign(scores).tolist() == cls
    assert sta(g, p).sta == pytest.approx(oracle.sta(n, edges, scores, cls, k), abs=1e-9)
    assert modularity(g, p).value == pytest.approx(oracle.modularity(n, edges, cls), abs=1e-9)
    assert dac(g, p).value == pytest.approx(oracle.dac(n, edges, cls), abs=1e-9)
    try:
        want = oracle.sac(n, edges, scores)
    except ZeroDivisionError:
        with pytest.raises(DegenerateError):
            sac(g)
    else:
        assert sac(g).value == pytest.approx(want, abs=1e-9)


def test_oracle_equivalence_on_random_graphs():
    rng = np.random.default_rng(2024)
    for _ in range(250):
        _check_against_oracle(random_case(rng))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_oracle_equivalence_hypothesis(seed):
    _check_against_oracle(random_case(np.random.default_rng(seed)))


# ---------------------------------------------------------------- properties

@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_sta_bounded(seed):
    n, edges, scores, bounds = random_case(np.random.default_rng(seed), n_max=20)
    value = sta(to_graph(n, edges, scores), to_partition(bounds)).sta
    assert -1.0 <= value <= 1.0


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_sta_is_one_without_cross_edges(seed):
    rng = np.random.default_rng(seed)
    n, edges, scores, bounds = random_case(rng, n_max=16)
    cls = oracle_classes(scores, bounds)
    intra = [(u, v) for u, v in edges if cls[u] == cls[v]]
    assume(intra)
    g, p = to_graph(n, intra, scores), to_partition(bounds)
    touched = {cls[u] for e in intra for u in e}
    value = sta(g, p).sta
    if len(touched) == len(bounds):
        assert value == 1.0
    else:
        assert value < 1.0


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_any_cross_edge_keeps_sta_below_one(seed):
    rng = np.random.default_rng(seed)
    n, edges, scores, bounds = random_case(rng)
    cls = oracle_classes(scores, bounds)
    assume(any(cls[u] != cls[v] for u, v in edges))
    assert sta(to_graph(n, edges, scores), to_partition(bounds)).sta < 1.0


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.01, 100), st.floats(-1000, 1000))
def test_affine_score_invariance(seed, a, b):
    n, edges, scores, bounds = random_case(np.random.default_rng(seed))
    g, p = to_graph(n, edges, scores), to_partition(bounds)
    cls = p.assign(scores).tolist()
    moved = [a * s + b for s in scores]
    g2 = to_graph(n, edges, moved)
    # the same nodes in the same classes, with the tier bounds mapped along
    p2 = to_partition([a * x + b for x in bounds])
    assume(p2.assign(moved).tolist() == cls)
    assert sta(g2, p2).sta == pytest.approx(sta(g, p).sta, abs=1e-9)
    assert dac(g2, p2).value == pytest.approx(dac(g, p).value, abs=1e-9)
    try:
        assert sac(g2).value == pytest.approx(sac(g).value, abs=1e-9)
    except DegenerateError:
        pass


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.randoms(use_true_random=False))
def test_node_permutation_invariance_is_exact(seed, rnd):
    n, edges, scores, bounds = random_case(np.random.default_rng(seed), n_max=20)
    g, p = to_graph(n, edges, scores), to_partition(bounds)
    perm = list(range(n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert sta(h, p) == sta(g, p)
    assert dac(h, p) == dac(g, p)
    assert modularity(h, p) == modularity(g, p)
    try:
        assert sac(h) == sac(g)
    except DegenerateError:
        pass


def test_permutation_invariance_on_toy_graphs():
    rng = np.random.default_rng(7)
    for name in NAMES:
        g, p = toy_graph(name), partition(name)
        for _ in range(20):
            h = g.relabel(rng.permutation(g.n).tolist())
            assert sta(h, p) == sta(g, p)


# ---------------------------------------------------------------- degenerate inputs

def test_edgeless_graph_is_degenerate():
    g = build_graph([], {"a": 1, "b": 2})
    p = ClassPartition.from_string("0,2")
    for fn in (sta, dac, modularity):
        with pytest.raises(DegenerateError):
            fn(g, p)
    with pytest.raises(DegenerateError):
        sac(g)


def test_all_zero_similarity_weights_are_degenerate():
    g = build_graph([("a", "b"), ("c", "b")], {"a": 0, "b": 10, "c": 0})
    with pytest.raises(DegenerateError):
        sta(g, ClassPartition.from_string("0,5"))


def test_single_class_all_degree_gives_dac_one():
    g = build_graph([("a", "b"), ("b", "c")], {"a": 1, "b": 2, "c": 3, "d": 9})
    assert dac(g, ClassPartition(((1, 3), (9, 9)))).value == 1.0


def test_equal_scores_give_unit_weights():
    g = build_graph([("a", "b"), ("b", "c")], {"a": 5, "b": 5, "c": 5})
    assert g.edge_weights.tolist() == [1.0, 1.0]
    assert sta(g, ClassPartition(((5, 5),))).sta == 1.0
