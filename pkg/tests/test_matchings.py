"""Perfect matchings and the three non-degeneracy tests."""

from fractions import Fraction

import pytest
from conftest import random_connected

from dimerkit import (
    BipartiteGraph,
    CapacityError,
    DegenerateModelError,
    NON_DEGENERACY_METHODS,
    enumerate_matchings,
    example,
    from_model,
    has_matching_containing,
    has_perfect_matching,
    is_non_degenerate,
    perfect_matchings,
    r_charge_average,
)

FZ_GRAPH = BipartiteGraph(
    ("b1", "b2"),
    ("w1", "w2"),
    (
        ("e1", "b1", "w1"), ("e2", "b1", "w1"),
        ("e3", "b2", "w2"), ("e4", "b2", "w2"),
        ("e5", "b1", "w2"), ("e6", "b1", "w2"),
        ("e7", "b2", "w1"), ("e8", "b2", "w1"),
    ),
)

DEG_GRAPH = BipartiteGraph(
    ("b1", "b2"),
    ("w1", "w2"),
    (
        ("e1", "b1", "w1"), ("e2", "b1", "w1"),
        ("e3", "b2", "w1"), ("e4", "b2", "w1"),
        ("e5", "b2", "w2"), ("e6", "b2", "w2"),
    ),
)


def test_conifold_matchings():
    assert perfect_matchings(example("conifold")) == (
        frozenset({"e1"}), frozenset({"e2"}),
        frozenset({"e3"}), frozenset({"e4"}),
    )


def test_honeycomb_matchings():
    assert perfect_matchings(example("honeycomb")) == (
        frozenset({"e1"}), frozenset({"e2"}), frozenset({"e3"}),
    )


def test_fzero_eight_matchings_canonical_order():
    pms = enumerate_matchings(FZ_GRAPH)
    assert len(pms) == 8
    assert pms[0] == frozenset({"e1", "e3"})
    assert set(pms) == {
        frozenset({"e1", "e3"}), frozenset({"e1", "e4"}),
        frozenset({"e2", "e3"}), frozenset({"e2", "e4"}),
        frozenset({"e5", "e7"}), frozenset({"e5", "e8"}),
        frozenset({"e6", "e7"}), frozenset({"e6", "e8"}),
    }
    assert pms == perfect_matchings(example("fzero"))


def test_enumeration_cap():
    with pytest.raises(CapacityError):
        enumerate_matchings(FZ_GRAPH, limit=7)


def test_r_charges():
    assert r_charge_average(from_model(example("conifold"))) == {
        e: Fraction(1, 2) for e in ("e1", "e2", "e3", "e4")
    }
    assert r_charge_average(from_model(example("honeycomb"))) == {
        e: Fraction(2, 3) for e in ("e1", "e2", "e3")
    }
    assert set(r_charge_average(FZ_GRAPH).values()) == {Fraction(1, 2)}


def test_degenerate_graph():
    pms = enumerate_matchings(DEG_GRAPH)
    assert len(pms) == 4
    assert all("e3" not in m and "e4" not in m for m in pms)
    assert has_perfect_matching(DEG_GRAPH)
    assert not has_matching_containing(DEG_GRAPH, "e3")
    assert has_matching_containing(DEG_GRAPH, "e1")
    for method in NON_DEGENERACY_METHODS:
        assert not is_non_degenerate(DEG_GRAPH, method)


def test_degenerate_catalog_model():
    g = from_model(example("degenerate"))
    for method in NON_DEGENERACY_METHODS:
        assert not is_non_degenerate(g, method)


def test_no_matching_at_all():
    g = BipartiteGraph(("b1",), ("w1", "w2"), (("e1", "b1", "w1"),))
    assert not has_perfect_matching(g)
    with pytest.raises(DegenerateModelError):
        r_charge_average(g)


def test_methods_agree_on_random_corpus():
    nondeg = 0
    for seed in range(200):
        g = random_connected(seed)
        answers = [is_non_degenerate(g, m) for m in NON_DEGENERACY_METHODS]
        assert answers[0] == answers[1] == answers[2], (seed, answers)
        nondeg += answers[0]
    # the corpus is not vacuous: both verdicts occur
    assert 0 < nondeg < 200


def test_unknown_method_rejected():
    with pytest.raises(Exception):
        is_non_degenerate(FZ_GRAPH, "majority-vote")


def _permanent_count(g: BipartiteGraph) -> int:
    """Matching count as the permanent of the multiplicity matrix."""
    if len(g.blacks) != len(g.whites):
        return 0
    n = len(g.blacks)
    wpos = {w: i for i, w in enumerate(g.whites)}
    mult = [[0] * n for _ in range(n)]
    for _, b, w in g.edges:
        mult[g.blacks.index(b)][wpos[w]] += 1

    from functools import lru_cache

    @lru_cache(maxsize=None)
    def go(row: int, used: int) -> int:
        if row == n:
            return 1
        return sum(
            mult[row][j] * go(row + 1, used | (1 << j))
            for j in range(n)
            if mult[row][j] and not used & (1 << j)
        )

    return go(0, 0)


def test_enumeration_agrees_with_permanent():
    for g in (FZ_GRAPH, DEG_GRAPH):
        assert len(enumerate_matchings(g)) == _permanent_count(g)
    for name in ("conifold", "honeycomb", "fzero", "degenerate"):
        g = from_model(example(name))
        assert len(enumerate_matchings(g)) == _permanent_count(g)
    for seed in range(80):
        g = random_connected(seed)
        try:
            count = len(enumerate_matchings(g))
        except CapacityError:
            continue
        assert count == _permanent_count(g), seed
