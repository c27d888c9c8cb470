"""Dual quiver: arrow cycles, complement paths, relations, 0/1 supports."""

import pytest

from dimerkit import (
    InvalidModelError,
    allowed_subquiver,
    example,
    make_path,
    p_minus,
    p_plus,
    path_class,
    path_weight,
    quiver_of,
    relations,
    rep_satisfies_relations,
)

q = quiver_of(example("conifold"))
hq = quiver_of(example("honeycomb"))

PLUS = {
    "e1": ("e2", "e3", "e4"),
    "e2": ("e3", "e4", "e1"),
    "e3": ("e4", "e1", "e2"),
    "e4": ("e1", "e2", "e3"),
}
MINUS = {
    "e1": ("e4", "e3", "e2"),
    "e2": ("e1", "e4", "e3"),
    "e3": ("e2", "e1", "e4"),
    "e4": ("e3", "e2", "e1"),
}


def test_conifold_quiver_shape():
    assert q.vertices == ("f1", "f2")
    assert [(a.id, a.source, a.target) for a in q.arrows] == [
        ("e1", "f2", "f1"),
        ("e2", "f1", "f2"),
        ("e3", "f2", "f1"),
        ("e4", "f1", "f2"),
    ]
    assert dict(q.shifts) == {
        "e1": (0, 0), "e2": (-1, 0), "e3": (1, -1), "e4": (0, 1)
    }
    assert q.arrows_from("f1") == ("e2", "e4")
    assert q.arrows_into("f1") == ("e1", "e3")


def test_complement_paths_frozen():
    for aid in ("e1", "e2", "e3", "e4"):
        pp, pm = p_plus(q, aid), p_minus(q, aid)
        assert pp.arrows == PLUS[aid]
        assert pm.arrows == MINUS[aid]
        # both run from the head of the arrow back to its tail
        assert pp.source == q.target(aid) and pp.target == q.source(aid)
        assert pm.source == q.target(aid) and pm.target == q.source(aid)


def test_relation_cycles_bound():
    # closing p(a) with a itself gives a face cycle, which is trivial
    # in homology: its total shift vanishes
    for quiver in (q, hq):
        for rel in relations(quiver):
            sa = quiver.shift(rel.arrow)
            for side in (rel.plus, rel.minus):
                cls = path_class(quiver, side)
                assert (cls[0] + sa[0], cls[1] + sa[1]) == (0, 0)


def test_relations_one_per_arrow():
    rels = relations(q)
    assert [r.arrow for r in rels] == ["e1", "e2", "e3", "e4"]
    assert all(len(r.plus.arrows) == 3 and len(r.minus.arrows) == 3 for r in rels)


def test_honeycomb_quiver():
    assert hq.vertices == ("f1",)
    assert dict(hq.shifts) == {"e1": (-1, 1), "e2": (0, -1), "e3": (1, 0)}
    assert p_plus(hq, "e1").arrows == ("e2", "e3")
    assert p_minus(hq, "e1").arrows == ("e3", "e2")


def test_make_path_and_weight():
    p = make_path(q, ("e2", "e3", "e4"))
    assert p.source == "f1" and p.target == "f2"
    assert path_weight(p, {"e1": 10, "e2": 1, "e3": 2, "e4": 4}) == 7
    with pytest.raises(InvalidModelError):
        make_path(q, ("e2", "e2"))  # heads and tails do not match up


def test_rep_satisfies_relations():
    assert rep_satisfies_relations(q, frozenset())
    assert rep_satisfies_relations(q, frozenset({"e1"}))
    assert rep_satisfies_relations(q, frozenset({"e1", "e2", "e3", "e4"}))
    # on the four-face model, dropping one arrow breaks a relation whose
    # two sides use different arrow sets
    fq = quiver_of(example("fzero"))
    full = set(fq.arrow_ids)
    assert rep_satisfies_relations(fq, frozenset(full))
    assert not rep_satisfies_relations(fq, frozenset(full - {"e1"}))


def test_matching_weights_on_relation_paths():
    # each vertex cycle crosses a perfect matching exactly once, so both
    # sides of an arrow's relation carry weight 0 or 1 together
    from dimerkit import perfect_matchings

    for name in ("conifold", "honeycomb", "fzero", "degenerate"):
        model = example(name)
        quiver = quiver_of(model)
        for matching in perfect_matchings(model):
            ind = {a: int(a in matching) for a in quiver.arrow_ids}
            for rel in relations(quiver):
                expected = 0 if rel.arrow in matching else 1
                assert path_weight(rel.plus, ind) == expected
                assert path_weight(rel.minus, ind) == expected


def test_allowed_subquiver():
    sub = allowed_subquiver(q, {"e1"})
    assert [a.id for a in sub.arrows] == ["e2", "e3", "e4"]
    assert sub.white_next is None
    with pytest.raises(InvalidModelError):
        p_plus(sub, "e2")  # subquivers carry no cycle structure
