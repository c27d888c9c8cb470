"""Torus-fixed candidates, fundamental domains, chart data, fan certificate."""

import pytest

from dimerkit import (
    CASE_FOUR,
    CASE_SIX_OPPOSITE,
    CASE_SIX_SAME,
    InternalConsistencyError,
    Theta,
    assemble_fan,
    chart_characters,
    chart_cone,
    chart_rows,
    chart_transition,
    classify_chart,
    det_int,
    enumerate_fixed_candidates,
    example,
    fundamental_domain,
    perfect_matchings,
    quiver_of,
    split_by_reference,
)
from dimerkit.charts import _census_case, _clip_area2

conifold = example("conifold")
honeycomb = example("honeycomb")
q = quiver_of(conifold)
qh = quiver_of(honeycomb)
THETA = Theta((("f1", 3), ("f2", -3)))


def _candidates():
    return enumerate_fixed_candidates(q, THETA)


def test_conifold_candidates():
    a, b = _candidates()
    assert sorted(a.support) == ["e1"]
    assert sorted(b.support) == ["e3"]
    assert dict(a.cells) == {"f1": (0, 0), "f2": (0, 0)}
    assert dict(b.cells) == {"f1": (0, 0), "f2": (-1, 1)}


def test_opposite_chamber():
    cands = enumerate_fixed_candidates(q, Theta((("f1", -3), ("f2", 3))))
    assert [sorted(c.support) for c in cands] == [["e2"], ["e4"]]


def test_honeycomb_single_candidate():
    cands = enumerate_fixed_candidates(qh, Theta((("f1", 0),)))
    assert len(cands) == 1
    assert cands[0].support == frozenset()


def test_fundamental_domains():
    a, b = _candidates()
    dom_a = fundamental_domain(conifold, a)
    assert dom_a.interior_edges == (("e1", (0, 0)),)
    assert dom_a.boundary[0] == (("e2", 1), (1, 0))
    tails = []
    for (eid, sign), cell in dom_a.boundary:
        e = conifold.edge(eid)
        tails.append((e.black if sign > 0 else e.white, cell))
    assert tails == [
        ("b1", (1, 0)), ("w1", (0, 0)), ("b1", (0, 1)),
        ("w1", (-1, 0)), ("b1", (0, 0)), ("w1", (0, -1)),
    ]

    dom_b = fundamental_domain(conifold, b)
    assert dom_b.interior_edges == (("e3", (0, 1)),)
    assert dom_b.boundary[0] == (("e1", 1), (0, 0))

    cand_h = enumerate_fixed_candidates(qh, Theta((("f1", 0),)))[0]
    dom_h = fundamental_domain(honeycomb, cand_h)
    assert dom_h.interior_edges == ()
    assert len(dom_h.boundary) == 6


def test_classification():
    a, b = _candidates()
    cls_a = classify_chart(conifold, a)
    assert cls_a.case == CASE_SIX_OPPOSITE and cls_a.smooth
    assert cls_a.census == ((3, 6),)
    assert cls_a.corner == ("b1", (1, 0))
    assert cls_a.coordinate_edges == ("e2", "e3", "e4")

    cls_b = classify_chart(conifold, b)
    assert cls_b.case == CASE_SIX_OPPOSITE
    assert cls_b.corner == ("b1", (0, 0))
    assert cls_b.coordinate_edges == ("e1", "e2", "e4")

    cand_h = enumerate_fixed_candidates(qh, Theta((("f1", 0),)))[0]
    cls_h = classify_chart(honeycomb, cand_h)
    assert cls_h.case == CASE_SIX_OPPOSITE
    assert cls_h.coordinate_edges == ("e1", "e2", "e3")


def test_census_cases():
    alternating = [("x", "black"), ("y", "white")] * 3
    assert _census_case({3: 6}, alternating) == CASE_SIX_OPPOSITE
    assert _census_case({3: 6}, [("x", "black"), ("y", "black")] * 3) == CASE_SIX_SAME
    assert _census_case({4: 4}, [("x", "black")] * 4) == CASE_FOUR
    for bad in ({3: 3}, {5: 5}, {3: 3, 4: 2}, {6: 6}, {2: 2}, {3: 12}):
        with pytest.raises(InternalConsistencyError):
            _census_case(bad, alternating)
    with pytest.raises(InternalConsistencyError):
        # corner orbits must each use a single vertex lift
        _census_case({3: 6}, [("x", "black"), ("y", "white"),
                              ("z", "black"), ("y", "white"),
                              ("x", "black"), ("y", "white")])


def test_characters_rows_cones():
    a, b = _candidates()
    cls_a = classify_chart(conifold, a)
    cls_b = classify_chart(conifold, b)
    split = split_by_reference(q, perfect_matchings(conifold)[0])

    chars_a = chart_characters(q, a, cls_a.coordinate_edges)
    assert chars_a[0] == {"e1": 1, "e2": 1, "e3": 0, "e4": 0}
    rows_a = chart_rows(q, split, chars_a)
    assert rows_a == ((0, -1, 1), (1, 1, -1), (-1, 0, 1))
    cone_a = chart_cone(rows_a)
    assert cone_a.det == 1
    assert cone_a.rays == ((1, 0, 1), (1, 1, 1), (0, 1, 1))

    rows_b = chart_rows(q, split, chart_characters(q, b, cls_b.coordinate_edges))
    assert rows_b == ((-1, -1, 1), (1, 0, 0), (0, 1, 0))
    assert chart_cone(rows_b).rays == ((0, 0, 1), (1, 0, 1), (0, 1, 1))

    # the product of the coordinate characters is the level functional
    for rows in (rows_a, rows_b):
        assert tuple(sum(r[i] for r in rows) for i in range(3)) == (0, 0, 1)

    tr = chart_transition(rows_a, rows_b)
    assert det_int(tr) == 1
    assert all(isinstance(x, int) for row in tr for x in row)


def test_honeycomb_chart_is_standard():
    cand = enumerate_fixed_candidates(qh, Theta((("f1", 0),)))[0]
    cls = classify_chart(honeycomb, cand)
    split = split_by_reference(qh, perfect_matchings(honeycomb)[0])
    rows = chart_rows(qh, split, chart_characters(qh, cand, cls.coordinate_edges))
    assert rows == ((-1, -1, 1), (1, 0, 0), (0, 1, 0))
    assert chart_cone(rows).rays == ((0, 0, 1), (1, 0, 1), (0, 1, 1))


def test_clip_area():
    t1 = ((0, 0), (1, 0), (0, 1))
    t2 = ((1, 0), (1, 1), (0, 1))
    t3 = ((0, 0), (2, 0), (0, 2))
    assert _clip_area2(t1, t2) == 0
    assert _clip_area2(t1, t3) == 1
    assert _clip_area2(t3, t1) == 1
    assert _clip_area2(t2, t3) == 1


def test_assemble_fan_conifold():
    fan = assemble_fan(conifold, theta=THETA)
    assert fan.report.ok, [c for c in fan.report.checks if not c.ok]
    assert len(fan.charts) == 2
    assert {c.cone.rays for c in fan.charts} == {
        ((1, 0, 1), (1, 1, 1), (0, 1, 1)),
        ((0, 0, 1), (1, 0, 1), (0, 1, 1)),
    }
    assert [c.name for c in fan.report.checks] == [
        "charts-smooth", "cones-unimodular", "rays-level-one",
        "triangles-inside", "triangles-disjoint", "area-covered",
        "transitions-integral",
    ]


def test_assemble_fan_honeycomb():
    fan = assemble_fan(honeycomb)
    assert fan.report.ok
    assert len(fan.charts) == 1


def test_assemble_fan_sampled_theta():
    fan = assemble_fan(conifold, seed=0)
    assert fan.report.ok
    assert {frozenset(c.candidate.support) for c in fan.charts} == {
        frozenset({"e2"}), frozenset({"e4"}),
    }


def test_candidate_count_is_normalized_area():
    from dimerkit import area2

    for name, seed in (("conifold", 0), ("honeycomb", 0), ("fzero", 0)):
        fan = assemble_fan(example(name), seed=seed)
        assert len(fan.charts) == area2(fan.polygon), name


def test_certificate_across_independent_draws():
    for name in ("conifold", "honeycomb", "fzero"):
        model = example(name)
        for seed in (1, 2, 3):
            fan = assemble_fan(model, seed=seed)
            assert fan.report.ok, (name, seed)


def test_fzero_four_charts():
    model = example("fzero")
    fan = assemble_fan(model, seed=0)
    assert fan.report.ok, [c for c in fan.report.checks if not c.ok]
    assert [sorted(c.candidate.support) for c in fan.charts] == [
        ["e2", "e5", "e8"], ["e2", "e6", "e7"],
        ["e4", "e5", "e8"], ["e4", "e6", "e7"],
    ]
    assert all(c.classification.case == CASE_SIX_OPPOSITE for c in fan.charts)
    assert [c.cone.rays for c in fan.charts] == [
        ((0, 0, 1), (0, 1, 1), (-1, 0, 1)),
        ((0, 0, 1), (-1, 0, 1), (0, -1, 1)),
        ((0, 0, 1), (1, 0, 1), (0, 1, 1)),
        ((0, 0, 1), (0, -1, 1), (1, 0, 1)),
    ]
