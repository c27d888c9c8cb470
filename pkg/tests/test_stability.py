"""Stability weights: closed subsets, (semi)stability, genericity, sampling."""

import random
from fractions import Fraction

import pytest

from dimerkit import (
    InvalidModelError,
    draw_xi,
    example,
    is_generic,
    is_semistable,
    is_stable,
    make_theta,
    quiver_of,
    sample_generic_theta,
    sardo_infirri_theta,
    successor_closed_subsets,
)

q = quiver_of(example("conifold"))


def test_matching_weight_frozen():
    th = sardo_infirri_theta(q, {"e1"}, {"e2": 1, "e3": 1, "e4": 1})
    assert th.of("f1") == -1
    assert th.of("f2") == 1


def test_theta_sums_to_zero():
    th = sardo_infirri_theta(q, {"e1"}, {"e2": 2, "e3": Fraction(1, 3), "e4": 5})
    assert th.of("f1") + th.of("f2") == 0


def test_closed_subsets():
    # complement of a matching strongly connects the quiver
    assert successor_closed_subsets(q, {"e2", "e3", "e4"}) == ()
    # two parallel arrows f1 -> f2: only {f2} is successor-closed
    assert successor_closed_subsets(q, {"e2", "e4"}) == (frozenset({"f2"}),)
    # no arrows: every nonempty proper vertex subset is closed
    assert len(successor_closed_subsets(q, ())) == 2


def test_stability_verdicts():
    th = sardo_infirri_theta(q, {"e1"}, {"e2": 1, "e3": 1, "e4": 1})
    assert is_stable(q, {"e2", "e3", "e4"}, th)
    assert is_stable(q, {"e2", "e4"}, th)

    flipped = make_theta(q, {"f1": 1, "f2": -1})
    assert not is_stable(q, {"e2", "e4"}, flipped)
    assert not is_semistable(q, {"e2", "e4"}, flipped)

    zero = make_theta(q, {"f1": 0, "f2": 0})
    assert is_semistable(q, {"e2", "e4"}, zero)
    assert not is_stable(q, {"e2", "e4"}, zero)


def test_genericity():
    assert is_generic(q, sardo_infirri_theta(q, {"e1"}, {"e2": 1, "e3": 1, "e4": 1}))
    assert not is_generic(q, make_theta(q, {"f1": 0, "f2": 0}))


def test_make_theta_rejects_nonzero_sum():
    with pytest.raises(InvalidModelError):
        make_theta(q, {"f1": 1, "f2": 1})


def test_seeded_draws_stable_and_mostly_generic():
    rng = random.Random(0)
    stable = generic = 0
    for _ in range(100):
        xi = draw_xi(q, {"e1"}, rng)
        th = sardo_infirri_theta(q, {"e1"}, xi)
        stable += is_stable(q, {"e2", "e3", "e4"}, th)
        generic += is_generic(q, th)
    assert stable == 100
    assert generic >= 95


def test_stability_invariant_under_rescaling():
    th = sardo_infirri_theta(q, {"e1"}, {"e2": 1, "e3": 1, "e4": 1})
    scaled = make_theta(q, {v: 7 * x for v, x in th.values})
    for support in ({"e2", "e3", "e4"}, {"e2", "e4"}, set()):
        assert is_stable(q, support, th) == is_stable(q, support, scaled)
        assert is_semistable(q, support, th) == is_semistable(q, support, scaled)


def test_full_support_always_stable():
    for theta in (
        sardo_infirri_theta(q, {"e1"}, {"e2": 1, "e3": 1, "e4": 1}),
        make_theta(q, {"f1": 0, "f2": 0}),
        make_theta(q, {"f1": -5, "f2": 5}),
    ):
        assert is_stable(q, {"e1", "e2", "e3", "e4"}, theta)


def test_base_rep_stable_on_every_fixture():
    from dimerkit import perfect_matchings

    for name in ("conifold", "honeycomb", "fzero", "degenerate"):
        model = example(name)
        quiver = quiver_of(model)
        for matching in perfect_matchings(model):
            xi = draw_xi(quiver, matching, random.Random(11))
            th = sardo_infirri_theta(quiver, matching, xi)
            psi0 = {a for a in quiver.arrow_ids if a not in matching}
            assert is_stable(quiver, psi0, th), (name, sorted(matching))


def test_sample_generic_theta():
    th, xi, tries = sample_generic_theta(q, {"e1"}, random.Random(1))
    assert is_generic(q, th)
    assert tries >= 1
    assert set(xi) == {"e2", "e3", "e4"}
    # deterministic for a fixed seed
    again, _, _ = sample_generic_theta(q, {"e1"}, random.Random(1))
    assert again.values == th.values
