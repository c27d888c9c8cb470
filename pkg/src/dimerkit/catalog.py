"""Built-in example models.

Four small tilings of the torus exercise every corner of the package: two
one-black/one-white models whose height polygons are the unit square and
the unit triangle, a four-vertex model whose polygon is the diamond with an
interior lattice point, and a valid tiling that fails non-degeneracy
because two of its edges lie in no perfect matching.
"""

from __future__ import annotations

from fractions import Fraction as _F

from .exceptions import InvalidModelError
from .model import DimerEdge, DimerModel, DimerVertex


def _conifold() -> DimerModel:
    # square polygon; two faces exchanged by the four edges
    return DimerModel(
        vertices=(
            DimerVertex("b1", "black", (_F(0), _F(0))),
            DimerVertex("w1", "white", (_F(1, 2), _F(1, 2))),
        ),
        edges=(
            DimerEdge("e1", "b1", "w1", (0, 0)),
            DimerEdge("e2", "b1", "w1", (-1, 0)),
            DimerEdge("e3", "b1", "w1", (-1, -1)),
            DimerEdge("e4", "b1", "w1", (0, -1)),
        ),
        rotation=(
            ("b1", ("e1", "e2", "e3", "e4")),
            ("w1", ("e3", "e4", "e1", "e2")),
        ),
    )


def _honeycomb() -> DimerModel:
    # triangle polygon; a single hexagonal face, the affine 3-space model
    return DimerModel(
        vertices=(
            DimerVertex("b1", "black", (_F(1, 3), _F(1, 3))),
            DimerVertex("w1", "white", (_F(2, 3), _F(2, 3))),
        ),
        edges=(
            DimerEdge("e1", "b1", "w1", (0, 0)),
            DimerEdge("e2", "b1", "w1", (-1, 0)),
            DimerEdge("e3", "b1", "w1", (0, -1)),
        ),
        rotation=(
            ("b1", ("e1", "e2", "e3")),
            ("w1", ("e1", "e2", "e3")),
        ),
    )


def _fzero() -> DimerModel:
    # diamond polygon with one interior point; four faces, eight matchings
    return DimerModel(
        vertices=(
            DimerVertex("b1", "black", (_F(0), _F(0))),
            DimerVertex("b2", "black", (_F(1, 2), _F(1, 2))),
            DimerVertex("w1", "white", (_F(1, 2), _F(0))),
            DimerVertex("w2", "white", (_F(0), _F(1, 2))),
        ),
        edges=(
            DimerEdge("e1", "b1", "w1", (0, 0)),
            DimerEdge("e2", "b1", "w1", (-1, 0)),
            DimerEdge("e3", "b2", "w2", (0, 0)),
            DimerEdge("e4", "b2", "w2", (1, 0)),
            DimerEdge("e5", "b1", "w2", (0, 0)),
            DimerEdge("e6", "b1", "w2", (0, -1)),
            DimerEdge("e7", "b2", "w1", (0, 0)),
            DimerEdge("e8", "b2", "w1", (0, 1)),
        ),
        rotation=(
            ("b1", ("e1", "e5", "e2", "e6")),
            ("b2", ("e4", "e8", "e3", "e7")),
            ("w1", ("e2", "e7", "e1", "e8")),
            ("w2", ("e3", "e6", "e4", "e5")),
        ),
    )


def _degenerate() -> DimerModel:
    # passes every structural check, yet e3 and e4 lie in no perfect
    # matching: the canonical example of a degenerate tiling
    return DimerModel(
        vertices=(
            DimerVertex("b1", "black", (_F(1, 4), _F(1, 4))),
            DimerVertex("b2", "black", (_F(3, 4), _F(3, 4))),
            DimerVertex("w1", "white", (_F(1, 2), _F(1, 2))),
            DimerVertex("w2", "white", (_F(0), _F(0))),
        ),
        edges=(
            DimerEdge("e1", "b1", "w1", (0, 0)),
            DimerEdge("e2", "b1", "w1", (1, 0)),
            DimerEdge("e3", "b2", "w1", (0, 0)),
            DimerEdge("e4", "b2", "w1", (0, 1)),
            DimerEdge("e5", "b2", "w2", (0, 0)),
            DimerEdge("e6", "b2", "w2", (0, 0)),
        ),
        rotation=(
            ("b1", ("e1", "e2")),
            ("b2", ("e3", "e4", "e5", "e6")),
            ("w1", ("e1", "e3", "e2", "e4")),
            ("w2", ("e5", "e6")),
        ),
    )


_BUILDERS = {
    "conifold": _conifold,
    "honeycomb": _honeycomb,
    "fzero": _fzero,
    "degenerate": _degenerate,
}


def example_names() -> tuple[str, ...]:
    return tuple(_BUILDERS)


def example(name: str) -> DimerModel:
    """A catalog model by name; raises :class:`InvalidModelError` otherwise."""
    try:
        return _BUILDERS[name]()
    except KeyError:
        known = ", ".join(_BUILDERS)
        raise InvalidModelError(
            f"unknown example {name!r} (available: {known})"
        ) from None
