"""Dual quivers of dimer models.

The quiver dual to a dimer model has one vertex per face and one arrow per
edge.  The arrow dual to edge ``e`` keeps the edge's id and runs from the
face left of the white-to-black dart to the face left of the black-to-white
dart, so that arrows cross their edges with the white vertex on the left.

Around every white vertex the arrows dual to its edges in clockwise order
form a directed cycle, and likewise counterclockwise around every black
vertex.  Dropping the arrow ``a`` from its white cycle leaves the path
``p_plus(a)``, dropping it from its black cycle leaves ``p_minus(a)``; the
relations of the quiver algebra identify these two paths, one pair per
arrow.

Paths are stored in composition order: ``arrows[-1]`` is traversed first.
Each arrow also carries a shift in ``Z^2`` (the face-gluing shift of its
edge); summing shifts over a cycle gives the cycle's displacement in the
universal cover, zero exactly for the cycles that bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .exceptions import InternalConsistencyError, InvalidModelError
from .model import Cell, DimerModel, face_gluing_shifts, trace_faces


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str


@dataclass(frozen=True)
class PathSeq:
    """A composable run of arrows in composition order (rightmost first)."""

    arrows: tuple[str, ...]
    source: str
    target: str


@dataclass(frozen=True)
class RelationPair:
    """The two sides ``p_plus = p_minus`` of the relation attached to an arrow."""

    arrow: str
    plus: PathSeq
    minus: PathSeq


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    shifts: tuple[tuple[str, Cell], ...]
    # duals of the clockwise-next edge at the white / counterclockwise-next
    # at the black endpoint; None on subquivers, which have no cycle structure
    white_next: tuple[tuple[str, str], ...] | None = None
    black_next: tuple[tuple[str, str], ...] | None = None

    @property
    def arrow_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.arrows)

    def arrow(self, aid: str) -> Arrow:
        try:
            return _arrow_index(self)[aid]
        except KeyError:
            raise InvalidModelError(f"unknown arrow {aid!r}") from None

    def source(self, aid: str) -> str:
        return self.arrow(aid).source

    def target(self, aid: str) -> str:
        return self.arrow(aid).target

    def shift(self, aid: str) -> Cell:
        return _shift_index(self)[aid]

    def arrows_from(self, v: str) -> tuple[str, ...]:
        return _adjacency(self)[0].get(v, ())

    def arrows_into(self, v: str) -> tuple[str, ...]:
        return _adjacency(self)[1].get(v, ())


@lru_cache(maxsize=None)
def _arrow_index(q: Quiver) -> dict[str, Arrow]:
    return {a.id: a for a in q.arrows}


@lru_cache(maxsize=None)
def _shift_index(q: Quiver) -> dict[str, Cell]:
    return dict(q.shifts)


@lru_cache(maxsize=None)
def _adjacency(q: Quiver):
    out: dict[str, tuple[str, ...]] = {}
    inc: dict[str, tuple[str, ...]] = {}
    for a in q.arrows:
        out[a.source] = out.get(a.source, ()) + (a.id,)
        inc[a.target] = inc.get(a.target, ()) + (a.id,)
    return out, inc


@lru_cache(maxsize=None)
def quiver_of(model: DimerModel) -> Quiver:
    """The quiver dual to a dimer model, with its cycle maps and shifts."""
    tr = trace_faces(model)
    arrows = tuple(
        Arrow(e.id, tr.dart_face[(e.id, -1)], tr.dart_face[(e.id, +1)])
        for e in model.edges
    )
    shifts = tuple(face_gluing_shifts(model).items())
    wn, bn = [], []
    for e in model.edges:
        rot_w = model.rotation_at(e.white)
        rot_b = model.rotation_at(e.black)
        i, j = rot_w.index(e.id), rot_b.index(e.id)
        wn.append((e.id, rot_w[i - 1]))
        bn.append((e.id, rot_b[(j + 1) % len(rot_b)]))
    return Quiver(
        tuple(f.id for f in tr.faces), arrows, shifts, tuple(wn), tuple(bn)
    )


def _verify_path(q: Quiver, path: PathSeq) -> PathSeq:
    at = path.source
    for aid in reversed(path.arrows):
        if q.source(aid) != at:
            raise InternalConsistencyError(
                f"path breaks at {aid!r}: sits at {at!r}, arrow leaves "
                f"{q.source(aid)!r}"
            )
        at = q.target(aid)
    if at != path.target:
        raise InternalConsistencyError(
            f"path ends at {at!r}, expected {path.target!r}"
        )
    return path


def make_path(q: Quiver, arrows: Iterable[str]) -> PathSeq:
    """Build a path from arrow ids in composition order, checking it composes."""
    arrows = tuple(arrows)
    if not arrows:
        raise InvalidModelError("cannot infer endpoints of an empty path")
    for aid in arrows:
        q.arrow(aid)
    path = PathSeq(arrows, q.source(arrows[-1]), q.target(arrows[0]))
    at = path.source
    for aid in reversed(arrows):
        if q.source(aid) != at:
            raise InvalidModelError(f"arrows do not compose at {aid!r}")
        at = q.target(aid)
    return path


def _complement_cycle_path(
    q: Quiver, aid: str, nxt: Mapping[str, str]
) -> PathSeq:
    seq = []
    cur = nxt[aid]
    while cur != aid:
        seq.append(cur)
        if len(seq) > len(q.arrows):
            raise InternalConsistencyError(f"cycle through {aid!r} does not close")
        cur = nxt[cur]
    path = PathSeq(tuple(reversed(seq)), q.target(aid), q.source(aid))
    return _verify_path(q, path)


def p_plus(q: Quiver, aid: str) -> PathSeq:
    """The white cycle at ``a``'s edge with ``a`` removed: a path t(a) -> s(a)."""
    if q.white_next is None:
        raise InvalidModelError("quiver has no cycle structure")
    q.arrow(aid)
    return _complement_cycle_path(q, aid, dict(q.white_next))


def p_minus(q: Quiver, aid: str) -> PathSeq:
    """The black cycle at ``a``'s edge with ``a`` removed: a path t(a) -> s(a)."""
    if q.black_next is None:
        raise InvalidModelError("quiver has no cycle structure")
    q.arrow(aid)
    return _complement_cycle_path(q, aid, dict(q.black_next))


@lru_cache(maxsize=None)
def relations(q: Quiver) -> tuple[RelationPair, ...]:
    """One relation pair per arrow, in arrow order."""
    return tuple(RelationPair(a.id, p_plus(q, a.id), p_minus(q, a.id)) for a in q.arrows)


def path_weight(path: PathSeq, weights: Mapping[str, object]):
    """Sum of the weights of the path's arrows, with multiplicity."""
    total = 0
    for aid in path.arrows:
        total = total + weights[aid]
    return total


def path_class(q: Quiver, path: PathSeq) -> Cell:
    """Total cover shift along the path; for cycles, the homology class."""
    x = y = 0
    for aid in path.arrows:
        s = q.shift(aid)
        x, y = x + s[0], y + s[1]
    return (x, y)


def check_support(q: Quiver, support: Iterable[str]) -> frozenset[str]:
    sup = frozenset(support)
    for aid in sup:
        q.arrow(aid)
    return sup


def rep_satisfies_relations(q: Quiver, support: Iterable[str]) -> bool:
    """Whether the 0/1 representation supported on ``support`` kills no
    relation on one side only: each relation's two paths must vanish or
    survive together."""
    sup = check_support(q, support)
    for rel in relations(q):
        plus_zero = any(a not in sup for a in rel.plus.arrows)
        minus_zero = any(a not in sup for a in rel.minus.arrows)
        if plus_zero != minus_zero:
            return False
    return True


def allowed_subquiver(q: Quiver, matching: Iterable[str]) -> Quiver:
    """The subquiver of arrows not dual to the given matching's edges.

    The result keeps vertices and shifts but loses the cycle maps.
    """
    m = check_support(q, matching)
    arrows = tuple(a for a in q.arrows if a.id not in m)
    shifts = tuple((aid, s) for aid, s in q.shifts if aid not in m)
    return Quiver(q.vertices, arrows, shifts)
