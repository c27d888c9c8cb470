"""Perfect matchings and non-degeneracy of bipartite graphs.

A dimer model is non-degenerate when every edge lies in some perfect
matching (and a perfect matching exists).  Three independent tests are
provided: forcing each edge and completing a matching around it
(``per-edge``), full enumeration with averaged charges (``r-charge``), and
the strict Hall condition on both sides (``strong-marriage``).  On connected
graphs with both colors present they agree; the enumeration- and
subset-based tests carry capacity bounds.

Everything here works on the abstract bipartite graph, so the tests run on
arbitrary multigraphs, not just graphs that embed in the torus.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .exceptions import (
    CapacityError,
    DegenerateModelError,
    InternalConsistencyError,
    InvalidModelError,
)
from .model import DimerModel

SUBSET_CAP = 20  # strong-marriage enumerates subsets of one side
MATCHING_CAP = 200_000  # enumeration bails out beyond this many matchings

NON_DEGENERACY_METHODS = ("per-edge", "r-charge", "strong-marriage")


@dataclass(frozen=True)
class BipartiteGraph:
    blacks: tuple[str, ...]
    whites: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]  # (edge id, black end, white end)

    def __post_init__(self):
        b, w = set(self.blacks), set(self.whites)
        if len(b) != len(self.blacks) or len(w) != len(self.whites) or b & w:
            raise InvalidModelError("vertex names must be distinct")
        ids = [eid for eid, _, _ in self.edges]
        if len(set(ids)) != len(ids):
            raise InvalidModelError("duplicate edge ids")
        for eid, eb, ew in self.edges:
            if eb not in b or ew not in w:
                raise InvalidModelError(f"edge {eid!r} has a dangling endpoint")


def from_model(model: DimerModel) -> BipartiteGraph:
    return BipartiteGraph(
        tuple(v.id for v in model.vertices if v.color == "black"),
        tuple(v.id for v in model.vertices if v.color == "white"),
        tuple((e.id, e.black, e.white) for e in model.edges),
    )


@lru_cache(maxsize=None)
def _by_black(g: BipartiteGraph) -> dict[str, tuple[tuple[str, str], ...]]:
    out: dict[str, tuple[tuple[str, str], ...]] = {b: () for b in g.blacks}
    for eid, b, w in g.edges:
        out[b] = out[b] + ((eid, w),)
    return out


def enumerate_matchings(
    g: BipartiteGraph, limit: int = MATCHING_CAP
) -> tuple[frozenset[str], ...]:
    """All perfect matchings, as edge-id sets, in a canonical order.

    Matchings are sorted by their tuple of edge positions.  Raises
    :class:`CapacityError` when more than ``limit`` matchings exist.
    """
    if len(g.blacks) != len(g.whites):
        return ()
    by_black = _by_black(g)
    found: list[frozenset[str]] = []
    used_whites: set[str] = set()
    chosen: list[str] = []

    def extend(remaining: tuple[str, ...]):
        if not remaining:
            found.append(frozenset(chosen))
            if len(found) > limit:
                raise CapacityError(
                    f"more than {limit} perfect matchings; raise the limit "
                    "or use a non-enumerating method"
                )
            return
        # fail-first: branch on the black vertex with fewest free edges
        best = min(
            remaining,
            key=lambda b: sum(1 for _, w in by_black[b] if w not in used_whites),
        )
        rest = tuple(b for b in remaining if b != best)
        for eid, w in by_black[best]:
            if w in used_whites:
                continue
            used_whites.add(w)
            chosen.append(eid)
            extend(rest)
            chosen.pop()
            used_whites.remove(w)

    extend(g.blacks)
    pos = {eid: i for i, (eid, _, _) in enumerate(g.edges)}
    found.sort(key=lambda m: sorted(pos[eid] for eid in m))
    return tuple(found)


def perfect_matchings(model: DimerModel) -> tuple[frozenset[str], ...]:
    return enumerate_matchings(from_model(model))


def _max_matching(g: BipartiteGraph, skip: frozenset[str]) -> int:
    """Size of a maximum matching avoiding the vertices in ``skip``."""
    by_black = _by_black(g)
    match_w: dict[str, str] = {}

    def augment(b: str, seen: set[str]) -> bool:
        for eid, w in by_black[b]:
            if w in skip or w in seen:
                continue
            seen.add(w)
            if w not in match_w or augment(match_w[w], seen):
                match_w[w] = b
                return True
        return False

    size = 0
    for b in g.blacks:
        if b not in skip and augment(b, set()):
            size += 1
    return size


def has_perfect_matching(g: BipartiteGraph) -> bool:
    return len(g.blacks) == len(g.whites) and _max_matching(
        g, frozenset()
    ) == len(g.blacks)


def has_matching_containing(g: BipartiteGraph, eid: str) -> bool:
    """Whether some perfect matching contains the edge ``eid``."""
    for e, b, w in g.edges:
        if e == eid:
            if len(g.blacks) != len(g.whites):
                return False
            return _max_matching(g, frozenset({b, w})) == len(g.blacks) - 1
    raise InvalidModelError(f"unknown edge {eid!r}")


def r_charge_average(g: BipartiteGraph) -> dict[str, Fraction]:
    """Edge charges ``2 * (matchings through e) / (all matchings)``.

    Exact rationals; every vertex's incident charges sum to 2, which is
    checked.  Raises :class:`DegenerateModelError` when the graph has no
    perfect matching at all.
    """
    pms = enumerate_matchings(g)
    if not pms:
        raise DegenerateModelError("no perfect matchings")
    total = len(pms)
    charges = {
        eid: Fraction(2 * sum(1 for m in pms if eid in m), total)
        for eid, _, _ in g.edges
    }
    sums: dict[str, Fraction] = {v: Fraction(0) for v in g.blacks + g.whites}
    for eid, b, w in g.edges:
        sums[b] += charges[eid]
        sums[w] += charges[eid]
    for v, s in sums.items():
        if s != 2:
            raise InternalConsistencyError(
                f"charges at {v!r} sum to {s}, not 2"
            )
    return charges


def _strict_hall_one_side(
    side: tuple[str, ...], neighbor_bits: dict[str, int]
) -> bool:
    n = len(side)
    if n > SUBSET_CAP:
        raise CapacityError(
            f"strong-marriage enumerates 2^{n} subsets; "
            f"cap is 2^{SUBSET_CAP}, use method 'per-edge' instead"
        )
    for mask in range(1, (1 << n) - 1):
        nb = 0
        size = 0
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            nb |= neighbor_bits[side[i]]
            size += 1
            m &= m - 1
        if nb.bit_count() <= size:
            return False
    return True


def _strong_marriage(g: BipartiteGraph) -> bool:
    if len(g.blacks) != len(g.whites):
        return False
    wpos = {w: i for i, w in enumerate(g.whites)}
    bpos = {b: i for i, b in enumerate(g.blacks)}
    nb_of_black = {b: 0 for b in g.blacks}
    nb_of_white = {w: 0 for w in g.whites}
    for _, b, w in g.edges:
        nb_of_black[b] |= 1 << wpos[w]
        nb_of_white[w] |= 1 << bpos[b]
    return _strict_hall_one_side(g.blacks, nb_of_black) and _strict_hall_one_side(
        g.whites, nb_of_white
    )


def is_non_degenerate(g: BipartiteGraph, method: str = "per-edge") -> bool:
    """Whether a perfect matching exists and every edge lies in one.

    The three methods compute the same predicate in unrelated ways (on
    connected graphs); ``per-edge`` is the only one without a capacity
    bound.
    """
    if method == "per-edge":
        return has_perfect_matching(g) and all(
            has_matching_containing(g, eid) for eid, _, _ in g.edges
        )
    if method == "r-charge":
        try:
            charges = r_charge_average(g)
        except DegenerateModelError:
            return False
        return all(c > 0 for c in charges.values())
    if method == "strong-marriage":
        return _strong_marriage(g)
    raise InvalidModelError(
        f"unknown method {method!r}; expected one of {NON_DEGENERACY_METHODS}"
    )
