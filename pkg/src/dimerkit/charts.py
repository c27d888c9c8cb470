"""Torus-fixed points of the moduli spaces and their toric charts.

A 0/1 representation of the dual quiver is a fixed-point candidate when it
satisfies the relations, its support connects all quiver vertices, the
support lifts consistently to the universal cover (every support cycle has
zero cover shift), and it is stable for the chosen weight.  Each candidate
glues the lifted faces of the model into a fundamental domain whose
translates tile the plane; walking the domain boundary and counting the
valencies of its corner points classifies the chart around the fixed point
into exactly three local shapes, two of them singular and one smooth.

The coordinate functions of a chart are read off at the first boundary
corner: one character per zero edge there, gauge-normalised to vanish on
the support.  Expressed in the coordinates of the cocharacter splitting
the characters become rows of an integer matrix; the chart's cone is
spanned by the columns of its inverse.  Collecting the cones of all
candidates and checking that their level-one cross-sections triangulate
the height polygon certifies that the chamber resolves the cone over the
polygon crepantly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exceptions import (
    CapacityError,
    InternalConsistencyError,
    InvalidModelError,
)
from .heights import (
    LatticePolygon,
    area2,
    char_poly,
    contains_point,
    newton_polygon,
)
from .lattice import (
    Splitting,
    Vec3,
    cochar_lattice,
    det_int,
    express_functional,
    split_by_reference,
)
from .matchings import perfect_matchings
from .model import BLACK, Cell, Dart, DimerModel, ValidationCheck, trace_faces
from .quiver import Quiver, quiver_of, rep_satisfies_relations
from .stability import Theta, is_stable, sample_generic_theta

ARROW_CAP = 24  # candidate search branches on every arrow

CASE_SIX_OPPOSITE = "six-trivalent-opposite-colors"
CASE_SIX_SAME = "six-trivalent-same-colors"
CASE_FOUR = "four-quadrivalent"

_FIXED_LOCUS = {
    CASE_SIX_OPPOSITE: "a single point; the chart is affine 3-space",
    CASE_SIX_SAME: "a point and the surface t1*t2*t3 = 1",
    CASE_FOUR: "a point and the two-torus t1*t3 = t2*t4 = 1",
}


@dataclass(frozen=True)
class FixedPointCandidate:
    """A 0/1 representation that can carry a torus-fixed point.

    ``cells`` places the canonical lift of each face in the cover, with the
    first face at the origin; gluing along the support arrows is consistent
    with these cells by construction.
    """

    support: frozenset[str]
    cells: tuple[tuple[str, Cell], ...]


class _OffsetUnionFind:
    """Union-find tracking relative cover cells within components."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.delta = [(0, 0)] * n  # cell(v) - cell(parent(v))

    def copy(self) -> _OffsetUnionFind:
        uf = _OffsetUnionFind(0)
        uf.parent = self.parent[:]
        uf.delta = self.delta[:]
        return uf

    def find(self, v: int) -> tuple[int, Cell]:
        if self.parent[v] == v:
            return v, (0, 0)
        root, up = self.find(self.parent[v])
        d = self.delta[v]
        self.parent[v] = root
        self.delta[v] = (d[0] + up[0], d[1] + up[1])
        return root, self.delta[v]

    def union(self, s: int, t: int, shift: Cell) -> bool:
        """Impose cell(t) = cell(s) + shift; False on contradiction."""
        rs, ds = self.find(s)
        rt, dt = self.find(t)
        if rs == rt:
            return (dt[0] - ds[0], dt[1] - ds[1]) == shift
        self.parent[rt] = rs
        self.delta[rt] = (ds[0] + shift[0] - dt[0], ds[1] + shift[1] - dt[1])
        return True


def enumerate_fixed_candidates(
    q: Quiver, theta: Theta
) -> tuple[FixedPointCandidate, ...]:
    """All fixed-point candidates, in canonical support order.

    Branches on each arrow with two prunes: a support cycle whose cover
    shifts do not cancel kills the branch, as does a vertex left with no
    possible support arrow.  Raises :class:`CapacityError` past
    ``ARROW_CAP`` arrows.
    """
    n = len(q.arrows)
    if n > ARROW_CAP:
        raise CapacityError(f"{n} arrows exceed the search cap of {ARROW_CAP}")
    vpos = {v: i for i, v in enumerate(q.vertices)}
    nv = len(q.vertices)
    ends = [
        (vpos[a.source], vpos[a.target], q.shift(a.id)) for a in q.arrows
    ]
    undecided = [0] * nv
    chosen = [0] * nv
    for s, t, _ in ends:
        undecided[s] += 1
        if t != s:
            undecided[t] += 1

    found: list[frozenset[str]] = []
    included: list[int] = []

    def leaf(uf: _OffsetUnionFind) -> None:
        root0 = uf.find(0)[0]
        if any(uf.find(v)[0] != root0 for v in range(1, nv)):
            return
        support = frozenset(q.arrows[i].id for i in included)
        if not rep_satisfies_relations(q, support):
            return
        if not is_stable(q, support, theta):
            return
        found.append(support)

    def dfs(i: int, uf: _OffsetUnionFind) -> None:
        if i == n:
            leaf(uf)
            return
        s, t, shift = ends[i]
        undecided[s] -= 1
        if t != s:
            undecided[t] -= 1
        # include the arrow, unless its cycle shifts clash
        uf2 = uf.copy()
        if uf2.union(s, t, shift):
            chosen[s] += 1
            if t != s:
                chosen[t] += 1
            included.append(i)
            dfs(i + 1, uf2)
            included.pop()
            chosen[s] -= 1
            if t != s:
                chosen[t] -= 1
        # exclude it, unless a vertex just lost its last chance of support
        if nv == 1 or (
            (chosen[s] or undecided[s]) and (chosen[t] or undecided[t])
        ):
            dfs(i + 1, uf)
        undecided[s] += 1
        if t != s:
            undecided[t] += 1

    dfs(0, _OffsetUnionFind(nv))

    pos = {aid: i for i, aid in enumerate(q.arrow_ids)}
    found.sort(key=lambda sup: tuple(sorted(pos[aid] for aid in sup)))
    out = []
    for support in found:
        out.append(FixedPointCandidate(support, _support_cells(q, support)))
    return tuple(out)


def _support_cells(
    q: Quiver, support: frozenset[str]
) -> tuple[tuple[str, Cell], ...]:
    """Face cells from walking the support, first face at the origin."""
    cells: dict[str, Cell] = {q.vertices[0]: (0, 0)}
    growing = True
    while growing:
        growing = False
        for aid in support:
            s, t = q.source(aid), q.target(aid)
            w = q.shift(aid)
            if s in cells and t not in cells:
                cs = cells[s]
                cells[t] = (cs[0] + w[0], cs[1] + w[1])
                growing = True
            elif t in cells and s not in cells:
                ct = cells[t]
                cells[s] = (ct[0] - w[0], ct[1] - w[1])
                growing = True
    if len(cells) != len(q.vertices):
        raise InternalConsistencyError("support does not span the quiver")
    for aid in support:  # non-tree closure
        cs, ct, w = cells[q.source(aid)], cells[q.target(aid)], q.shift(aid)
        if (ct[0] - cs[0], ct[1] - cs[1]) != w:
            raise InternalConsistencyError("support cycle shifts do not cancel")
    return tuple((v, cells[v]) for v in q.vertices)


# ---------------------------------------------------------------------------
# fundamental domains


@dataclass(frozen=True)
class FundamentalDomain:
    """Lifted faces of a candidate glued along its support.

    ``boundary`` walks the rim counterclockwise (domain on the left) as
    ``(dart, tail cell)`` pairs, starting at the least boundary dart.
    Edge lifts are ``(edge id, cell of the black end)``.
    """

    face_cells: tuple[tuple[str, Cell], ...]
    interior_edges: tuple[tuple[str, Cell], ...]
    boundary: tuple[tuple[Dart, Cell], ...]

    @property
    def boundary_edge_ids(self) -> frozenset[str]:
        return frozenset(d[0] for d, _ in self.boundary)


def fundamental_domain(
    model: DimerModel, candidate: FixedPointCandidate
) -> FundamentalDomain:
    tr = trace_faces(model)
    cells = dict(candidate.cells)
    if set(cells) != {f.id for f in tr.faces}:
        raise InvalidModelError("candidate cells do not match the faces")
    support = candidate.support

    edge_lift: dict[Dart, tuple[str, Cell]] = {}
    tail_cell: dict[Dart, Cell] = {}
    for f in tr.faces:
        cf = cells[f.id]
        for d in f.darts:
            u = tr.dart_cell[d]
            tail = (u[0] + cf[0], u[1] + cf[1])
            off = model.edge(d[0]).offset
            m = tail if d[1] > 0 else (tail[0] - off[0], tail[1] - off[1])
            edge_lift[d] = (d[0], m)
            tail_cell[d] = tail

    interior: set[tuple[str, Cell]] = set()
    for e in model.edges:
        plus, minus = edge_lift[(e.id, +1)], edge_lift[(e.id, -1)]
        if e.id in support:
            if plus != minus:
                raise InternalConsistencyError(
                    f"support edge {e.id!r} fails to glue its face lifts"
                )
            interior.add(plus)
        elif plus == minus:
            raise InternalConsistencyError(
                f"domain touches itself across the zero edge {e.id!r}"
            )

    edge_pos = {e.id: i for i, e in enumerate(model.edges)}
    boundary_darts = [d for d in edge_lift if edge_lift[d] not in interior]
    if not boundary_darts:
        raise InternalConsistencyError("domain has no boundary")
    start = min(
        boundary_darts,
        key=lambda d: (edge_pos[d[0]], 0 if d[1] > 0 else 1, tail_cell[d]),
    )

    walk: list[tuple[Dart, Cell]] = []
    d, tc = start, tail_cell[start]
    while True:
        walk.append((d, tc))
        e = model.edge(d[0])
        if d[1] > 0:
            head, hc = e.white, (tc[0] + e.offset[0], tc[1] + e.offset[1])
        else:
            head, hc = e.black, (tc[0] - e.offset[0], tc[1] - e.offset[1])
        head_black = model.vertex(head).color == BLACK
        rot = model.rotation_at(head)
        j = rot.index(d[0])
        for step in range(1, len(rot) + 1):  # spin clockwise past glued edges
            e2 = rot[(j - step) % len(rot)]
            off2 = model.edge(e2).offset
            m2 = hc if head_black else (hc[0] - off2[0], hc[1] - off2[1])
            if (e2, m2) not in interior:
                break
        else:
            raise InternalConsistencyError("walk trapped at an interior vertex")
        d, tc = (e2, +1 if head_black else -1), hc
        if tail_cell.get(d) != tc:
            raise InternalConsistencyError("boundary walk left the domain")
        if (d, tc) == (start, tail_cell[start]):
            break
        if len(walk) > len(boundary_darts):
            raise InternalConsistencyError("boundary walk does not close")
    if len(walk) != len(boundary_darts):
        raise InternalConsistencyError("boundary is not a single circuit")

    _check_winding(model, walk)
    return FundamentalDomain(
        tuple((f.id, cells[f.id]) for f in tr.faces),
        tuple(sorted(interior, key=lambda x: (edge_pos[x[0]], x[1]))),
        tuple(walk),
    )


def _check_winding(model: DimerModel, walk: Sequence[tuple[Dart, Cell]]) -> None:
    """Shoelace check: the walk must run counterclockwise (when drawable)."""
    pts = []
    for d, tc in walk:
        e = model.edge(d[0])
        v = model.vertex(e.black if d[1] > 0 else e.white)
        if v.pos is None:
            return
        pts.append((v.pos[0] + tc[0], v.pos[1] + tc[1]))
    s = Fraction(0)
    for i, (x0, y0) in enumerate(pts):
        x1, y1 = pts[(i + 1) % len(pts)]
        s += x0 * y1 - x1 * y0
    if s <= 0:
        raise InternalConsistencyError("boundary walk is not counterclockwise")


# ---------------------------------------------------------------------------
# chart classification


@dataclass(frozen=True)
class ChartClassification:
    case: str
    smooth: bool
    fixed_locus: str
    census: tuple[tuple[int, int], ...]  # (valency, count of corners)
    corner: tuple[str, Cell]  # first boundary corner v1
    coordinate_edges: tuple[str, ...]  # zero edges at v1, counterclockwise


def _census_case(
    census: dict[int, int], corners: Sequence[tuple[str, str]]
) -> str:
    """Chart case from the corner census and the (vertex id, color) walk.

    Enforces the torus bookkeeping a one-tile tiling must satisfy: corner
    count over valency sums against edge and tile counts, every group of
    same-valency corners fills whole vertex orbits, and only two profiles
    survive.
    """
    if any(n < 3 for n in census):
        raise InternalConsistencyError(
            f"boundary point of valency {min(census)} < 3"
        )
    balance = 1 - Fraction(sum(census.values()), 2) + sum(
        Fraction(a, n) for n, a in census.items()
    )
    if balance != 0:
        raise InternalConsistencyError(
            f"boundary census {census} violates the Euler count"
        )
    if any(a % n for n, a in census.items()):
        raise InternalConsistencyError(
            f"boundary census {census} does not fill vertex orbits"
        )
    if census == {4: 4}:
        return CASE_FOUR
    if census == {3: 6}:
        odd = {corners[i][0] for i in (0, 2, 4)}
        even = {corners[i][0] for i in (1, 3, 5)}
        if len(odd) != 1 or len(even) != 1 or odd == even:
            raise InternalConsistencyError(
                "trivalent boundary corners do not alternate two vertices"
            )
        c1 = next(iter(odd))
        c2 = next(iter(even))
        same = corners[0][1] == corners[1][1]
        if c1 == c2:
            raise InternalConsistencyError("trivalent corner vertices coincide")
        return CASE_SIX_SAME if same else CASE_SIX_OPPOSITE
    raise InternalConsistencyError(f"impossible boundary census {census}")


def classify_chart(
    model: DimerModel, candidate: FixedPointCandidate
) -> ChartClassification:
    """Classify the chart at a fixed-point candidate by its domain boundary.

    Verifies on the way that the non-isolated zero edges are exactly the
    boundary edges of the fundamental domain (so its translates really cut
    the plane along the zero locus).
    """
    dom = fundamental_domain(model, candidate)
    support = candidate.support
    zero_deg: dict[str, int] = {v.id: 0 for v in model.vertices}
    for e in model.edges:
        if e.id not in support:
            zero_deg[e.black] += 1
            zero_deg[e.white] += 1
    boundary_ids = dom.boundary_edge_ids
    for e in model.edges:
        if e.id in support:
            continue
        crowded = zero_deg[e.black] >= 2 or zero_deg[e.white] >= 2
        if crowded != (e.id in boundary_ids):
            raise InternalConsistencyError(
                f"zero edge {e.id!r} disagrees with the boundary translates"
            )

    def valency(vid: str) -> int:
        return sum(1 for eid in model.rotation_at(vid) if eid in boundary_ids)

    # Valency-2 visits sit inside a straight run of the zero locus; they are
    # not corners of the tiling, so the census smooths them away.
    visits: list[tuple[str, Cell, int]] = []
    for d, tc in dom.boundary:
        e = model.edge(d[0])
        vid = e.black if d[1] > 0 else e.white
        visits.append((vid, tc, valency(vid)))
    corner_idx = [i for i, (_, _, n) in enumerate(visits) if n >= 3]
    census: dict[int, int] = {}
    for i in corner_idx:
        n = visits[i][2]
        census[n] = census.get(n, 0) + 1
    if not corner_idx:
        raise InternalConsistencyError("domain boundary has no corners")

    edge_pos = {e.id: i for i, e in enumerate(model.edges)}
    start_i = min(
        corner_idx,
        key=lambda i: (
            edge_pos[dom.boundary[i][0][0]],
            0 if dom.boundary[i][0][1] > 0 else 1,
            dom.boundary[i][1],
        ),
    )
    shifted = corner_idx.index(start_i)
    ordered = corner_idx[shifted:] + corner_idx[:shifted]
    corners = [
        (visits[i][0], model.vertex(visits[i][0]).color) for i in ordered
    ]

    case = _census_case(census, corners)

    start_dart, start_cell = dom.boundary[start_i]
    v1 = corners[0][0]
    rot = model.rotation_at(v1)
    j = rot.index(start_dart[0])
    coord_edges = [
        eid
        for eid in (rot[(j + k) % len(rot)] for k in range(len(rot)))
        if eid not in support
    ]
    expect = 4 if case == CASE_FOUR else 3
    if len(coord_edges) != expect:
        raise InternalConsistencyError(
            f"corner carries {len(coord_edges)} zero edges, expected {expect}"
        )
    return ChartClassification(
        case,
        case == CASE_SIX_OPPOSITE,
        _FIXED_LOCUS[case],
        tuple(sorted(census.items())),
        (v1, start_cell),
        tuple(coord_edges),
    )


# ---------------------------------------------------------------------------
# chart characters and cones


def chart_characters(
    q: Quiver, candidate: FixedPointCandidate, coordinate_edges: Sequence[str]
) -> tuple[dict[str, int], ...]:
    """One arrow-indexed functional per coordinate edge.

    Weights are gauge-normalised to vanish on the support; the character of
    a coordinate edge is the normalised weight of its arrow.  The
    normalisation must be consistent on the weight lattice ``W``, which is
    checked on the support's non-tree arrows.
    """
    n = len(q.arrows)
    pos = {aid: i for i, aid in enumerate(q.arrow_ids)}
    gamma: dict[str, tuple[int, ...]] = {q.vertices[0]: (0,) * n}
    tree: set[str] = set()
    growing = True
    while growing:
        growing = False
        for aid in candidate.support:
            s, t = q.source(aid), q.target(aid)
            unit = tuple(int(k == pos[aid]) for k in range(n))
            if s in gamma and t not in gamma:
                gamma[t] = tuple(g - u for g, u in zip(gamma[s], unit))
                tree.add(aid)
                growing = True
            elif t in gamma and s not in gamma:
                gamma[s] = tuple(g + u for g, u in zip(gamma[t], unit))
                tree.add(aid)
                growing = True
    if len(gamma) != len(q.vertices):
        raise InternalConsistencyError("support does not span the quiver")

    w_basis = cochar_lattice(q).w_basis
    for aid in candidate.support - tree:
        s, t = q.source(aid), q.target(aid)
        diff = [
            gs - gt - int(k == pos[aid])
            for k, (gs, gt) in enumerate(zip(gamma[s], gamma[t]))
        ]
        for wb in w_basis:
            if sum(d * w for d, w in zip(diff, wb)) != 0:
                raise InternalConsistencyError(
                    "gauge normalisation is not a functional on the lattice"
                )

    out = []
    for eid in coordinate_edges:
        if eid in candidate.support:
            raise InvalidModelError(f"coordinate edge {eid!r} lies in the support")
        s, t = q.source(eid), q.target(eid)
        vec = [
            int(k == pos[eid]) + gt - gs
            for k, (gt, gs) in enumerate(zip(gamma[t], gamma[s]))
        ]
        out.append(dict(zip(q.arrow_ids, vec)))
    return tuple(out)


def chart_rows(
    q: Quiver, split: Splitting, characters: Sequence[dict[str, int]]
) -> tuple[Vec3, ...]:
    """The characters in the splitting's coordinates, one row each."""
    return tuple(express_functional(q, split, c) for c in characters)


def _adjugate3(m: Sequence[Vec3]) -> list[list[int]]:
    c = lambda i, j: m[(i + 1) % 3][(j + 1) % 3] * m[(i + 2) % 3][(j + 2) % 3] - \
        m[(i + 1) % 3][(j + 2) % 3] * m[(i + 2) % 3][(j + 1) % 3]
    return [[c(j, i) for j in range(3)] for i in range(3)]


@dataclass(frozen=True)
class ChartCone:
    """Rays of a smooth chart's cone: columns of the inverse row matrix."""

    rays: tuple[Vec3, Vec3, Vec3]
    det: int


def chart_cone(rows: Sequence[Vec3]) -> ChartCone:
    if len(rows) != 3:
        raise InvalidModelError("a smooth chart has exactly three characters")
    d = det_int(rows)
    if d not in (1, -1):
        raise InternalConsistencyError(
            f"chart rows are not unimodular (determinant {d})"
        )
    adj = _adjugate3(rows)
    inv = [[x // d for x in row] for row in adj]
    rays = tuple(tuple(inv[i][j] for i in range(3)) for j in range(3))
    return ChartCone(rays, d)


def chart_transition(rows_i: Sequence[Vec3], rows_j: Sequence[Vec3]):
    """Coordinate change between two charts: ``M_i @ M_j^{-1}``, integral."""
    dj = det_int(rows_j)
    if dj not in (1, -1):
        raise InternalConsistencyError("chart rows are not unimodular")
    adj = _adjugate3(rows_j)
    return tuple(
        tuple(
            sum(rows_i[r][k] * adj[k][c] for k in range(3)) // dj
            for c in range(3)
        )
        for r in range(3)
    )


# ---------------------------------------------------------------------------
# the fan certificate


@dataclass(frozen=True)
class Chart:
    candidate: FixedPointCandidate
    classification: ChartClassification
    rows: tuple[Vec3, ...] | None  # None when the chart is not smooth
    cone: ChartCone | None


@dataclass(frozen=True)
class CertificateReport:
    checks: tuple[ValidationCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def check(self, name: str) -> ValidationCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise InternalConsistencyError(f"no certificate check named {name!r}")


@dataclass(frozen=True)
class FanResult:
    base: tuple[str, ...]
    theta: Theta
    polygon: LatticePolygon
    charts: tuple[Chart, ...]
    report: CertificateReport


def _clip_area2(tri_a: Sequence[Cell], tri_b: Sequence[Cell]) -> Fraction:
    """Twice the area of the intersection of two counterclockwise triangles."""
    poly = [(Fraction(x), Fraction(y)) for x, y in tri_a]
    for i in range(len(tri_b)):
        a, b = tri_b[i], tri_b[(i + 1) % len(tri_b)]
        if not poly:
            break

        def side(p, a=a, b=b):
            # positive on the left of a -> b, where the interior lies
            return (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])

        kept = []
        for k, p in enumerate(poly):
            pn = poly[(k + 1) % len(poly)]
            sp, sn = side(p), side(pn)
            if sp >= 0:
                kept.append(p)
            if (sp > 0 and sn < 0) or (sp < 0 and sn > 0):
                t = sp / (sp - sn)
                kept.append(
                    (p[0] + t * (pn[0] - p[0]), p[1] + t * (pn[1] - p[1]))
                )
        poly = kept
    if len(poly) < 3:
        return Fraction(0)
    s = Fraction(0)
    for i, (x0, y0) in enumerate(poly):
        x1, y1 = poly[(i + 1) % len(poly)]
        s += x0 * y1 - x1 * y0
    return abs(s)


def verify_crepant(polygon: LatticePolygon, charts: Sequence[Chart]) -> CertificateReport:
    """Certify that the chart cones triangulate the cone over the polygon.

    Checks, in order: every chart smooth; every cone matrix unimodular with
    positive orientation; all rays at level one; all cross-section triangles
    inside the polygon; pairwise interior-disjoint; total area equal to the
    polygon's; all transitions integral of determinant one.
    """
    checks: list[ValidationCheck] = []
    rough = [c for c in charts if not c.classification.smooth]
    checks.append(
        ValidationCheck(
            "charts-smooth",
            not rough and bool(charts),
            "no charts at all"
            if not charts
            else "; ".join(
                f"{sorted(c.candidate.support)}: {c.classification.case}"
                for c in rough
            ),
        )
    )
    smooth = [c for c in charts if c.cone is not None]

    bad_det = [c for c in smooth if c.cone.det != 1]
    checks.append(
        ValidationCheck(
            "cones-unimodular",
            not bad_det and bool(smooth),
            "no smooth charts"
            if not smooth
            else "; ".join(f"determinant {c.cone.det}" for c in bad_det),
        )
    )
    bad_level = [
        c for c in smooth if any(r[2] != 1 for r in c.cone.rays)
    ]
    checks.append(
        ValidationCheck(
            "rays-level-one",
            not bad_level,
            "; ".join(str(c.cone.rays) for c in bad_level),
        )
    )

    tris = [tuple((r[0], r[1]) for r in c.cone.rays) for c in smooth]
    outside = [
        t for t in tris if not all(contains_point(polygon, p) for p in t)
    ]
    checks.append(
        ValidationCheck(
            "triangles-inside", not outside, "; ".join(map(str, outside))
        )
    )

    overlaps = []
    for i in range(len(tris)):
        for j in range(i + 1, len(tris)):
            if _clip_area2(tris[i], tris[j]) != 0:
                overlaps.append((i, j))
    checks.append(
        ValidationCheck(
            "triangles-disjoint", not overlaps, "; ".join(map(str, overlaps))
        )
    )

    def tri_area2(t):
        (x0, y0), (x1, y1), (x2, y2) = t
        return (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)

    total = sum(tri_area2(t) for t in tris)
    want = area2(polygon)
    checks.append(
        ValidationCheck(
            "area-covered",
            total == want and not rough,
            f"triangles cover {total}/2, polygon is {want}/2",
        )
    )

    bad_tr = []
    for i in range(len(smooth)):
        for j in range(len(smooth)):
            if i == j:
                continue
            tr = chart_transition(smooth[i].rows, smooth[j].rows)
            if det_int(tr) != 1:
                bad_tr.append((i, j))
    checks.append(
        ValidationCheck(
            "transitions-integral", not bad_tr, "; ".join(map(str, bad_tr))
        )
    )
    return CertificateReport(tuple(checks))


def assemble_fan(
    model: DimerModel,
    theta: Theta | None = None,
    seed: int = 0,
) -> FanResult:
    """Enumerate candidates for a (given or sampled generic) weight, build
    every chart, and certify the resulting fan against the height polygon."""
    q = quiver_of(model)
    pms = perfect_matchings(model)
    poly = newton_polygon(char_poly(model))
    base = pms[0]
    split = split_by_reference(q, base)
    if theta is None:
        theta, _, _ = sample_generic_theta(q, base, random.Random(seed))
    charts = []
    for cand in enumerate_fixed_candidates(q, theta):
        cls = classify_chart(model, cand)
        rows = cone = None
        if cls.smooth:
            chars = chart_characters(q, cand, cls.coordinate_edges)
            rows = chart_rows(q, split, chars)
            cone = chart_cone(rows)
        charts.append(Chart(cand, cls, rows, cone))
    report = verify_crepant(poly, charts)
    return FanResult(
        tuple(sorted(base)), theta, poly, tuple(charts), report
    )
