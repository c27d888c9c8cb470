"""Dimer models on the two-torus.

A model is a bipartite graph embedded in ``R^2 / Z^2``, recorded purely
combinatorially: every edge joins a black vertex to a white one and carries
an offset in ``Z^2`` telling which translate of the white vertex the edge
reaches in the universal cover, and every vertex carries the counterclockwise
cyclic order of its incident edges.  Faces are never stored; they are traced
from the rotation system.

Darts. A *dart* is an edge with a direction, written ``(edge_id, sign)``:
sign ``+1`` runs black-to-white, ``-1`` white-to-black.  Face tracing walks
darts so that the face lies on the left: after arriving at the head of a
dart, it leaves along the clockwise-next edge at that vertex.  While tracing
we also accumulate the universal-cover cell of each dart's tail vertex,
starting at ``(0, 0)``; these cells are what every lifting computation
downstream is built on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .exceptions import InvalidModelError

BLACK = "black"
WHITE = "white"

Cell = tuple[int, int]
Dart = tuple[str, int]  # (edge id, +1 black->white / -1 white->black)


@dataclass(frozen=True)
class DimerVertex:
    id: str
    color: str
    pos: tuple[Fraction, Fraction] | None = None


@dataclass(frozen=True)
class DimerEdge:
    """An edge from ``black`` at cell ``m`` to ``white`` at cell ``m + offset``."""

    id: str
    black: str
    white: str
    offset: Cell


@dataclass(frozen=True)
class Face:
    """A face of the torus map; ``darts`` is its counterclockwise boundary."""

    id: str
    darts: tuple[Dart, ...]


@dataclass(frozen=True)
class DimerModel:
    vertices: tuple[DimerVertex, ...]
    edges: tuple[DimerEdge, ...]
    # (vertex id, counterclockwise edge ids) pairs, one per vertex
    rotation: tuple[tuple[str, tuple[str, ...]], ...]

    def vertex(self, vid: str) -> DimerVertex:
        return _vertex_index(self)[vid]

    def edge(self, eid: str) -> DimerEdge:
        return _edge_index(self)[eid]

    def rotation_at(self, vid: str) -> tuple[str, ...]:
        return _rotation_index(self)[vid]

    @property
    def faces(self) -> tuple[Face, ...]:
        return trace_faces(self).faces


@lru_cache(maxsize=None)
def _vertex_index(model: DimerModel) -> dict[str, DimerVertex]:
    return {v.id: v for v in model.vertices}


@lru_cache(maxsize=None)
def _edge_index(model: DimerModel) -> dict[str, DimerEdge]:
    return {e.id: e for e in model.edges}


@lru_cache(maxsize=None)
def _rotation_index(model: DimerModel) -> dict[str, tuple[str, ...]]:
    return {vid: eids for vid, eids in model.rotation}


def dart_tail(model: DimerModel, dart: Dart) -> str:
    e = model.edge(dart[0])
    return e.black if dart[1] > 0 else e.white


def dart_head(model: DimerModel, dart: Dart) -> str:
    e = model.edge(dart[0])
    return e.white if dart[1] > 0 else e.black


def iter_darts(model: DimerModel):
    """All darts in canonical order: edge order, ``+1`` before ``-1``."""
    for e in model.edges:
        yield (e.id, +1)
        yield (e.id, -1)


# ---------------------------------------------------------------------------
# structural soundness (prerequisite for tracing anything)


def _structural_errors(model: DimerModel) -> list[str]:
    errs: list[str] = []
    seen_v: set[str] = set()
    for v in model.vertices:
        if v.color not in (BLACK, WHITE):
            errs.append(f"vertex {v.id!r} has color {v.color!r}")
        if v.id in seen_v:
            errs.append(f"duplicate vertex id {v.id!r}")
        seen_v.add(v.id)
    seen_e: set[str] = set()
    for e in model.edges:
        if e.id in seen_e:
            errs.append(f"duplicate edge id {e.id!r}")
        seen_e.add(e.id)
        for end, want in ((e.black, BLACK), (e.white, WHITE)):
            if end not in seen_v:
                errs.append(f"edge {e.id!r} references missing vertex {end!r}")
            else:
                got = next(v.color for v in model.vertices if v.id == end)
                if got != want:
                    errs.append(f"edge {e.id!r}: vertex {end!r} is {got}, expected {want}")
    return errs


def _rotation_errors(model: DimerModel) -> list[str]:
    errs: list[str] = []
    rot = dict(model.rotation)
    vids = {v.id for v in model.vertices}
    if set(rot) != vids or len(rot) != len(model.rotation):
        errs.append("rotation keys do not match the vertex set exactly")
        return errs
    incident: dict[str, list[str]] = {vid: [] for vid in vids}
    for e in model.edges:
        incident[e.black].append(e.id)
        incident[e.white].append(e.id)
    for vid in vids:
        if sorted(rot[vid]) != sorted(incident[vid]):
            errs.append(
                f"rotation at {vid!r} is not a cyclic order of its incident edges"
            )
        if not rot[vid]:
            errs.append(f"vertex {vid!r} has no incident edges")
    return errs


# ---------------------------------------------------------------------------
# face tracing


@dataclass(frozen=True, eq=False)
class FaceTrace:
    faces: tuple[Face, ...]
    dart_face: dict[Dart, str] = field(repr=False)
    dart_cell: dict[Dart, Cell] = field(repr=False)

    def face_of(self, dart: Dart) -> str:
        return self.dart_face[dart]

    def cell_of(self, dart: Dart) -> Cell:
        """Universal-cover cell of the dart's tail, within its face's trace."""
        return self.dart_cell[dart]


def _next_dart(model: DimerModel, dart: Dart) -> Dart:
    head = dart_head(model, dart)
    rot = model.rotation_at(head)
    i = rot.index(dart[0])
    nxt = rot[i - 1]  # clockwise-next edge at the head vertex
    sign = +1 if model.vertex(head).color == BLACK else -1
    return (nxt, sign)


def _head_cell(model: DimerModel, dart: Dart, tail_cell: Cell) -> Cell:
    off = model.edge(dart[0]).offset
    if dart[1] > 0:
        return (tail_cell[0] + off[0], tail_cell[1] + off[1])
    return (tail_cell[0] - off[0], tail_cell[1] - off[1])


@lru_cache(maxsize=None)
def trace_faces(model: DimerModel) -> FaceTrace:
    """Trace all faces of the torus map.

    Faces come out sorted by their least dart (edge position in the model,
    with ``+1`` before ``-1``) and are labelled ``f1, f2, ...`` in that
    order; each face's dart tuple starts at its least dart.  Raises
    :class:`InvalidModelError` if the model is structurally unsound, since
    the trace is meaningless then.
    """
    errs = _structural_errors(model)
    if not errs:
        # rotation checks index vertices by id, so only run them on a
        # structurally sound model
        errs = _rotation_errors(model)
    if errs:
        raise InvalidModelError("; ".join(errs))
    faces: list[Face] = []
    dart_face: dict[Dart, str] = {}
    dart_cell: dict[Dart, Cell] = {}
    for start in iter_darts(model):
        if start in dart_face:
            continue
        fid = f"f{len(faces) + 1}"
        darts: list[Dart] = []
        d, cell = start, (0, 0)
        while True:
            darts.append(d)
            dart_face[d] = fid
            dart_cell[d] = cell
            cell = _head_cell(model, d, cell)
            d = _next_dart(model, d)
            if d == start:
                break
        faces.append(Face(fid, tuple(darts)))
    return FaceTrace(tuple(faces), dart_face, dart_cell)


def compute_faces(model: DimerModel) -> tuple[Face, ...]:
    return trace_faces(model).faces


def face_gluing_shifts(model: DimerModel) -> dict[str, Cell]:
    """Cell mismatch across each edge between its two face traces.

    Each edge ``e`` is crossed by both of its darts, traced inside the two
    (possibly equal) adjacent faces, each trace normalised to start at cell
    ``(0, 0)``.  The shift ``u(e,-1) - u(e,+1) - offset(e)`` measures how the
    two traces disagree about where the edge actually sits in the cover; it
    is exactly the translation needed to glue lifted faces along ``e``.
    """
    tr = trace_faces(model)
    out: dict[str, Cell] = {}
    for e in model.edges:
        um = tr.dart_cell[(e.id, -1)]
        up = tr.dart_cell[(e.id, +1)]
        out[e.id] = (um[0] - up[0] - e.offset[0], um[1] - up[1] - e.offset[1])
    return out


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class ValidationCheck:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[ValidationCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def check(self, name: str) -> ValidationCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _adjacency(model: DimerModel) -> dict[str, list[tuple[str, str]]]:
    adj: dict[str, list[tuple[str, str]]] = {v.id: [] for v in model.vertices}
    for e in model.edges:
        adj[e.black].append((e.id, e.white))
        adj[e.white].append((e.id, e.black))
    return adj


def _is_connected(model: DimerModel) -> bool:
    if not model.vertices:
        return False
    adj = _adjacency(model)
    seen = {model.vertices[0].id}
    stack = [model.vertices[0].id]
    while stack:
        for _, other in adj[stack.pop()]:
            if other not in seen:
                seen.add(other)
                stack.append(other)
    return len(seen) == len(model.vertices)


def _cycle_offset_classes(model: DimerModel) -> list[Cell]:
    """Offset classes of the fundamental cycles of a spanning tree.

    Assign each vertex a cover cell by walking a spanning tree (black-to-white
    adds the edge offset, white-to-black subtracts it); every non-tree edge
    then closes a cycle whose total offset is its class in ``Z^2``.
    Assumes the graph is connected.
    """
    cell: dict[str, Cell] = {model.vertices[0].id: (0, 0)}
    adj = _adjacency(model)
    tree: set[str] = set()
    stack = [model.vertices[0].id]
    while stack:
        vid = stack.pop()
        for eid, other in adj[vid]:
            if other in cell:
                continue
            e = model.edge(eid)
            c = cell[vid]
            if vid == e.black:
                cell[other] = (c[0] + e.offset[0], c[1] + e.offset[1])
            else:
                cell[other] = (c[0] - e.offset[0], c[1] - e.offset[1])
            tree.add(eid)
            stack.append(other)
    classes = []
    for e in model.edges:
        if e.id in tree:
            continue
        cb, cw = cell[e.black], cell[e.white]
        classes.append((cb[0] + e.offset[0] - cw[0], cb[1] + e.offset[1] - cw[1]))
    return classes


def _spans_lattice(classes: list[Cell]) -> bool:
    # the rows generate Z^2 iff both Smith invariants are 1: gcd of the
    # entries and gcd of the 2x2 minors must each be 1
    d1 = 0
    for c in classes:
        d1 = gcd(d1, c[0], c[1])
    if d1 != 1:
        return False
    d2 = 0
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            (a, b), (c, d) = classes[i], classes[j]
            d2 = gcd(d2, a * d - b * c)
    return d2 == 1


def validate_model(model: DimerModel) -> ValidationReport:
    """Run the six validity checks and report each one by name.

    The checks, in order: ``bipartite`` (colors and endpoint references),
    ``rotation`` (each vertex's cyclic order lists exactly its incident
    edges), ``connected``, ``euler`` (V - E + F = 0, i.e. the map really
    lives on a torus), ``face-offsets`` (every face closes up in the cover),
    and ``homology-span`` (edge offsets generate ``Z^2``, so the torus
    directions are genuinely used).  Later checks that depend on a failed
    earlier one are reported as not evaluated.
    """
    checks: list[ValidationCheck] = []

    errs = _structural_errors(model)
    checks.append(ValidationCheck("bipartite", not errs, "; ".join(errs)))
    structural_ok = not errs

    if structural_ok:
        rerrs = _rotation_errors(model)
        checks.append(ValidationCheck("rotation", not rerrs, "; ".join(rerrs)))
        rotation_ok = not rerrs
    else:
        checks.append(ValidationCheck("rotation", False, "not evaluated"))
        rotation_ok = False

    if structural_ok:
        conn = _is_connected(model)
        checks.append(
            ValidationCheck("connected", conn, "" if conn else "graph is disconnected")
        )
    else:
        conn = False
        checks.append(ValidationCheck("connected", False, "not evaluated"))

    if rotation_ok:
        tr = trace_faces(model)
        v, e, f = len(model.vertices), len(model.edges), len(tr.faces)
        euler = v - e + f
        checks.append(
            ValidationCheck(
                "euler",
                euler == 0,
                f"V - E + F = {v} - {e} + {f} = {euler}",
            )
        )
        bad_faces = []
        for face in tr.faces:
            last = face.darts[-1]
            end = _head_cell(model, last, tr.dart_cell[last])
            if end != (0, 0):
                bad_faces.append(f"{face.id} closes with shift {end}")
        checks.append(ValidationCheck("face-offsets", not bad_faces, "; ".join(bad_faces)))
    else:
        checks.append(ValidationCheck("euler", False, "not evaluated"))
        checks.append(ValidationCheck("face-offsets", False, "not evaluated"))

    if structural_ok and conn:
        spans = _spans_lattice(_cycle_offset_classes(model))
        checks.append(
            ValidationCheck(
                "homology-span",
                spans,
                "" if spans else "edge offsets do not generate Z^2",
            )
        )
    else:
        checks.append(ValidationCheck("homology-span", False, "not evaluated"))

    return ValidationReport(tuple(checks))


# ---------------------------------------------------------------------------
# universal-cover patches


@dataclass(frozen=True)
class CoverFragment:
    """Lifts of the model to the cells ``[-radius, radius]^2`` of the cover.

    Vertex lifts are ``(vertex id, cell)`` pairs.  Edge lifts are
    ``(edge id, cell)`` pairs indexed by the cell of their black endpoint;
    the white endpoint sits at ``cell + offset`` and may stick out of the
    patch.
    """

    radius: int
    vertex_lifts: tuple[tuple[str, Cell], ...]
    edge_lifts: tuple[tuple[str, Cell], ...]


def lift_patch(model: DimerModel, radius: int) -> CoverFragment:
    if radius < 0:
        raise InvalidModelError("radius must be non-negative")
    cells = [
        (i, j)
        for i in range(-radius, radius + 1)
        for j in range(-radius, radius + 1)
    ]
    vl = tuple((v.id, c) for c in cells for v in model.vertices)
    el = tuple((e.id, c) for c in cells for e in model.edges)
    return CoverFragment(radius, vl, el)


# ---------------------------------------------------------------------------
# JSON serialisation


def _frac_from_json(x: object, what: str) -> Fraction:
    if type(x) is int:
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidModelError(f"{what}: bad rational {x!r}") from exc
    raise InvalidModelError(f"{what}: expected int or 'p/q' string, got {x!r}")


def _frac_to_json(q: Fraction) -> int | str:
    return int(q) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _require_keys(obj: dict, required: set[str], optional: set[str], what: str) -> None:
    if not isinstance(obj, dict):
        raise InvalidModelError(f"{what}: expected an object")
    keys = set(obj)
    if missing := required - keys:
        raise InvalidModelError(f"{what}: missing {sorted(missing)}")
    if unknown := keys - required - optional:
        raise InvalidModelError(f"{what}: unknown fields {sorted(unknown)}")


def _str_field(obj: dict, key: str, what: str) -> str:
    val = obj[key]
    if not isinstance(val, str) or not val:
        raise InvalidModelError(f"{what}: {key!r} must be a non-empty string")
    return val


def _int_pair(val: object, what: str) -> Cell:
    if (
        not isinstance(val, list)
        or len(val) != 2
        or any(type(x) is not int for x in val)
    ):
        raise InvalidModelError(f"{what}: expected a pair of integers")
    return (val[0], val[1])


def model_from_dict(data: object) -> DimerModel:
    """Build a model from plain JSON data, rejecting anything off-schema."""
    _require_keys(data, {"vertices", "edges", "rotation"}, set(), "model")
    if not isinstance(data["vertices"], list) or not data["vertices"]:
        raise InvalidModelError("model: 'vertices' must be a non-empty list")
    if not isinstance(data["edges"], list):
        raise InvalidModelError("model: 'edges' must be a list")

    vertices = []
    for raw in data["vertices"]:
        what = f"vertex {raw.get('id')!r}" if isinstance(raw, dict) else "vertex"
        _require_keys(raw, {"id", "color"}, {"pos"}, what)
        vid = _str_field(raw, "id", what)
        color = _str_field(raw, "color", what)
        if color not in (BLACK, WHITE):
            raise InvalidModelError(f"{what}: color must be 'black' or 'white'")
        pos = None
        if "pos" in raw:
            p = raw["pos"]
            if not isinstance(p, list) or len(p) != 2:
                raise InvalidModelError(f"{what}: 'pos' must be a pair")
            pos = (_frac_from_json(p[0], what), _frac_from_json(p[1], what))
        vertices.append(DimerVertex(vid, color, pos))

    vids = [v.id for v in vertices]
    if len(set(vids)) != len(vids):
        raise InvalidModelError("duplicate vertex ids")
    with_pos = [v for v in vertices if v.pos is not None]
    if with_pos and len(with_pos) != len(vertices):
        raise InvalidModelError("either all vertices carry 'pos' or none do")
    if len({v.pos for v in with_pos}) != len(with_pos):
        raise InvalidModelError("vertex positions must be pairwise distinct")

    vcolor = {v.id: v.color for v in vertices}
    edges = []
    for raw in data["edges"]:
        what = f"edge {raw.get('id')!r}" if isinstance(raw, dict) else "edge"
        _require_keys(raw, {"id", "black", "white", "offset"}, set(), what)
        eid = _str_field(raw, "id", what)
        b = _str_field(raw, "black", what)
        w = _str_field(raw, "white", what)
        for end in (b, w):
            if end not in vcolor:
                raise InvalidModelError(f"{what}: unknown vertex {end!r}")
        edges.append(DimerEdge(eid, b, w, _int_pair(raw["offset"], what)))
    eids = [e.id for e in edges]
    if len(set(eids)) != len(eids):
        raise InvalidModelError("duplicate edge ids")

    rot_raw = data["rotation"]
    if not isinstance(rot_raw, dict):
        raise InvalidModelError("model: 'rotation' must be an object")
    if set(rot_raw) != set(vids):
        raise InvalidModelError("rotation keys must be exactly the vertex ids")
    rotation = []
    for vid in vids:
        lst = rot_raw[vid]
        if not isinstance(lst, list) or any(not isinstance(x, str) for x in lst):
            raise InvalidModelError(f"rotation at {vid!r} must be a list of edge ids")
        for x in lst:
            if x not in set(eids):
                raise InvalidModelError(f"rotation at {vid!r}: unknown edge {x!r}")
        rotation.append((vid, tuple(lst)))

    return DimerModel(tuple(vertices), tuple(edges), tuple(rotation))


def model_to_dict(model: DimerModel) -> dict:
    data: dict = {"vertices": [], "edges": [], "rotation": {}}
    for v in model.vertices:
        item: dict = {"id": v.id, "color": v.color}
        if v.pos is not None:
            item["pos"] = [_frac_to_json(v.pos[0]), _frac_to_json(v.pos[1])]
        data["vertices"].append(item)
    for e in model.edges:
        data["edges"].append(
            {"id": e.id, "black": e.black, "white": e.white, "offset": list(e.offset)}
        )
    for vid, eids in model.rotation:
        data["rotation"][vid] = list(eids)
    return data


def load_model(path: str) -> DimerModel:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidModelError(f"{path}: not valid JSON ({exc})") from exc
    return model_from_dict(data)


def dump_model(model: DimerModel, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model), fh, indent=2)
        fh.write("\n")
