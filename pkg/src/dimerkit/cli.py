"""Command-line interface.

``dimer <command> <model.json> [options]`` — ``--example NAME`` substitutes
a catalog model for the file argument.

Every command prints JSON on stdout (SVG where a drawing is requested).
Exit codes separate the four ways a run can end: ``0`` success, ``1`` an
internal cross-check failed (a bug), ``2`` the input was unusable, ``3``
the computation finished with a negative verdict (failed validation,
degenerate model, failed certificate, non-generic weight).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import catalog, render
from .charts import assemble_fan, enumerate_fixed_candidates
from .exceptions import (
    CapacityError,
    DegenerateModelError,
    InternalConsistencyError,
    InvalidModelError,
)
from .heights import char_poly, newton_polygon
from .lattice import cone_over_polygon, dual_cone, hilbert_basis
from .matchings import (
    NON_DEGENERACY_METHODS,
    from_model,
    is_non_degenerate,
    perfect_matchings,
    r_charge_average,
)
from .model import DimerModel, load_model, validate_model
from .quiver import quiver_of, relations
from .stability import is_generic, make_theta, sample_generic_theta

EXIT_OK = 0
EXIT_BUG = 1
EXIT_BAD_INPUT = 2
EXIT_NEGATIVE = 3


def _json_default(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    raise TypeError(f"not JSON-serialisable: {x!r}")


def _emit(payload) -> None:
    json.dump(payload, sys.stdout, indent=2, default=_json_default)
    sys.stdout.write("\n")


def _load(args) -> DimerModel:
    if args.example is not None:
        if args.model is not None:
            raise InvalidModelError("give either a model file or --example")
        return catalog.example(args.example)
    if args.model is None:
        raise InvalidModelError("a model file (or --example) is required")
    try:
        return load_model(args.model)
    except FileNotFoundError as exc:
        raise InvalidModelError(f"cannot read {args.model!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidModelError(f"{args.model!r} is not JSON: {exc}") from exc


def _load_valid(args) -> DimerModel:
    """Every command other than ``validate`` refuses an invalid model."""
    model = _load(args)
    report = validate_model(model)
    if not report.ok:
        failed = ", ".join(c.name for c in report.checks if not c.ok)
        raise InvalidModelError(f"model fails validation: {failed}")
    return model


def _theta_for(q, model, args):
    """--theta names a JSON file of vertex weights, or 'auto' to sample."""
    spec = getattr(args, "theta", None) or "auto"
    if spec != "auto":
        try:
            with open(spec, encoding="utf-8") as fh:
                weights = json.load(fh)
        except FileNotFoundError as exc:
            raise InvalidModelError(f"cannot read {spec!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InvalidModelError(f"{spec!r} is not JSON: {exc}") from exc
        if not isinstance(weights, dict):
            raise InvalidModelError("--theta file must hold a JSON object")
        return make_theta(q, weights)
    base = perfect_matchings(model)[0]
    theta, _, _ = sample_generic_theta(q, base, random.Random(args.seed))
    return theta


# --- commands ---------------------------------------------------------------


def _cmd_validate(args) -> int:
    report = validate_model(_load(args))
    _emit(
        {
            "ok": report.ok,
            "checks": [
                {"name": c.name, "ok": c.ok, "detail": c.detail}
                for c in report.checks
            ],
        }
    )
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def _cmd_quiver(args) -> int:
    q = quiver_of(_load_valid(args))
    _emit(
        {
            "vertices": list(q.vertices),
            "arrows": [
                {
                    "id": a.id,
                    "source": a.source,
                    "target": a.target,
                    "shift": list(q.shift(a.id)),
                }
                for a in q.arrows
            ],
            "relations": [
                {
                    "arrow": r.arrow,
                    "plus": list(r.plus.arrows),
                    "minus": list(r.minus.arrows),
                }
                for r in relations(q)
            ],
        }
    )
    return EXIT_OK


def _cmd_matchings(args) -> int:
    pms = perfect_matchings(_load_valid(args))
    _emit({"count": len(pms), "matchings": [sorted(m) for m in pms]})
    return EXIT_OK


def _cmd_charpoly(args) -> int:
    model = _load_valid(args)
    pms = perfect_matchings(model)
    if not 0 <= args.ref < len(pms):
        raise InvalidModelError(
            f"--ref {args.ref} out of range 0..{len(pms) - 1}"
        )
    z = char_poly(model, base=pms[args.ref])
    _emit(
        [
            {"hx": e[0], "hy": e[1], "coeff": z.coefficient(e)}
            for e in z.exponents
        ]
    )
    return EXIT_OK


def _cmd_polygon(args) -> int:
    poly = newton_polygon(char_poly(_load_valid(args)))
    if args.svg:
        sys.stdout.write(render.render_polygon(poly))
    else:
        _emit([list(v) for v in poly.vertices])
    return EXIT_OK


def _cmd_check(args) -> int:
    g = from_model(_load_valid(args))
    verdicts = {m: is_non_degenerate(g, m) for m in NON_DEGENERACY_METHODS}
    agree = len(set(verdicts.values())) == 1
    _emit({"methods": verdicts, "agree": agree})
    if not agree:
        raise InternalConsistencyError(
            f"non-degeneracy methods disagree: {verdicts}"
        )
    return EXIT_OK if verdicts["per-edge"] else EXIT_NEGATIVE


def _cmd_rcharge(args) -> int:
    charges = r_charge_average(from_model(_load_valid(args)))
    _emit({"r_charges": {eid: str(v) for eid, v in sorted(charges.items())}})
    return EXIT_OK


def _cmd_theta(args) -> int:
    model = _load_valid(args)
    q = quiver_of(model)
    pms = perfect_matchings(model)
    if not 0 <= args.matching < len(pms):
        raise InvalidModelError(
            f"--matching {args.matching} out of range 0..{len(pms) - 1}"
        )
    theta, xi, tries = sample_generic_theta(
        q, pms[args.matching], random.Random(args.seed)
    )
    generic = is_generic(q, theta)
    _emit(
        {
            "matching": sorted(pms[args.matching]),
            "theta": {v: theta.of(v) for v in q.vertices},
            "xi": {a: str(x) for a, x in sorted(xi.items())},
            "tries": tries,
            "generic": generic,
        }
    )
    return EXIT_OK if generic else EXIT_NEGATIVE


def _cmd_fixed_points(args) -> int:
    model = _load_valid(args)
    q = quiver_of(model)
    theta = _theta_for(q, model, args)
    fan = assemble_fan(model, theta=theta)
    if args.svg:
        os.makedirs(args.svg, exist_ok=True)
    payload = {
        "theta": {v: theta.of(v) for v in q.vertices},
        "base": list(fan.base),
        "polygon": [list(v) for v in fan.polygon.vertices],
        "fixed_points": [],
        "certificate": {
            "ok": fan.report.ok,
            "checks": [
                {"name": c.name, "ok": c.ok, "detail": c.detail}
                for c in fan.report.checks
            ],
        },
    }
    for i, c in enumerate(fan.charts):
        entry = {
            "support": sorted(c.candidate.support),
            "cells": {v: list(cell) for v, cell in c.candidate.cells},
            "case": c.classification.case,
            "smooth": c.classification.smooth,
            "fixed_locus": c.classification.fixed_locus,
            "census": [list(x) for x in c.classification.census],
            "corner": [
                c.classification.corner[0],
                list(c.classification.corner[1]),
            ],
            "coordinate_edges": list(c.classification.coordinate_edges),
            "rows": None if c.rows is None else [list(r) for r in c.rows],
            "rays": None if c.cone is None else [list(r) for r in c.cone.rays],
        }
        if args.svg:
            path = os.path.join(args.svg, f"candidate-{i}.svg")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(render.render_domain(model, c.candidate))
            entry["svg"] = path
        payload["fixed_points"].append(entry)
    _emit(payload)
    return EXIT_OK if fan.report.ok else EXIT_NEGATIVE


def _cmd_toric(args) -> int:
    model = _load_valid(args)
    poly = newton_polygon(char_poly(model))
    cone = cone_over_polygon(poly)
    dual = dual_cone(cone)
    basis = hilbert_basis(dual)

    sums: dict[tuple, list[list[int]]] = {}
    for i in range(len(basis)):
        sums.setdefault(basis[i], []).append([i])
        for j in range(i, len(basis)):
            s = tuple(a + b for a, b in zip(basis[i], basis[j]))
            sums.setdefault(s, []).append([i, j])
    additive = [
        {"sum": list(s), "combinations": combos}
        for s, combos in sorted(sums.items())
        if len(combos) > 1
    ]
    _emit(
        {
            "polygon": [list(v) for v in poly.vertices],
            "cone_rays": [list(r) for r in cone.rays],
            "dual_rays": [list(r) for r in dual.rays],
            "hilbert_basis": [list(g) for g in basis],
            "additive_relations": additive,
        }
    )
    return EXIT_OK


def _cmd_render(args) -> int:
    model = _load_valid(args)
    if args.what == "model":
        matching = None
        if args.index is not None:
            pms = perfect_matchings(model)
            if not 0 <= args.index < len(pms):
                raise InvalidModelError(
                    f"--index {args.index} out of range 0..{len(pms) - 1}"
                )
            matching = pms[args.index]
        svg = render.render_model(model, matching, cells=args.cells)
    elif args.what == "polygon":
        svg = render.render_polygon(newton_polygon(char_poly(model)))
    else:  # domain
        q = quiver_of(model)
        theta = _theta_for(q, model, args)
        cands = enumerate_fixed_candidates(q, theta)
        if not cands:
            raise DegenerateModelError("no fixed points for this weight")
        idx = args.index if args.index is not None else 0
        if not 0 <= idx < len(cands):
            raise InvalidModelError(
                f"--index {idx} out of range 0..{len(cands) - 1}"
            )
        svg = render.render_domain(model, cands[idx])
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dimer",
        description="dimer models on the torus: tilings, quivers, matchings, "
        "stability, toric charts",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help_, seed=False, theta=False):
        p = sub.add_parser(name, help=help_)
        p.add_argument("model", nargs="?", help="model JSON file")
        p.add_argument(
            "--example",
            choices=catalog.example_names(),
            help="use a built-in model instead of a file",
        )
        if seed:
            p.add_argument(
                "--seed",
                type=int,
                default=int(os.environ.get("DIMER_SEED", "0")),
                help="random seed (default: DIMER_SEED or 0)",
            )
        if theta:
            p.add_argument(
                "--theta",
                default="auto",
                help="JSON file of vertex weights, or 'auto' to sample",
            )
        p.set_defaults(fn=fn)
        return p

    cmd("validate", _cmd_validate, "run the six structural checks")
    cmd("quiver", _cmd_quiver, "dual quiver with its relations")
    cmd("matchings", _cmd_matchings, "enumerate perfect matchings")
    p = cmd("charpoly", _cmd_charpoly,
            "characteristic polynomial of matchings")
    p.add_argument(
        "--ref", type=int, default=0,
        help="index of the reference matching (default 0)",
    )
    p = cmd("polygon", _cmd_polygon, "height polygon, counterclockwise")
    p.add_argument("--svg", action="store_true", help="draw instead of JSON")
    cmd("check", _cmd_check, "non-degeneracy by all three methods")
    cmd("rcharge", _cmd_rcharge, "average matching charge per edge")
    cmd("theta", _cmd_theta, "sample a generic stability weight", seed=True)
    sub.choices["theta"].add_argument(
        "--matching", type=int, default=0,
        help="index of the matching carrying the positive weights",
    )
    p = cmd("fixed-points", _cmd_fixed_points,
            "fixed points, charts, and the fan certificate",
            seed=True, theta=True)
    p.add_argument(
        "--svg", metavar="DIR",
        help="also write one fundamental-domain SVG per fixed point",
    )
    cmd("toric", _cmd_toric,
        "cone over the polygon, dual cone, Hilbert basis")
    p = cmd("render", _cmd_render, "draw the model, polygon, or a domain",
            seed=True, theta=True)
    p.add_argument(
        "--what", choices=("model", "polygon", "domain"), default="model"
    )
    p.add_argument(
        "--cells", type=int, default=2,
        help="side length of the block of fundamental cells (default 2)",
    )
    p.add_argument(
        "--index", type=int, default=None,
        help="matching index (model) or fixed-point index (domain)",
    )
    p.add_argument("--out", help="write to a file instead of stdout")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (InvalidModelError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except DegenerateModelError as exc:
        print(f"degenerate: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except InternalConsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_BUG


if __name__ == "__main__":
    sys.exit(main())
