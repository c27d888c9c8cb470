"""Command line interface: exit codes, payload shapes, determinism."""

import json
import os

import pytest

from dimerkit import dump_model, example
from dimerkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_validate_ok(capsys):
    code, data = run_json(capsys, "validate", "--example", "conifold")
    assert code == 0
    assert data["ok"] is True
    assert {c["name"] for c in data["checks"]} == {
        "bipartite", "rotation", "connected", "euler",
        "face-offsets", "homology-span",
    }


def test_validate_failure_is_negative_verdict(capsys, tmp_path):
    bad = dict(
        vertices=[{"id": "b1", "color": "black"}, {"id": "w1", "color": "white"}],
        edges=[
            {"id": "e1", "black": "b1", "white": "w1", "offset": [0, 0]},
            {"id": "e2", "black": "b1", "white": "w1", "offset": [1, 0]},
            {"id": "e3", "black": "b1", "white": "w1", "offset": [2, 0]},
        ],
        rotation={"b1": ["e1", "e2", "e3"], "w1": ["e1", "e2", "e3"]},
    )
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, data = run_json(capsys, "validate", str(path))
    assert code == 3
    assert data["ok"] is False


def test_missing_file_is_invalid_input(capsys):
    code = main(["validate", "/nonexistent/model.json"])
    assert code == 2


def test_malformed_json_is_invalid_input(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["validate", str(path)]) == 2


def test_unknown_example_is_invalid_input(capsys):
    # argparse restricts --example to the catalog names
    with pytest.raises(SystemExit) as exc:
        main(["validate", "--example", "nope"])
    assert exc.value.code == 2


def test_model_file_equivalent_to_example(capsys, tmp_path):
    path = tmp_path / "conifold.json"
    dump_model(example("conifold"), str(path))
    _, from_file = run_json(capsys, "matchings", str(path))
    _, from_example = run_json(capsys, "matchings", "--example", "conifold")
    assert from_file == from_example


def test_subcommands_refuse_invalid_models(capsys, tmp_path):
    # structurally fine JSON, but fails validation (offsets collinear)
    bad = dict(
        vertices=[{"id": "b1", "color": "black"}, {"id": "w1", "color": "white"}],
        edges=[
            {"id": "e1", "black": "b1", "white": "w1", "offset": [0, 0]},
            {"id": "e2", "black": "b1", "white": "w1", "offset": [1, 0]},
            {"id": "e3", "black": "b1", "white": "w1", "offset": [2, 0]},
        ],
        rotation={"b1": ["e1", "e2", "e3"], "w1": ["e1", "e2", "e3"]},
    )
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    for sub in ("quiver", "matchings", "charpoly", "polygon", "check",
                "rcharge", "toric"):
        assert main([sub, str(path)]) == 2, sub


def test_quiver_payload(capsys):
    code, data = run_json(capsys, "quiver", "--example", "conifold")
    assert code == 0
    assert data["vertices"] == ["f1", "f2"]
    assert len(data["arrows"]) == 4
    assert len(data["relations"]) == 4
    rel = data["relations"][0]
    assert set(rel) >= {"arrow", "plus", "minus"}


def test_matchings_payload(capsys):
    code, data = run_json(capsys, "matchings", "--example", "conifold")
    assert code == 0
    assert data["count"] == 4
    assert data["matchings"] == [["e1"], ["e2"], ["e3"], ["e4"]]


def test_charpoly_payload(capsys):
    code, data = run_json(capsys, "charpoly", "--example", "conifold")
    assert code == 0
    assert {(t["hx"], t["hy"], t["coeff"]) for t in data} == {
        (0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1),
    }
    # measuring from another matching translates the exponents
    code, shifted = run_json(capsys, "charpoly", "--example", "conifold",
                             "--ref", "2")
    assert code == 0
    assert {(t["hx"], t["hy"]) for t in shifted} == {
        (0, 0), (-1, 0), (0, -1), (-1, -1),
    }
    assert main(["charpoly", "--example", "conifold", "--ref", "99"]) == 2


def test_polygon_payload_and_svg(capsys):
    code, data = run_json(capsys, "polygon", "--example", "conifold")
    assert code == 0
    assert data == [[0, 0], [1, 0], [1, 1], [0, 1]]
    code, out = run(capsys, "polygon", "--example", "conifold", "--svg")
    assert code == 0
    assert out.startswith("<svg")


def test_check_agreement(capsys):
    code, data = run_json(capsys, "check", "--example", "conifold")
    assert code == 0
    assert data["agree"] is True
    assert data["methods"] == {
        "per-edge": True, "r-charge": True, "strong-marriage": True,
    }
    code, data = run_json(capsys, "check", "--example", "degenerate")
    assert code == 3
    assert data["agree"] is True
    assert set(data["methods"].values()) == {False}


def test_rcharge_payload(capsys):
    code, data = run_json(capsys, "rcharge", "--example", "honeycomb")
    assert code == 0
    assert data["r_charges"] == {"e1": "2/3", "e2": "2/3", "e3": "2/3"}


def test_theta_command(capsys):
    code, data = run_json(capsys, "theta", "--example", "conifold",
                          "--matching", "0", "--seed", "7")
    assert code == 0
    assert data["generic"] is True
    assert data["matching"] == ["e1"]
    assert set(data["theta"]) == {"f1", "f2"}
    assert data["tries"] >= 1
    assert main(["theta", "--example", "conifold", "--matching", "99"]) == 2


def test_dimer_seed_env(capsys, monkeypatch):
    _, with_flag = run_json(capsys, "theta", "--example", "conifold",
                            "--matching", "0", "--seed", "5")
    monkeypatch.setenv("DIMER_SEED", "5")
    _, with_env = run_json(capsys, "theta", "--example", "conifold",
                           "--matching", "0")
    assert with_env == with_flag


def test_fixed_points(capsys, tmp_path):
    svg_dir = tmp_path / "domains"
    code, data = run_json(capsys, "fixed-points", "--example", "conifold",
                          "--theta", "auto", "--seed", "0",
                          "--svg", str(svg_dir))
    assert code == 0
    assert data["certificate"]["ok"] is True
    assert len(data["fixed_points"]) == 2
    for fp in data["fixed_points"]:
        assert fp["case"] == "six-trivalent-opposite-colors"
        assert fp["smooth"] is True
        assert os.path.isfile(fp["svg"])
    supports = {frozenset(fp["support"]) for fp in data["fixed_points"]}
    assert supports == {frozenset({"e2"}), frozenset({"e4"})}


def test_fixed_points_theta_file(capsys, tmp_path):
    path = tmp_path / "theta.json"
    path.write_text(json.dumps({"f1": 3, "f2": -3}))
    code, data = run_json(capsys, "fixed-points", "--example", "conifold",
                          "--theta", str(path))
    assert code == 0
    supports = {frozenset(fp["support"]) for fp in data["fixed_points"]}
    assert supports == {frozenset({"e1"}), frozenset({"e3"})}


def test_fixed_points_degenerate_is_negative(capsys):
    code, data = run_json(capsys, "fixed-points", "--example", "degenerate",
                          "--theta", "auto", "--seed", "0")
    assert code == 3
    assert data["certificate"]["ok"] is False


def test_toric_payload(capsys):
    code, data = run_json(capsys, "toric", "--example", "conifold")
    assert code == 0
    assert data["cone_rays"] == [[0, 0, 1], [1, 0, 1], [1, 1, 1], [0, 1, 1]]
    assert len(data["hilbert_basis"]) == 4
    assert data["additive_relations"] == [
        {"sum": [0, 0, 1], "combinations": [[0, 3], [1, 2]]}
    ]
    code, data = run_json(capsys, "toric", "--example", "honeycomb")
    assert code == 0
    assert len(data["hilbert_basis"]) == 3
    assert data["additive_relations"] == []
    assert main(["toric", "--example", "degenerate"]) == 3


def test_render_command(capsys, tmp_path):
    out = tmp_path / "model.svg"
    code = main(["render", "--example", "conifold", "--what", "model",
                 "--out", str(out)])
    assert code == 0
    assert out.read_text().startswith("<svg")
    code, text = run(capsys, "render", "--example", "conifold",
                     "--what", "polygon")
    assert code == 0
    assert text.startswith("<svg")


def test_argparse_errors_exit_2():
    # neither a model file nor --example
    assert main(["matchings"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_both_model_and_example_rejected(capsys, tmp_path):
    path = tmp_path / "m.json"
    dump_model(example("conifold"), str(path))
    assert main(["matchings", str(path), "--example", "conifold"]) == 2


def test_emissions_byte_deterministic(capsys):
    for argv in (
        ["fixed-points", "--example", "conifold", "--theta", "auto",
         "--seed", "3"],
        ["theta", "--example", "fzero", "--matching", "1", "--seed", "9"],
        ["render", "--example", "conifold", "--what", "domain",
         "--theta", "auto", "--seed", "0"],
    ):
        first_code, first = run(capsys, *argv)
        second_code, second = run(capsys, *argv)
        assert first_code == second_code
        assert first == second, argv
