import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

import oracles as O
from cubewalls import generators as gen
from cubewalls import io
from cubewalls.cli import VERBS, main, run

SCHEMAS = Path(__file__).resolve().parent.parent / "schemas"


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    d = tmp_path_factory.mktemp("cli")
    paths = {}
    for name, X in [("grid", gen.grid(3, 2)), ("cube", gen.hypercube(3)), ("torus", gen.torus(3, 3)),
                    ("corner", gen.three_squares_corner()), ("seg", gen.path(2))]:
        paths[name] = d / f"{name}.json"
        io.save(X, paths[name])
    paths["bad"] = d / "bad.json"
    paths["bad"].write_text('{"vertices": 3, "maximal_cubes": [[0, 1, 2]]}\n')
    paths["garbage"] = d / "garbage.json"
    paths["garbage"].write_text('{"vertices": 3,\n "maximal_cubes": [[0, 1]')
    paths["mirror"] = d / "mirror.json"
    paths["mirror"].write_text(json.dumps([3, 2, 1, 0, 7, 6, 5, 4, 11, 10, 9, 8]))
    paths["gens"] = d / "gens.json"
    paths["gens"].write_text(json.dumps([[v ^ (1 << k) for v in range(8)] for k in range(3)]))
    return paths


def call(*argv):
    status, text = run([str(a) for a in argv])
    return status, json.loads(text), text


def test_schema_files_are_valid():
    for name in list(VERBS) + ["complex", "error"]:
        if name == "generate":
            continue
        jsonschema.Draft202012Validator.check_schema(schema(name))


def test_generate_then_certify(files, tmp_path):
    status, text = run(["generate", "grid", "3", "2"])
    assert status == 0
    jsonschema.validate(json.loads(text), schema("complex"))
    path = tmp_path / "g.json"
    path.write_text(text)
    status, rep, _ = call("certify", "-i", path)
    assert status == 0 and rep["certified"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ["validate"],
        ["certify"],
        ["hyperplanes"],
        ["census"],
        ["halfspaces"],
        ["carrier", "--wall", "0"],
        ["blocks"],
        ["distance", "0", "11"],
        ["geodesic-check", "0", "11", "0,4"],
        ["geodesics", "0", "11", "--cap", "3"],
        ["interval", "0", "6"],
        ["median", "0", "2", "9", "--log"],
        ["walls"],
    ],
)
def test_outputs_match_schemas(files, argv):
    status, rep, _ = call(*argv, "-i", files["grid"])
    assert status == 0
    jsonschema.validate(rep, schema(argv[0]))


def test_cocycle_and_properness(files):
    status, rep, _ = call("cocycle", "--perm", files["mirror"], "--base", "0", "-i", files["grid"])
    assert status == 0 and rep["image"] == 3 and rep["norm2"] == rep["displacement"] == 3
    jsonschema.validate(rep, schema("cocycle"))
    status, rep, _ = call("properness", "--gens", files["gens"], "--radius", "2", "--cap", "3", "-i", files["cube"])
    assert status == 0 and len(rep["elements"]) == 8 and rep["below_radius"] == 4
    jsonschema.validate(rep, schema("properness"))


def test_median_cli_matches_oracle(files):
    status, rep, _ = call("median", "0", "11", "8", "--log", "-i", files["grid"])
    D = O.distance_matrix(gen.grid(3, 2))
    assert status == 0 and {rep["median"]} == O.medians(D, 0, 11, 8)
    assert "move_log" in rep


def test_census_and_blocks(files):
    assert call("census", "-i", files["cube"])[1]["census"] == {"1": 24, "2": 24, "3": 6}
    rep = call("blocks", "-i", files["cube"])[1]
    assert rep["total_cells"] == 54 and len(rep["blocks"]) == 6


def test_geodesic_check_encoding(files):
    X = gen.grid(3, 2)
    k = X.edges.index((1, 5))
    status, rep, _ = call("geodesic-check", "5", "0", f"{2 * k + 1},1", "-i", files["grid"])
    assert status == 0 and rep["steps"] == [[5, 1], [1, 0]] and rep["reaches_target"] and rep["is_geodesic"]


@pytest.mark.parametrize(
    "key,argv,status,error",
    [
        ("bad", ["validate"], 2, "NonCubeSize"),
        ("garbage", ["validate"], 2, "ParseError"),
        ("torus", ["certify"], 2, None),
        ("corner", ["certify"], 2, None),
        ("grid", ["distance", "0", "99"], 2, "UnknownVertex"),
        ("grid", ["geodesic-check", "0", "1", "999"], 2, "NotAnEdge"),
        ("grid", ["geodesics", "0", "11", "--cap", "0"], 2, "CapZero"),
        ("torus", ["median", "0", "1", "2"], 2, "NotCertified"),
        ("grid", ["distance", "0"], 1, "UsageError"),
        ("grid", ["distance", "0", "1", "--frobnicate"], 1, "UsageError"),
    ],
)
def test_failures(files, key, argv, status, error):
    got, rep, _ = call(*argv, "-i", files[key])
    assert got == status
    assert rep["schema_version"] == "1"
    if error:
        assert rep["error"] == error
        jsonschema.validate(rep, schema("error"))


def test_parse_error_position(files):
    rep = call("validate", "-i", files["garbage"])[1]
    assert rep["witness"]["line"] == 2


def test_certify_witness(files):
    rep = call("certify", "-i", files["corner"])[1]
    assert rep["certified"] is False and rep["witness"]["vertex"] == 0


def test_unknown_verb():
    status, rep, _ = call("bogus")
    assert status == 1 and rep["error"] == "UsageError"


def test_missing_input_file(tmp_path):
    status, rep, _ = call("validate", "-i", tmp_path / "nope.json")
    assert status == 1


def test_generate_kinds(tmp_path):
    for argv in (["hypercube", "2"], ["tree", "0-1,1-2,1-3"], ["path", "4"], ["star", "3"], ["torus", "3", "3"]):
        status, text = run(["generate", *argv])
        assert status == 0
        io.loads(text)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    io.save(gen.path(2), a)
    io.save(gen.star(3), b)
    status, text = run(["generate", "product", str(a), str(b)])
    assert status == 0 and io.loads(text).count(2) == 3
    assert run(["generate", "grid", "3"])[0] == 1
    assert run(["generate", "grid", "0", "2"])[0] == 2


def test_determinism(files):
    for argv in (["hyperplanes"], ["walls"], ["median", "3", "8", "6", "--log"], ["geodesics", "0", "11"]):
        texts = {call(*argv, "-i", files["grid"])[2] for _ in range(3)}
        assert len(texts) == 1


def test_pretty_only_indents(files):
    plain = call("census", "-i", files["grid"])[2]
    pretty = run(["--pretty", "census", "-i", str(files["grid"])])[1]
    assert pretty != plain and json.loads(pretty) == json.loads(plain)


def test_stdin_and_main(files, capsys, monkeypatch):
    import io as stdio

    monkeypatch.setattr(sys, "stdin", stdio.StringIO(files["seg"].read_text()))
    assert main(["census"]) == 0
    assert json.loads(capsys.readouterr().out)["census"] == {"1": 2}


def test_pipe_closure():
    gen_out = subprocess.run(
        [sys.executable, "-m", "cubewalls", "generate", "hypercube", "3"], capture_output=True, text=True, check=True
    ).stdout
    res = subprocess.run(
        [sys.executable, "-m", "cubewalls", "validate"], input=gen_out, capture_output=True, text=True
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["cubes"] == {"0": 8, "1": 12, "2": 6, "3": 1}
