"""Command-line interface: outputs, exit codes, determinism."""

import importlib.resources
import json

import jsonschema

from heiszeta.cli import run


def capture(capsys, argv):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def load_schema(name):
    return json.loads(
        importlib.resources.files("heiszeta.schemas").joinpath(name).read_text()
    )


def test_formula_latex_matches_published_display(capsys):
    code, out, _ = capture(capsys, ["formula", "--e", "3", "--f", "1", "--output", "latex"])
    assert code == 0
    assert "1 + p^{7-5s}" in out
    for piece in ["1-p^{-s}", "1-p^{5-s}", "1-p^{6-3s}", "1-p^{8-7s}", "1-p^{14-8s}"]:
        assert piece in out


def test_formula_json_schema(capsys):
    code, out, _ = capture(capsys, ["formula", "--e", "2", "--f", "1", "--output", "json"])
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, load_schema("formula.schema.json"))
    assert payload["variant"] == "snf"


def test_series_text(capsys):
    code, out, _ = capture(capsys, ["series", "--e", "1", "--f", "1", "--p", "2", "--terms", "2"])
    assert code == 0
    assert out.strip() == "1, 3, 7"


def test_series_json_schema(capsys):
    code, out, _ = capture(
        capsys,
        ["series", "--e", "2", "--f", "1", "--p", "3", "--terms", "3", "--output", "json"],
    )
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, load_schema("series.schema.json"))


def test_series_identical_across_variants(capsys):
    outputs = set()
    for variant in ["main", "snf", "totram"]:
        code, out, _ = capture(
            capsys,
            ["series", "--e", "2", "--f", "1", "--p", "2", "--terms", "4",
             "--variant", variant],
        )
        assert code == 0
        outputs.add(out)
    assert len(outputs) == 1


def test_check_funeq(capsys):
    code, out, _ = capture(
        capsys, ["check", "funeq", "--e", "2", "--f", "2", "--output", "json"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload == {
        "e": 2, "f": 2, "holds": True, "sign": 1,
        "x_exponent": 66, "y_exponent": 24,
    }


def test_check_consistency_and_lemmas(capsys):
    for suite in ["consistency", "lemmas", "coxeter"]:
        code, out, _ = capture(capsys, ["check", suite, "--e", "2", "--f", "1"])
        assert code == 0
        assert "FAIL" not in out


def test_oracle_json_rows_validate(capsys):
    code, out, _ = capture(
        capsys,
        ["oracle", "--e", "1", "--f", "1", "--p", "2", "--terms", "2",
         "--trials", "5", "--output", "json"],
    )
    assert code == 0
    lines = out.strip().splitlines()
    schema = load_schema("report.schema.json")
    for line in lines[:-1]:
        jsonschema.validate(json.loads(line), schema)
    assert json.loads(lines[-1])["mismatches"] == []


def test_usage_errors(capsys):
    code, _, _ = capture(capsys, ["formula", "--e", "2", "--f", "1", "--variant", "inert"])
    assert code == 2
    code, _, _ = capture(capsys, ["formula", "--e", "1", "--f", "2", "--variant", "totram"])
    assert code == 2
    code, _, _ = capture(capsys, ["series", "--e", "1", "--f", "1", "--p", "4", "--terms", "1"])
    assert code == 2
    code, _, _ = capture(capsys, ["frobnicate"])
    assert code == 2


def test_capacity_exit_code(capsys):
    code, _, err = capture(capsys, ["series", "--e", "9", "--f", "1", "--p", "2", "--terms", "1"])
    assert code == 3
    assert json.loads(err)["error"] == "capacity"


def test_output_determinism(capsys):
    argv = ["oracle", "--e", "2", "--f", "1", "--p", "2", "--terms", "2",
            "--seed", "42", "--output", "json"]
    _, first, _ = capture(capsys, argv)
    _, second, _ = capture(capsys, argv)
    assert first == second
