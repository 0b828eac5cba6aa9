import csv
import io
import json
from pathlib import Path

import pytest

from wittgauss import cli
from wittgauss.cli import EXIT_CONFIG, EXIT_FAIL, EXIT_OK, ConfigError, main, parse_range

GOLDEN = Path(__file__).parent / "golden" / "report_schema.json"


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def shape(obj):
    """Key and type skeleton of a report (lists collapse to their first element)."""
    if isinstance(obj, dict):
        return {k: shape(v) for k, v in sorted(obj.items())}
    if isinstance(obj, list):
        return [shape(obj[0])] if obj else []
    return type(obj).__name__


def test_parse_range():
    assert parse_range("1..3") == [1, 2, 3]
    assert parse_range("2,3,5") == [2, 3, 5]
    with pytest.raises(ConfigError):
        parse_range("3..1")
    with pytest.raises(ConfigError):
        parse_range("x")


def test_dh_small_grid_json(capsys):
    code, out, err = run(["dh", "--p", "3", "--k", "1", "--n", "2", "--s", "2"], capsys)
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["schema"] == cli.SCHEMA
    assert rep["totals"] == {"cases": 6, "passed": 6, "failed": 0}
    assert "pass in" in err and "time" not in out


def test_dh_degenerate_s_one(capsys):
    code, out, _ = run(["dh", "--p", "2", "--k", "1", "--n", "1", "--s", "1"], capsys)
    rep = json.loads(out)
    assert code == EXIT_OK and rep["totals"]["cases"] == 1
    case = rep["suites"][0]["cases"][0]
    assert case["lhs"] == case["rhs"]


def test_report_schema_is_pinned(capsys):
    code, out, _ = run(["dh", "--p", "3", "--k", "1", "--n", "1..2", "--s", "1..2"], capsys)
    assert code == EXIT_OK
    assert shape(json.loads(out)) == json.loads(GOLDEN.read_text())


def test_csv_one_row_per_character(capsys):
    code, out, _ = run(["dh", "--p", "5", "--k", "1", "--n", "2", "--s", "2", "--format", "csv"], capsys)
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 20
    assert all(r["ok"] == "1" and r["approximate"] == "1" for r in rows)
    assert all(r["lhs"] == r["rhs"] for r in rows)


def test_text_format(capsys):
    code, out, _ = run(["dh", "--p", "2", "--k", "1", "--n", "1", "--s", "2", "--format", "text"], capsys)
    assert code == EXIT_OK and out.strip().endswith("pass")


def test_global_sign_convention(capsys):
    code, out, _ = run(["dh", "--p", "3", "--k", "1..2", "--n", "1..2", "--s", "2", "--convention", "global-sign"], capsys)
    rep = json.loads(out)
    assert code == EXIT_OK and rep["conventions"]["additive_sign"] == "global-sign"


def test_kappa_unit(capsys):
    code, out, _ = run(["dh", "--p", "3", "--k", "1", "--n", "2", "--s", "2", "--kappa", "unit:2"], capsys)
    assert code == EXIT_OK


@pytest.mark.parametrize(
    "argv",
    [
        ["dh", "--p", "4"],
        ["dh", "--p", "2", "--k", "6", "--n", "3", "--s", "3"],
        ["dh", "--bogus"],
        ["dh", "--p", "2", "--k", "0"],
        ["mackey", "--group", "X9"],
        ["dh", "--kappa", "weird"],
        ["dh", "--p", "3", "--n", "2", "--kappa", "unit:3"],
        ["dh", "--workers", "0"],
        ["quadratic", "--p", "2"],
        [],
    ],
)
def test_config_errors_exit_two(argv, capsys):
    code, _, _ = run(argv, capsys)
    assert code == EXIT_CONFIG


def test_bound_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("WITTGAUSS_BOUND", "64")
    code, out, _ = run(["dh", "--p", "2", "--k", "1", "--n", "1..3", "--s", "1..3"], capsys)
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["conventions"]["bound"] == 64
    assert {"p": 2, "k": 1, "n": 3, "s": 3} in rep["suites"][0]["skipped"]
    monkeypatch.setenv("WITTGAUSS_BOUND", "lots")
    assert run(["dh"], capsys)[0] == EXIT_CONFIG


def test_identity_failure_exits_one(monkeypatch, capsys):
    real = cli.TASKS["dh"]

    def broken(*args):
        cases = real(*args)
        cases[0]["ok"] = False
        return cases

    monkeypatch.setitem(cli.TASKS, "dh", broken)
    code, out, _ = run(["dh", "--p", "2", "--k", "1", "--n", "1", "--s", "2", "--format", "text"], capsys)
    assert code == EXIT_FAIL and "FAIL" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["gauss", "--p", "3", "--k", "1", "--n", "2", "--closed-form", "even"],
        ["gauss", "--p", "2", "--k", "1", "--n", "1..3"],
        ["trace", "--p", "2,3", "--k", "1..3"],
        ["sigma2", "--k", "1..2", "--s", "1..3"],
        ["quadratic", "--p", "3,5", "--k", "1", "--s", "1..2"],
        ["epsilon", "--p", "3", "--k", "1", "--n", "1..2"],
        ["mackey", "--group", "S3"],
        ["euler", "--random", "20"],
        ["interp", "--random", "50", "--seed", "7"],
    ],
)
def test_suites_pass(argv, capsys):
    code, out, _ = run(argv, capsys)
    rep = json.loads(out)
    assert code == EXIT_OK and rep["totals"]["failed"] == 0 and rep["totals"]["cases"] > 0


def test_interp_is_reproducible_by_seed(capsys):
    a = run(["interp", "--random", "40", "--seed", "3"], capsys)[1]
    b = run(["interp", "--random", "40", "--seed", "3"], capsys)[1]
    c = run(["interp", "--random", "40", "--seed", "4"], capsys)[1]
    assert a == b and a != c


def test_workers_do_not_change_output(tmp_path, capsys):
    outs = []
    for w in ("1", "2"):
        path = tmp_path / f"w{w}.json"
        code = main(["dh", "--p", "2,3", "--k", "1", "--n", "1..2", "--s", "1..2", "--workers", w, "--out", str(path)])
        assert code == EXIT_OK
        outs.append(path.read_bytes())
    capsys.readouterr()
    assert outs[0] == outs[1]


def test_digest_values(capsys):
    code, out, _ = run(["dh", "--p", "2", "--k", "1", "--n", "1", "--s", "2", "--values", "digest"], capsys)
    case = json.loads(out)["suites"][0]["cases"][0]
    assert set(case["lhs"]) == {"sha256"} and case["lhs"] == case["rhs"]
