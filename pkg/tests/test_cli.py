import csv
import io
import json
from fractions import Fraction

import pytest
from mpmath import mpf

from cli import GRIDS, Instance, SweepReport, format_scalar, parse_scalar, run_sweep, write_csv, write_json
from cli import commands
from cli.commands import BENCH_COLUMNS
from cli.report import CSV_COLUMNS
from closed_forms import ProgressionParams
from errors import ToleranceNotMetError, ValidationError
from main import build_parser, main
from oracle import sum_hp
from settings import DEFAULT_SETTINGS


@pytest.fixture(autouse=True)
def _isolated_cwd(tmp_path, monkeypatch):
    # カレントディレクトリのsettings.tomlを読まないようにする
    monkeypatch.chdir(tmp_path)


def _lines(text):
    return dict(line.split(": ", 1) for line in text.strip().splitlines())


@pytest.mark.parametrize(
    ("argv", "prefix"),
    [
        (["eval", "hp", "--a", "2", "--b", "1", "--k", "1", "--n", "2"], "0.5333333333"),
        (["eval", "hp", "--a", "1", "--b", "0", "--k", "2", "--n", "3", "--method", "sine"], "1.3611111111"),
        (["eval", "polylog", "--k", "1", "--m-re", "-0.69314718055994530942", "--n", "4"], "0.6822916666"),
        (["eval", "lagrange", "--a", "7/10", "--b", "3/10", "--n", "19/10", "--big-k", "6", "--kind", "sin"], "0.97"),
    ],
)
def test_eval(argv, prefix, capsys):
    assert main(argv) == 0
    out = _lines(capsys.readouterr().out)
    assert out["value"].startswith(prefix)
    assert "imag" not in out
    assert float(out["abs_error_estimate"]) >= 0
    assert int(out["panels"]) >= 0


def test_eval_complex(capsys):
    argv = ["eval", "lerch", "--b", "1/2", "--k", "2", "--m-re", "0.5", "--m-im", "0.25", "--n", "5"]
    assert main(argv) == 0
    out = _lines(capsys.readouterr().out)
    assert "imag" in out
    assert int(out["panels"]) > 0


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "hp", "--a", "1", "--b", "-2", "--k", "1", "--n", "3"],
        ["eval", "hp", "--a", "1", "--k", "1", "--n", "3"],
        ["eval", "fourier", "--a", "1", "--b", "0", "--k", "1", "--n", "3", "--m", "0"],
        ["eval", "lagrange", "--a", "5", "--b", "0", "--n", "1", "--big-k", "5"],
        ["eval", "hp", "--a", "x", "--b", "1", "--k", "1", "--n", "3"],
    ],
)
def test_eval_invalid_parameters(argv):
    assert main(argv) == 2


def test_eval_numerical_failure():
    argv = ["eval", "polylog", "--k", "2", "--m-re", "0", "--m-im", "6.283185307179586476925286766559", "--n", "3"]
    assert main(argv) == 3


def test_bad_config(tmp_path):
    config = tmp_path / "bad.toml"
    config.write_text("tolerance = 1\n", encoding="utf-8")
    assert main(["--config", str(config), "eval", "hp", "--a", "1", "--b", "1", "--k", "1", "--n", "1"]) == 2


def test_verify_smoke(tmp_path):
    output = tmp_path / "report.json"
    assert main(["verify", "--grid", "smoke", "--output", str(output)]) == 0
    report = SweepReport.from_json(output.read_text(encoding="utf-8"))
    assert report.summary["count"] == len(GRIDS["smoke"]())
    assert report.summary["failures"] == 0
    assert report.summary["max_rel_error"] <= DEFAULT_SETTINGS.verify_bound
    assert [r.key for r in report.records] == sorted(r.key for r in report.records)


def test_verify_defaults_to_acceptance_grid():
    args = build_parser().parse_args(["verify"])
    assert args.grid == "default"
    assert args.grid_file is None


def test_verify_empty_grid(tmp_path, capsys):
    grid = tmp_path / "grid.json"
    grid.write_text("[]", encoding="utf-8")
    assert main(["verify", "--grid-file", str(grid)]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["records"] == []
    assert data["summary"]["count"] == 0
    assert data["summary"]["failures"] == 0


def test_verify_unit_period_matches_harmonic_oracle(tmp_path, capsys):
    grid = tmp_path / "grid.json"
    instances = [{"quantity": "fourier", "kind": "cos", "a": 1, "b": 0, "k": k, "n": 3, "m": 1} for k in (1, 2, 3)]
    grid.write_text(json.dumps(instances), encoding="utf-8")
    assert main(["verify", "--grid-file", str(grid), "--format", "csv"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 3
    for row in rows:
        k = int(dict(item.split("=") for item in row["params"].split(";"))["k"])
        assert row["oracle"] == format_scalar(sum_hp(ProgressionParams(1, 0, k, 3)))
        assert row["status"] == "ok"


def test_verify_failures_still_report(tmp_path):
    grid = tmp_path / "grid.json"
    instance = {"quantity": "hp", "a": 2, "b": 1, "k": 3, "n": 4, "method": "exp"}
    grid.write_text(json.dumps([instance]), encoding="utf-8")
    output = tmp_path / "report.csv"
    argv = ["verify", "--grid-file", str(grid), "--bound", "1e-60", "--format", "csv", "--output", str(output)]
    assert main(argv) == 1
    rows = list(csv.DictReader(output.read_text(encoding="utf-8").splitlines()))
    assert rows[0]["status"] == "fail"


def test_verify_error_status_counts_as_failure(tmp_path, capsys):
    grid = tmp_path / "grid.json"
    grid.write_text(json.dumps([{"quantity": "polylog", "k": 2, "m": "6.2831853071795864769j", "n": 3}]))
    assert main(["verify", "--grid-file", str(grid)]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["records"][0]["status"] == "error:NearPoleError"


def test_verify_bad_grid_file(tmp_path):
    grid = tmp_path / "grid.json"
    grid.write_text("{not json", encoding="utf-8")
    assert main(["verify", "--grid-file", str(grid)]) == 2


def test_bench_single_row(capsys):
    assert main(["bench", "hp", "--a", "1", "--b", "1", "--k", "2", "--n-list", "100"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 1
    assert tuple(rows[0]) == BENCH_COLUMNS
    row = rows[0]
    assert row["status"] == "ok"
    assert abs(float(row["closed_form_value"]) - float(row["direct_value"])) < 1e-12


BENCH_ARGS = ["bench", "hp", "--a", "1", "--b", "1", "--k", "2"]


def test_bench_closed_form_time_flat_in_n(capsys):
    assert main([*BENCH_ARGS, "--n-list", "10"]) == 0
    capsys.readouterr()
    assert main([*BENCH_ARGS, "--n-list", "100,1000000000"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [row["n"] for row in rows] == ["100", "1000000000"]
    assert all(row["status"] == "ok" for row in rows)
    # 直接和はDIRECT_SUM_LIMITまで
    assert rows[0]["direct_value"] != ""
    assert rows[1]["direct_value"] == ""
    seconds = [float(row["closed_form_seconds"]) for row in rows]
    assert max(seconds) <= 2 * min(seconds)


def test_bench_failed_row_sets_exit_code(capsys, monkeypatch):
    def evaluate(instance, config, trace=None):
        if instance.params["n"] > 10:
            raise ToleranceNotMetError("too slow", None)
        return mpf(1)

    monkeypatch.setattr(commands, "evaluate", evaluate)
    assert main([*BENCH_ARGS, "--n-list", "10,20"]) == 3
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [row["status"] for row in rows] == ["ok", "error:ToleranceNotMetError"]
    assert rows[1]["closed_form_value"] == ""


@pytest.mark.parametrize("exc", [ZeroDivisionError("division by zero"), OverflowError("too large")])
def test_arithmetic_error_recorded_as_row(monkeypatch, exc):
    def evaluate(instance, config, trace=None):
        raise exc

    monkeypatch.setattr(commands, "evaluate", evaluate)
    instance = Instance("hp", {"a": 1, "b": 1, "k": 2, "n": 3}, "exp")
    record = commands.run_instance(instance, DEFAULT_SETTINGS, 1e-10)
    assert record.status == f"error:{type(exc).__name__}"
    assert record.message == str(exc)
    report = run_sweep([instance], DEFAULT_SETTINGS, 1e-10)
    assert report.summary["failures"] == 1


def test_bench_invalid_n_list():
    assert main(["bench", "hp", "--a", "1", "--b", "1", "--k", "2", "--n-list", "0"]) == 2


@pytest.mark.parametrize(
    ("text", "expected"),
    [("3", 3), ("-4", -4), ("7/2", Fraction(7, 2)), ("0.5", Fraction(1, 2)), ("-1e-3", Fraction(-1, 1000))],
)
def test_parse_scalar(text, expected):
    value = parse_scalar(text)
    assert value == expected
    assert type(value) is type(expected)


def test_parse_scalar_constants_and_complex():
    assert abs(parse_scalar("pi") - mpf("3.14159265358979323846")) < 1e-15
    assert parse_scalar("-e") < 0
    assert parse_scalar("0.5+0.25j") == complex(0.5, 0.25)
    with pytest.raises(ValidationError):
        parse_scalar("abc")


def test_instance_validation():
    with pytest.raises(ValidationError):
        Instance("zeta", {})
    with pytest.raises(ValidationError):
        Instance("hp", {"a": 1, "b": 1, "k": 1})
    with pytest.raises(ValidationError):
        Instance("fourier", {"a": 1, "b": 1, "k": 1, "n": 1, "m": 2}, kind="tan")


def test_instance_dict_round_trip():
    instance = Instance("lerch", {"b": Fraction(1, 2), "k": 2, "m": Fraction(-1, 2), "n": 6})
    again = Instance.from_dict(instance.to_dict())
    assert again.key == instance.key
    assert again.params == instance.params


def test_report_json_round_trip():
    instances = [
        Instance.from_dict({"quantity": "hp", "method": "recursive", "a": 1, "b": 1, "k": 2, "n": 3}),
        Instance.from_dict({"quantity": "polylog", "k": 2, "m": "6.2831853071795864769j", "n": 3}),
    ]
    report = run_sweep(instances, DEFAULT_SETTINGS, 1e-9)
    stream = io.StringIO()
    write_json(report, stream)
    again = SweepReport.from_json(stream.getvalue())
    assert again.summary == report.summary
    assert [r.key for r in again.records] == [r.key for r in report.records]
    assert again.records[0].closed_form == report.records[0].closed_form


def test_report_csv_columns():
    report = run_sweep(GRIDS["smoke"]()[:2], DEFAULT_SETTINGS, 1e-9)
    stream = io.StringIO()
    write_csv(report, stream)
    header = stream.getvalue().splitlines()[0]
    assert header == ",".join(CSV_COLUMNS)


def test_parallel_sweep_matches_serial():
    instances = GRIDS["smoke"]()[:3]
    serial = run_sweep(instances, DEFAULT_SETTINGS, 1e-9, jobs=1)
    parallel = run_sweep(instances, DEFAULT_SETTINGS, 1e-9, jobs=2)
    assert [r.key for r in parallel.records] == [r.key for r in serial.records]
    assert [r.closed_form for r in parallel.records] == [r.closed_form for r in serial.records]


def test_rel_error_uses_largest_term_for_cancelling_sum():
    # sin(πj) = 0 なので直接和は0
    instance = Instance("fourier", {"a": 1, "b": 0, "k": 3, "n": 5, "m": 2}, kind="sin")
    record = commands.run_instance(instance, DEFAULT_SETTINGS, 1e-9)
    assert record.status == "ok"
    assert record.abs_error < 1e-12
    assert record.rel_error == record.abs_error


def test_rel_error_relative_to_oracle_for_positive_sum():
    instance = Instance("hp", {"a": 2, "b": 1, "k": 2, "n": 3}, "exp")
    record = commands.run_instance(instance, DEFAULT_SETTINGS, 1e-9)
    oracle = float(sum_hp(ProgressionParams(2, 1, 2, 3)))
    assert record.rel_error == pytest.approx(record.abs_error / oracle)
