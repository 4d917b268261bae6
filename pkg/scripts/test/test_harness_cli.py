#!/usr/bin/env python3
"""
Command line, comparison sweeps, figure data and the output writers.
"""

import json
import math
from pathlib import Path

import pytest
from pydantic import ValidationError

from main import cli_main, parse_complex
from src.arithmetic.scaled_complex import ScaledComplex, scaled_rel_error
from src.asymptotics import RegionKind, asymptotic_value, classify_region
from src.managers.output_writer import dumps_json, format_value, read_csv_rows, render_csv
from src.managers.sweep_manager import (
    DEFAULT_N_LIST,
    ErrorReport,
    ErrorRow,
    GridSpec,
    SweepConfig,
    SweepPoint,
    compare_sweep,
    point_clearance,
    representative_points,
)
from src.recurrence.params import RecurrenceParams
from src.recurrence.recurrence_core import eval_pi

REPO_CONFIG = str(Path(__file__).resolve().parents[2] / "config" / "config.json")


def _run(capsys, *argv):
    code = cli_main([argv[0], "--config", REPO_CONFIG, *argv[1:]])
    return code, capsys.readouterr().out


def test_eval_prints_scaled_json(capsys):
    code, out = _run(capsys, "eval", "--d", "1", "--a", "1", "--b", "0", "--n", "100", "--x", "130,0")
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"re", "im", "exp2"}
    value = ScaledComplex.from_json(data)
    expected = eval_pi(RecurrenceParams(1.0, 1.0, 0.0), 130.0, 100).value
    assert scaled_rel_error(value, expected) < 1e-13


def test_eval_family(capsys):
    code, out = _run(capsys, "eval", "--family", "hermite", "--n", "3", "--x", "2")
    assert code == 0
    assert abs(ScaledComplex.from_json(json.loads(out)).to_complex() - 5.0) < 1e-13


def test_asym_prints_branch_parts(capsys):
    code, out = _run(capsys, "asym", "--d", "1", "--a", "1", "--n", "400", "--z", "3")
    assert code == 0
    data = json.loads(out)
    assert data["case"] == "IA"
    assert data["region"]["kind"] == "outer"
    assert data["selected"] == 0
    assert len(data["branch_parts"]) == 2
    assert data["config"]["asymptotics"]["delta"] == 0.1


def test_usage_errors_exit_2(capsys):
    assert cli_main(["eval", "--bogus"]) == 2
    assert cli_main(["transform"]) == 2
    assert _run(capsys, "asym", "--n", "10", "--z", "3")[0] == 2
    # case IA takes --z, not --y
    assert _run(capsys, "asym", "--d", "1", "--a", "1", "--n", "100", "--y", "3")[0] == 2
    assert _run(capsys, "eval", "--d", "1", "--a", "1", "--n", "10", "--x", "1", "--delta", "-1")[0] == 2


def test_numerical_failure_exits_1(capsys):
    code, _ = _run(capsys, "asym", "--d", "1", "--a", "1", "--n", "100", "--z", "2")
    assert code == 1


def test_parse_complex():
    assert parse_complex("3") == 3
    assert parse_complex("-5,0.5") == complex(-5.0, 0.5)
    assert parse_complex("1-2j") == complex(1.0, -2.0)


def test_curve_csv(capsys, tmp_path):
    out = tmp_path / "curve.csv"
    code, _ = _run(capsys, "curve", "--A", "1", "--points", "512", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# config: ")
    assert any(line.startswith("# z_A=") for line in lines)
    rows = read_csv_rows(out)
    assert len(rows) == 1023
    for k in (0, 100, 400):
        assert rows[k][0] == rows[-1 - k][0]
        assert float(rows[k][1]) == -float(rows[-1 - k][1])
    assert abs(float(rows[0][1]) - 2.0) < 1e-9


def test_zeros_json(capsys):
    code, out = _run(capsys, "zeros", "--d", "0", "--a", "0", "--b", "0.25", "--n", "10", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data["zeros"]) == 10
    assert max(data["residuals"]) < 1e-6
    assert data["config"]["oracle"]["mode"] == "auto"
    assert data["config"]["zeros"]["tol"] == 1e-10


def test_curve_json_carries_config(capsys, tmp_path):
    out = tmp_path / "curve.json"
    code, _ = _run(capsys, "curve", "--A", "1", "--points", "64", "--format", "json", "--out", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert len(data["points"]) == 127
    assert data["config"]["curve"]["points"] == 64
    assert data["config"]["oracle"]["mode"] == "auto"


def test_compare_csv_and_json(capsys, tmp_path):
    out = tmp_path / "sweep.csv"
    code, _ = _run(capsys, "compare", "--d", "0", "--a", "0", "--b", "0.25", "--n-list", "10,20",
                   "--x", "0.3", "--x", "2", "--out", str(out))
    assert code == 0
    header = [line for line in out.read_text().splitlines() if not line.startswith("#")][0]
    assert header == "n,re,im,region,rel_error,log_gap,failure"
    rows = read_csv_rows(out)
    assert len(rows) == 4
    assert all(float(row[4]) < 1e-10 for row in rows if row[3] == "oscillatory_bulk")

    code, text = _run(capsys, "compare", "--d", "0", "--a", "0", "--b", "0.25", "--n-list", "10,20",
                      "--x", "0.3", "--format", "json")
    assert code == 0
    data = json.loads(text)
    assert data["case"] == "IIC"
    assert data["n_list"] == [10, 20]
    assert data["config"]["oracle"]["mode"] == "auto"


def test_figure_files(capsys, tmp_path):
    code, out = _run(capsys, "figure", "--d", "1", "--a", "-1", "--n", "40", "--points", "64",
                     "--out", str(tmp_path))
    assert code == 0
    for name in ("curve.csv", "segment.csv", "zeros.csv", "overlay.json"):
        assert (tmp_path / name).is_file()
    assert len(read_csv_rows(tmp_path / "zeros.csv")) == 40
    curve_rows = read_csv_rows(tmp_path / "curve.csv")
    assert abs(complex(float(curve_rows[0][0]), float(curve_rows[0][1])) - 2.0j) < 1e-9
    assert abs(complex(float(curve_rows[-1][0]), float(curve_rows[-1][1])) + 2.0j) < 1e-9
    overlay = json.loads((tmp_path / "overlay.json").read_text())
    assert overlay["n"] == 40
    assert overlay["params"]["case_tag"] == "IB"
    assert overlay["z_A"] < -2.9
    assert len(overlay["zeros"]) == 40
    assert "config" in overlay


def test_figure_rejects_other_cases(capsys, tmp_path):
    code, _ = _run(capsys, "figure", "--d", "1", "--a", "1", "--n", "10", "--out", str(tmp_path))
    assert code == 2


def test_selftest_passes(capsys):
    code, out = _run(capsys, "selftest")
    assert code == 0
    assert "11/11 checks passed" in out
    assert "curve_trace" in out and "y_set_distance" in out


def test_sweep_config_reflects_negative_d():
    config = SweepConfig(d=-1.0, a=1.0, points=[SweepPoint.at(-3.0)])
    assert config.reflected
    assert config.d == 1.0
    assert config.points[0].value == 3.0


def test_sweep_config_validation():
    with pytest.raises(ValidationError):
        SweepConfig(d=1.0, a=1.0, n_list=[400, 100], points=[SweepPoint.at(3.0)])
    with pytest.raises(ValidationError):
        SweepConfig(d=1.0, a=1.0, n_list=[], points=[SweepPoint.at(3.0)])
    with pytest.raises(ValidationError):
        SweepConfig(d=1.0, a=1.0, points=[SweepPoint.at(2.0)])
    with pytest.raises(ValidationError):
        SweepConfig(d=1.0, a=1.0)


def test_sweep_grid_points():
    config = SweepConfig(d=1.0, a=1.0, n_list=[100, 400],
                         grid=GridSpec(region=RegionKind.OSCILLATORY_BULK, count=5))
    assert len(config.points) == 5
    assert all(-1.8 <= p.re <= 1.8 for p in config.points)


def test_representative_points(case_params):
    """Outer points stay put, oscillatory ones move within a small window away from the nodes"""
    params = case_params["IA"]
    points = representative_points(params)
    assert points[0].re == 3.0
    assert abs(points[1].re) <= 0.2 + 1e-12
    assert abs(points[2].re + 5.03) <= 0.2 + 1e-12
    kinds = [RegionKind.OUTER, RegionKind.OSCILLATORY_BULK, RegionKind.OSCILLATORY_LEFT]
    for n in DEFAULT_N_LIST:
        assert [classify_region(params, n, p.value).kind for p in points] == kinds
    for nominal, chosen in zip((0.0, -5.03), points[1:]):
        before = point_clearance(params, SweepPoint.at(nominal), DEFAULT_N_LIST)
        assert point_clearance(params, chosen, DEFAULT_N_LIST) >= before - 1e-9
    mirrored = representative_points(RecurrenceParams(-1.0, 1.0, 0.0))
    assert [p.re for p in mirrored] == [-p.re for p in points]
    curve_point = representative_points(case_params["IB"])[2]
    assert curve_point.region is RegionKind.CURVE_NEIGHBORHOOD


def test_clearance_of_formula_values(case_params):
    params = case_params["IIC"]
    # sin((n + 1) arccos 0) vanishes for odd n
    assert asymptotic_value(params, 9, 0.0).clearance < 1e-12
    assert abs(asymptotic_value(params, 10, 0.0).clearance - 1.0) < 1e-12
    assert asymptotic_value(case_params["IA"], 400, 3.0).clearance == 1.0


def test_sweep_is_deterministic(case_params):
    config = SweepConfig(d=0.0, a=0.0, b=0.25, n_list=[10, 20, 40],
                         points=representative_points(case_params["IIC"], [10, 20, 40]))
    first = compare_sweep(config)
    second = compare_sweep(config, threads=3)
    assert dumps_json(first.to_dict()) == dumps_json(second.to_dict())
    assert not first.violations()
    assert set(first.summary()) == {"outer", "oscillatory_bulk"}


def test_oracle_failures_are_recorded():
    """A point the formula cannot take becomes a failed row, not an exception"""
    config = SweepConfig(d=0.0, a=0.0, b=0.25, n_list=[10],
                         points=[SweepPoint.at(0.5, RegionKind.CURVE_NEIGHBORHOOD)])
    report = compare_sweep(config)
    assert len(report.failures()) == 1
    assert report.rows[0].error is None
    assert report.violations()[0]["reason"] == "failed"


def test_error_report_flags_increase():
    rows = [ErrorRow(n, 1.0 + 0j, "outer", error) for n, error in ((100, 0.01), (400, 0.02))]
    report = ErrorReport(case="IA", n_list=[100, 400], rows=rows)
    assert report.violations()[0]["reason"] == "not monotone"
    assert report.summary() == {"outer": {100: 0.01, 400: 0.02}}


def test_output_formatting():
    assert format_value(0.1) == "0.1"
    assert format_value(None) == ""
    assert format_value(True) == "true"
    assert json.loads(dumps_json({"gap": math.inf, "z": 1 + 2j})) == {"gap": "inf", "z": [1.0, 2.0]}
    text = render_csv(["a", "b"], [[1, 0.25]], {"k": 1}, ["n=3"])
    assert text == '# config: {"k": 1}\n# n=3\na,b\n1,0.25\n'
