import csv
import io
import json
import math

import pytest

import blueprints.verify
from app import main
from models import VerificationReport


def parse_lines(output):
    values = {}
    for line in output.splitlines():
        key, sep, value = line.partition(": ")
        if sep:
            values[key] = value
    return values


def test_sweep_writes_csv(runner):
    result = runner.invoke(
        args=["sweep", "--state", "ghz", "--measure", "fidelity", "--gamma", "0:0.2:0.1"]
    )
    assert result.exit_code == 0, result.output
    rows = list(csv.DictReader(io.StringIO(result.output)))
    assert [row["gamma"] for row in rows] == ["0", "0.1", "0.2"]
    assert float(rows[0]["value_numeric"]) == pytest.approx(1.0)


def test_sweep_json_output(runner):
    result = runner.invoke(
        args=[
            "sweep", "--state", "w", "--measure", "negativity", "--measure", "mi-ab",
            "--gamma", "0.5", "--format", "json",
        ]
    )
    assert result.exit_code == 0, result.output
    rows = json.loads(result.output)
    assert [row["measure"] for row in rows] == ["mi_ab", "negativity"]


def test_sweep_writes_to_file(runner, tmp_path):
    path = tmp_path / "out.csv"
    result = runner.invoke(
        args=["sweep", "--state", "w", "--measure", "fidelity", "--gamma", "0:0.3:0.1",
              "--out", str(path)]
    )
    assert result.exit_code == 0, result.output
    assert len(path.read_text(encoding="utf-8").splitlines()) == 5


def test_sweep_printed_mode_via_alias(runner):
    result = runner.invoke(
        args=["sweep", "--state", "ghz", "--measure", "fidelity", "--gamma", "0.5",
              "--closed-form", "paper"]
    )
    assert result.exit_code == 0, result.output
    row = next(csv.DictReader(io.StringIO(result.output)))
    assert row["value_numeric"] == ""
    assert row["value_closed"] != ""


def test_flags_override_config_file(runner, tmp_path):
    config = tmp_path / "sweep.conf"
    config.write_text(
        "# fidelity only\nstate = w\nmeasure = fidelity\ngamma = 0:0.1:0.1\nclosed-form = numeric\n",
        encoding="utf-8",
    )
    result = runner.invoke(args=["sweep", "--config", str(config), "--state", "ghz"])
    assert result.exit_code == 0, result.output
    rows = list(csv.DictReader(io.StringIO(result.output)))
    assert len(rows) == 2
    assert {row["kind"] for row in rows} == {"ghz"}
    assert {row["value_closed"] for row in rows} == {""}


def test_sweep_is_deterministic_across_workers(runner):
    args = ["sweep", "--state", "w", "--measure", "all", "--gamma", "0:0.6:0.2"]
    serial = runner.invoke(args=args + ["--workers", "1"])
    parallel = runner.invoke(args=args + ["--workers", "3"])
    assert serial.exit_code == parallel.exit_code == 0
    assert serial.output == parallel.output


def test_sweep_without_state_is_a_usage_error(runner):
    result = runner.invoke(args=["sweep", "--measure", "fidelity", "--gamma", "0.5"])
    assert result.exit_code == 1
    assert "state" in result.output


def test_sweep_with_bad_grid(runner):
    result = runner.invoke(args=["sweep", "--state", "w", "--gamma", "1:0:0.1"])
    assert result.exit_code == 1


def test_threshold_command(runner):
    result = runner.invoke(args=["threshold", "--tol", "1e-3"])
    assert result.exit_code == 0, result.output
    values = parse_lines(result.output)
    assert float(values["gamma_star"]) == pytest.approx(math.asinh(1.0), abs=2e-3)
    assert values["reported_value"] == "0.783000000"
    assert float(values["sign_change_value"]) == pytest.approx(math.asinh(1.0), abs=1e-9)
    assert "gap gamma_star-reported_value" in values


def test_threshold_refuses_ghz(runner):
    result = runner.invoke(args=["threshold", "--state", "ghz"])
    assert result.exit_code == 1


def test_verify_command(runner):
    result = runner.invoke(args=["verify", "--gamma", "0.5"])
    assert result.exit_code == 0, result.output
    values = parse_lines(result.output)
    assert values["status"] == "ok"
    assert values["warnings"] == "0"
    assert float(values["gain"]) == pytest.approx(math.cosh(0.5) ** 2)


def test_verify_reports_capped_cutoff(app):
    app.config["MAX_TRUNCATION"] = 40
    result = app.test_cli_runner().invoke(args=["verify", "--gamma", "1.9"])
    assert result.exit_code == 0, result.output
    assert "warnings: 1" in result.output
    assert "status: ok" in result.output


def test_gamma_command(runner):
    omega = math.log(2) / math.pi
    result = runner.invoke(args=["gamma", "--omega", str(omega), "--lambda", "3"])
    assert result.exit_code == 0, result.output
    values = parse_lines(result.output)
    assert float(values["a"]) == pytest.approx(1.0)
    assert float(values["gamma"]) == pytest.approx(math.atanh(0.5), abs=1e-9)


def test_gamma_command_rejects_bad_frequency(runner):
    result = runner.invoke(args=["gamma", "--omega", "0", "--lambda", "3"])
    assert result.exit_code == 1


def test_audit_command(runner):
    result = runner.invoke(args=["audit", "--gamma", "0.5"])
    assert result.exit_code == 0, result.output
    assert "fidelity ghz" in result.output
    assert "lambda_0- w vs min PT eigenvalue" in result.output
    assert "=" * 60 in result.output


def test_main_success(capsys):
    assert main(["gamma", "--omega", "1", "--lambda", "3"]) == 0
    assert "gamma:" in capsys.readouterr().out


def test_main_usage_errors_exit_one():
    assert main(["sweep", "--state", "bell"]) == 1
    assert main(["sweep", "--measure", "fidelity"]) == 1
    assert main(["no-such-command"]) == 1


def test_main_verification_failure_exits_two(monkeypatch):
    def failing_report(gamma, **kwargs):
        return VerificationReport(
            gamma=gamma,
            truncation=5,
            tail_bound=1e-12,
            tail_tol=1e-12,
            gain=1.0,
            completeness_defect=0.0,
            full_defect=0.0,
            choi_min_eigenvalue=-1.0,
        )

    monkeypatch.setattr(blueprints.verify, "verify_channel", failing_report)
    assert main(["verify", "--gamma", "0.5"]) == 2


def test_main_io_error_exits_three(tmp_path):
    out = tmp_path / "missing" / "out.csv"
    code = main(
        ["sweep", "--state", "ghz", "--measure", "fidelity", "--gamma", "0.1", "--out", str(out)]
    )
    assert code == 3


def test_main_missing_config_file_exits_one(tmp_path):
    assert main(["sweep", "--config", str(tmp_path / "absent.conf")]) == 1


def test_main_gamma_beyond_the_limit_exits_one():
    assert main(["sweep", "--state", "ghz", "--measure", "fidelity", "--gamma", "400"]) == 1
    assert main(["verify", "--gamma", "400"]) == 1
    assert main(["audit", "--gamma", "400"]) == 1
