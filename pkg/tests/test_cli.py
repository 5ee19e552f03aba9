import csv
import json

import pytest
import yaml
from typer.testing import CliRunner

from hvsim import __version__
from hvsim.cli.app import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, app, build_config, parse_tolerances
from hvsim.errors import ConfigurationError


runner = CliRunner()


def invoke(*args):
    return runner.invoke(app, [str(a) for a in args])


def test_version():
    result = invoke("--version")
    assert result.exit_code == EXIT_OK
    assert __version__ in result.output


def test_list():
    result = invoke("--list")
    assert result.exit_code == EXIT_OK
    assert "chsh-paths" in result.output


def test_json_report(tmp_path):
    out = tmp_path / "paths.json"
    result = invoke("chsh-paths", "--samples", 20, "--seed", 3, "--out", out)
    assert result.exit_code == EXIT_OK, result.output
    data = json.loads(out.read_text())
    assert data["scenario"] == "chsh-paths"
    assert data["pass"] is True
    assert data["inputs"]["seed"] == 3
    assert data["inputs"]["sample_count"] == 20
    assert "duration_seconds" not in data


def test_timing_flag(tmp_path):
    out = tmp_path / "paths.json"
    result = invoke("chsh-paths", "--samples", 5, "--timing", "--out", out)
    assert result.exit_code == EXIT_OK
    assert json.loads(out.read_text())["duration_seconds"] >= 0.0


def test_same_seed_same_bytes(tmp_path):
    first = tmp_path / "first.json"
    second = tmp_path / "second.json"
    invoke("bell-original", "--samples", 50, "--out", first)
    invoke("bell-original", "--samples", 50, "--out", second)
    assert first.read_bytes() == second.read_bytes()


def test_thread_count_does_not_change_report(tmp_path):
    serial = tmp_path / "serial.json"
    parallel = tmp_path / "parallel.json"
    invoke("bell-original", "--samples", 50, "--out", serial)
    invoke("bell-original", "--samples", 50, "--threads", 2, "--out", parallel)
    serial_data = json.loads(serial.read_text())
    parallel_data = json.loads(parallel.read_text())
    serial_data["inputs"].pop("threads")
    parallel_data["inputs"].pop("threads")
    assert serial_data == parallel_data


def test_csv_report(tmp_path):
    out = tmp_path / "norm.csv"
    result = invoke("norm-scan", "--samples", 20, "--format", "csv", "--out", out)
    assert result.exit_code == EXIT_OK
    rows = list(csv.reader(out.open()))
    assert rows[0][0] == "scenario"
    assert all(row[-1] == "true" for row in rows[1:])


def test_markdown_report(tmp_path):
    out = tmp_path / "norm.md"
    result = invoke("norm-scan", "--samples", 20, "--format", "markdown", "--out", out)
    assert result.exit_code == EXIT_OK
    assert "**Result:** PASS" in out.read_text()


def test_failed_check_exit_code(tmp_path):
    out = tmp_path / "d2.json"
    result = invoke("verify-d2", "--samples", 2, "--tol", "quadrature=1e-15", "--out", out)
    assert result.exit_code == EXIT_CHECK_FAILED
    assert json.loads(out.read_text())["pass"] is False


@pytest.mark.parametrize(
    "args",
    [
        [],
        ["teleport"],
        ["chsh-paths", "--samples", "0"],
        ["chsh-paths", "--threads", "0"],
        ["chsh-paths", "--format", "xml"],
        ["chsh-paths", "--tol", "bound"],
        ["chsh-paths", "--tol", "bound=abc"],
        ["chsh-paths", "--tol", "loose=0.1"],
        ["chsh-paths", "--tol", "exact=-1"],
    ],
)
def test_usage_errors(args):
    assert invoke(*args).exit_code == EXIT_USAGE


def test_unwritable_output(tmp_path):
    out = tmp_path / "missing" / "report.json"
    assert invoke("chsh-paths", "--samples", 5, "--out", out).exit_code == EXIT_USAGE


def test_yaml_config(tmp_path):
    out = tmp_path / "report.json"
    config = tmp_path / "run.yaml"
    config.write_text(
        yaml.safe_dump(
            {
                "scenario": "werner",
                "samples": 1,
                "seed": 11,
                "tol": {"werner": 1e-4},
                "options": {"werner_p": [0.5, 1.0]},
                "out": str(out),
            }
        )
    )
    result = invoke("--config", config)
    assert result.exit_code == EXIT_OK, result.output
    data = json.loads(out.read_text())
    assert data["inputs"]["seed"] == 11
    assert data["inputs"]["tolerances"]["werner"] == 1e-4
    assert data["inputs"]["options"] == {"werner_p": [0.5, 1.0]}


def test_command_line_overrides_json_config(tmp_path):
    out = tmp_path / "report.json"
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"scenario": "chsh-paths", "samples": 5, "seed": 1, "out": str(out)}))
    result = invoke("--config", config, "--seed", 2, "--tol", "bound=1e-6")
    assert result.exit_code == EXIT_OK
    data = json.loads(out.read_text())
    assert data["inputs"]["seed"] == 2
    assert data["inputs"]["tolerances"]["bound"] == 1e-6


@pytest.mark.parametrize(
    "content, suffix",
    [
        ('{"scenario": "chsh-paths", "color": "red"}', ".json"),
        ("{not json", ".json"),
        ("- just\n- a list\n", ".yaml"),
    ],
)
def test_bad_config_file(tmp_path, content, suffix):
    config = tmp_path / f"run{suffix}"
    config.write_text(content)
    assert invoke("--config", config).exit_code == EXIT_USAGE


def test_missing_config_file(tmp_path):
    assert invoke("--config", tmp_path / "absent.json").exit_code == EXIT_USAGE


def test_parse_tolerances():
    assert parse_tolerances(["bound=1e-6", " exact = 1e-13"]) == {"bound": 1e-6, "exact": 1e-13}
    with pytest.raises(ConfigurationError):
        parse_tolerances(["=1"])


@pytest.mark.parametrize(
    "file_values",
    [
        {"scenario": "chsh-paths", "timing": "false"},
        {"scenario": "chsh-paths", "timing": 1},
        {"scenario": "chsh-paths", "samples": 2.7},
        {"scenario": "chsh-paths", "threads": 1.5},
    ],
)
def test_build_config_rejects_loose_types(file_values):
    with pytest.raises(ConfigurationError):
        build_config(file_values, {})


def test_build_config_reads_boolean_timing():
    assert build_config({"scenario": "chsh-paths", "timing": True}, {}).timing is True
    assert build_config({"scenario": "chsh-paths", "timing": False}, {}).timing is False
    assert build_config({"scenario": "chsh-paths", "timing": True}, {"timing": False}).timing is False


def test_yaml_string_timing_is_a_usage_error(tmp_path):
    config = tmp_path / "run.yaml"
    config.write_text("scenario: chsh-paths\nsamples: 5\ntiming: 'false'\n")
    assert invoke("--config", config).exit_code == EXIT_USAGE
