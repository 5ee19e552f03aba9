"""
Typer-based CLI application for hvsim.

    hvsim <scenario> [--seed N] [--samples N] [--tol name=value ...]
          [--format json|csv|markdown] [--out PATH] [--threads N] [--config PATH]

Exit codes: 0 when every check passes, 1 when a check fails, 2 on a usage or
configuration error.
"""

import json
import logging
import traceback
from pathlib import Path
from typing import Any, Dict, List, Optional

import typer
import yaml
from rich.logging import RichHandler

from hvsim import __version__
from hvsim.config import (
    CONFIG_FILE_KEYS,
    DEFAULT_REPORT_FORMAT,
    DEFAULT_SEED,
    DEFAULT_THREADS,
    YAML_EXTENSIONS,
)
from hvsim.errors import ConfigurationError, InvalidArgumentError
from hvsim.report_writer import emit_report
from hvsim.scenarios.base import ScenarioConfig
from hvsim.scenarios.factory import ScenarioFactory
from hvsim.scenarios.runner import ScenarioRunner
from hvsim.cli.formatters import (
    console,
    format_check_table,
    format_error,
    format_header,
    format_info,
    format_scenario_list,
    format_success,
    format_warning,
)
from hvsim.cli.progress import create_spinner, create_status_updater


EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

app = typer.Typer(
    help="Run hidden-variables CHSH scenarios and report pass/fail verdicts",
    add_completion=False,
)


_app_logger = logging.getLogger("hvsim")


def setup_logging(verbose: bool) -> logging.Logger:
    level = logging.DEBUG if verbose else logging.WARNING

    for h in _app_logger.handlers[:]:
        _app_logger.removeHandler(h)
        h.close()

    new_handler = RichHandler(
        level=level,
        console=console,
        rich_tracebacks=True,
        markup=False,
        show_path=verbose,
        log_time_format="[%X]",
    )

    _app_logger.addHandler(new_handler)
    _app_logger.setLevel(level)
    _app_logger.propagate = False

    return _app_logger


def load_config_file(path: Path) -> Dict[str, Any]:
    """
    Read a JSON config file, or YAML for .yaml/.yml.

    Raises:
        ConfigurationError: If the file cannot be read or parsed, is not a
            mapping or has unknown keys.
    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigurationError(f"Cannot read config file {path}: {e}") from e

    try:
        if path.suffix.lower() in YAML_EXTENSIONS:
            data = yaml.safe_load(text)
        else:
            data = json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise ConfigurationError(f"Cannot parse config file {path}: {e}") from e

    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigurationError(f"Config file {path} must contain a mapping")
    unknown = sorted(set(data) - CONFIG_FILE_KEYS)
    if unknown:
        raise ConfigurationError(f"Unknown config keys in {path}: {', '.join(unknown)}")
    return data


def parse_tolerances(entries: List[str]) -> Dict[str, float]:
    """
    Parse name=value tolerance overrides.

    Args:
        entries: Strings of the form name=value.

    Returns:
        Tolerance names mapped to values.
    """
    tolerances: Dict[str, float] = {}
    for entry in entries:
        name, sep, value = entry.partition("=")
        if not sep or not name.strip():
            raise ConfigurationError(f"Tolerance must look like name=value, got '{entry}'")
        try:
            tolerances[name.strip()] = float(value)
        except ValueError:
            raise ConfigurationError(f"Tolerance '{name}' has a non-numeric value '{value}'") from None
    return tolerances


def build_config(file_values: Dict[str, Any], cli_values: Dict[str, Any]) -> ScenarioConfig:
    """Merge config-file values with command-line values; the command line wins."""
    merged = dict(file_values)
    for key, value in cli_values.items():
        if value is None:
            continue
        if key == "tol":
            merged["tol"] = {**dict(merged.get("tol") or {}), **value}
        else:
            merged[key] = value

    if not merged.get("scenario"):
        raise ConfigurationError("No scenario given. Use --list to see the available scenarios.")
    tol = merged.get("tol") or {}
    if not isinstance(tol, dict):
        raise ConfigurationError("'tol' must be a mapping of tolerance names to values")
    options = merged.get("options") or {}
    if not isinstance(options, dict):
        raise ConfigurationError("'options' must be a mapping")

    try:
        return ScenarioConfig(
            scenario=str(merged["scenario"]),
            seed=merged.get("seed", DEFAULT_SEED),
            sample_count=merged.get("samples"),
            tolerances={str(k): float(v) for k, v in tol.items()},
            output_format=str(merged.get("format", DEFAULT_REPORT_FORMAT)),
            output_path=None if merged.get("out") is None else str(merged["out"]),
            threads=merged.get("threads", DEFAULT_THREADS),
            options=options,
            timing=False if merged.get("timing") is None else merged["timing"],
        )
    except (TypeError, ValueError) as e:
        raise ConfigurationError(f"Invalid configuration value: {e}") from e


@app.command()
def main(
    scenario: Optional[str] = typer.Argument(
        None, help="Scenario to run (see --list)."
    ),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for every random stream."),
    samples: Optional[int] = typer.Option(
        None, "--samples", help="Sample count (scenario default if omitted)."
    ),
    tol: Optional[List[str]] = typer.Option(
        None, "--tol", help="Tolerance override name=value; repeatable."
    ),
    output_format: Optional[str] = typer.Option(
        None, "--format", help="Report format: json, csv or markdown.", case_sensitive=False
    ),
    out: Optional[str] = typer.Option(
        None, "--out", help="Report destination (stdout if omitted or '-')."
    ),
    threads: Optional[int] = typer.Option(
        None, "--threads", help="Worker threads for scans and restarts."
    ),
    config_path: Optional[Path] = typer.Option(
        None, "--config", help="JSON or YAML file with the same keys; flags override it."
    ),
    timing: Optional[bool] = typer.Option(
        None, "--timing/--no-timing", help="Include wall-clock duration in the report."
    ),
    list_scenarios: bool = typer.Option(
        False, "--list", help="List the available scenarios and exit."
    ),
    verbose: bool = typer.Option(
        False, "--verbose", "-v", help="Increase output verbosity."
    ),
    version: bool = typer.Option(
        False, "--version", "-V", help="Show version and exit.", is_eager=True
    ),
):
    logger = setup_logging(verbose)

    if version:
        console.print(f"hvsim {__version__}")
        raise typer.Exit(EXIT_OK)

    if list_scenarios:
        format_scenario_list(ScenarioFactory.available())
        raise typer.Exit(EXIT_OK)

    try:
        file_values = load_config_file(config_path) if config_path else {}
        config = build_config(
            file_values,
            {
                "scenario": scenario,
                "seed": seed,
                "samples": samples,
                "tol": parse_tolerances(tol) if tol else None,
                "format": output_format.lower() if output_format else None,
                "out": out,
                "threads": threads,
                "timing": timing,
            },
        )
        logger.debug(f"Resolved configuration: {config}")

        format_header(f"hvsim {config.scenario}", ScenarioFactory.available()[config.scenario])

        with create_spinner(f"Running scenario {config.scenario}...") as spinner:
            report = ScenarioRunner(config).execute(create_status_updater(spinner))

        emit_report(report, config.output_format, config.output_path, config.timing)
    except typer.Exit:
        raise
    except (ConfigurationError, InvalidArgumentError) as e:
        format_error(f"Invalid configuration: {e}")
        if verbose:
            format_error(traceback.format_exc())
        raise typer.Exit(code=EXIT_USAGE)
    except OSError as e:
        format_error(f"Cannot write report: {e}")
        if verbose:
            format_error(traceback.format_exc())
        raise typer.Exit(code=EXIT_USAGE)
    except Exception as e:
        format_error(f"An unexpected error occurred: {e}")
        if verbose:
            format_error(traceback.format_exc())
        else:
            format_info("Run with --verbose for more detailed error information.")
        raise typer.Exit(code=EXIT_USAGE)

    format_check_table(report)
    if config.output_path and config.output_path != "-":
        format_info(f"Report written to {config.output_path}")

    if report.passed:
        format_success(f"All {len(report.checks)} checks passed")
        raise typer.Exit(EXIT_OK)

    format_warning(f"{len(report.failed_checks)} of {len(report.checks)} checks failed")
    raise typer.Exit(EXIT_CHECK_FAILED)
