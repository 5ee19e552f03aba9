"""
Report serialization to JSON, CSV and Markdown.

Every number is rounded to 15 significant digits and keys keep a fixed order,
so the same run always produces byte-identical output.
"""

import csv
import io
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np
from jinja2 import Environment, FileSystemLoader

from hvsim.config import CSV_HEADER, REPORT_FORMATS, REPORT_SIGNIFICANT_DIGITS
from hvsim.errors import ConfigurationError
from hvsim.scenarios.base import CheckRecord, ScenarioReport


logger = logging.getLogger(__name__)

TEMPLATES_DIR = os.path.join(os.path.dirname(__file__), "templates")


def format_number(value: float) -> float:
    """Shortest representation capped at 15 significant digits."""
    return float(f"{float(value):.{REPORT_SIGNIFICANT_DIGITS}g}")


def normalize(value: Any) -> Any:
    """Recursively round floats and convert numpy scalars for serialization."""
    if isinstance(value, bool):
        return value
    if isinstance(value, np.ndarray):
        return normalize(value.tolist())
    if isinstance(value, np.generic):
        return normalize(value.item())
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return format_number(value)
    if isinstance(value, dict):
        return {str(k): normalize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [normalize(v) for v in value]
    return value


def check_to_dict(check: CheckRecord) -> Dict[str, Any]:
    return {
        "name": check.name,
        "comparison": check.comparison,
        "expected": normalize(check.expected),
        "observed": normalize(check.observed),
        "tolerance": normalize(check.tolerance),
        "pass": check.passed,
    }


def report_to_dict(report: ScenarioReport, include_duration: bool = False) -> Dict[str, Any]:
    """The report as a plain mapping in the order it is serialized."""
    data: Dict[str, Any] = {
        "scenario": report.scenario,
        "pass": report.passed,
        "inputs": normalize(report.inputs),
        "checks": [check_to_dict(check) for check in report.checks],
        "details": normalize(report.details),
    }
    if include_duration and report.duration is not None:
        data["duration_seconds"] = normalize(report.duration)
    return data


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return repr(normalize(value))


def render_json(report: ScenarioReport, include_duration: bool = False) -> str:
    return json.dumps(report_to_dict(report, include_duration), indent=2) + "\n"


def render_csv(report: ScenarioReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for check in report.checks:
        writer.writerow(
            [
                report.scenario,
                check.name,
                _cell(check.expected),
                _cell(check.observed),
                _cell(check.tolerance),
                _cell(check.passed),
            ]
        )
    return buffer.getvalue()


def render_markdown(report: ScenarioReport, include_duration: bool = False) -> str:
    env = Environment(
        loader=FileSystemLoader(TEMPLATES_DIR), trim_blocks=True, lstrip_blocks=True
    )
    template = env.get_template("report.md.j2")
    return template.render(report=report_to_dict(report, include_duration), cell=_cell)


def render_report(report: ScenarioReport, format: str, include_duration: bool = False) -> str:
    """
    Serialize a report.

    Raises:
        ConfigurationError: If the format is unknown.
    """
    if format == "json":
        return render_json(report, include_duration)
    if format == "csv":
        return render_csv(report)
    if format == "markdown":
        return render_markdown(report, include_duration)
    known = ", ".join(sorted(REPORT_FORMATS))
    raise ConfigurationError(f"Unknown format '{format}'. Known: {known}")


def emit_report(
    report: ScenarioReport,
    format: str,
    path: Optional[Union[str, Path]] = None,
    include_duration: bool = False,
) -> None:
    """
    Write a report to a file, or to stdout when path is None or "-".

    Raises:
        ConfigurationError: If the format is unknown.
        OSError: If the destination cannot be written.
    """
    content = render_report(report, format, include_duration)
    if path is None or str(path) == "-":
        sys.stdout.write(content)
        sys.stdout.flush()
        return

    destination = Path(path)
    destination.write_text(content, encoding="utf-8")
    logger.debug(f"Wrote {format} report to {destination}")
