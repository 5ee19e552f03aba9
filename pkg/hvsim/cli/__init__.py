"""
CLI components for the hvsim tool.

This package contains modules for console output using the Rich library and
Typer for command-line argument parsing.
"""

from hvsim.cli.formatters import (
    format_check_table,
    format_error,
    format_header,
    format_info,
    format_scenario_list,
    format_success,
    format_warning,
)
from hvsim.cli.progress import create_spinner, create_status_updater
from hvsim.cli.app import app

__all__ = [
    "format_check_table",
    "format_error",
    "format_header",
    "format_info",
    "format_scenario_list",
    "format_success",
    "format_warning",
    "create_spinner",
    "create_status_updater",
    "app",
]
