"""
Formatters module for console output.

Everything here prints to the error stream so that reports written to stdout
stay machine readable.
"""

from typing import Dict, Optional

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from hvsim.scenarios.base import ScenarioReport


console = Console(stderr=True)


def format_header(title: str, subtitle: Optional[str] = None) -> None:
    """
    Format and print a header with an optional subtitle.

    Args:
        title: The main title text.
        subtitle: Optional subtitle text.
    """
    console.print(
        Panel.fit(
            f"[bold blue]{title}[/bold blue]"
            + (f"\n[italic]{subtitle}[/italic]" if subtitle else ""),
            border_style="blue",
        )
    )


def format_success(message: str) -> None:
    console.print(f"[bold green]✓ {message}[/bold green]")


def format_warning(message: str) -> None:
    console.print(f"[bold yellow]⚠ {message}[/bold yellow]")


def format_error(message: str) -> None:
    console.print(f"[bold red]✗ {message}[/bold red]")


def format_info(message: str) -> None:
    console.print(f"[blue]ℹ {message}[/blue]")


def format_scenario_list(scenarios: Dict[str, str]) -> None:
    """
    Print the available scenarios and their descriptions.

    Args:
        scenarios: Scenario names mapped to descriptions.
    """
    table = Table(title="Scenarios", show_header=False, box=box.SIMPLE)
    table.add_column("Scenario", style="cyan")
    table.add_column("Description", style="white")
    for name, description in scenarios.items():
        table.add_row(name, description)
    console.print(table)


def format_check_table(report: ScenarioReport) -> None:
    """
    Print one row per check with its verdict.

    Args:
        report: The scenario report.
    """
    table = Table(title=f"Scenario {report.scenario}", box=box.SIMPLE)
    table.add_column("Check", style="cyan")
    table.add_column("Expected", justify="right")
    table.add_column("Observed", justify="right")
    table.add_column("Tolerance", justify="right")
    table.add_column("Result")

    for check in report.checks:
        verdict = "[green]pass[/green]" if check.passed else "[red]FAIL[/red]"
        table.add_row(
            check.name,
            f"{check.expected:.12g}" if not isinstance(check.expected, bool) else str(check.expected),
            f"{check.observed:.12g}" if not isinstance(check.observed, bool) else str(check.observed),
            f"{check.tolerance:.3g}",
            verdict,
        )

    console.print()
    console.print(table)
