"""
Scenario execution.
"""

import logging
import time
from typing import Callable, List, Optional

from hvsim.scenarios.base import ScenarioConfig, ScenarioReport
from hvsim.scenarios.factory import ScenarioFactory


StatusCallback = Callable[..., None]


class ScenarioRunner:
    """Runs one scenario and assembles its report."""

    def __init__(self, config: ScenarioConfig):
        """
        Initialize the runner.

        Args:
            config: The validated scenario configuration.
        """
        self.logger = logging.getLogger(__name__)
        self.config = config

    def get_steps(self) -> List[str]:
        return [
            f"Preparing scenario {self.config.scenario}",
            f"Running {self.config.sample_count} samples",
            "Assembling report",
        ]

    def execute(
        self, status_updater_callback: Optional[StatusCallback] = None
    ) -> ScenarioReport:
        """
        Execute the scenario.

        Args:
            status_updater_callback: Optional callback with signature
                (step_description: str, status: str, current_step: int, total_steps: int)

        Returns:
            The report; failed checks are recorded in it, not raised.
        """
        steps = self.get_steps()
        total_steps = len(steps)

        def update_status(index: int, status: str) -> None:
            if status_updater_callback:
                status_updater_callback(
                    step_description=steps[index],
                    status=status,
                    current_step=index + 1,
                    total_steps=total_steps,
                )

        started = time.perf_counter()

        update_status(0, "Starting")
        scenario = ScenarioFactory.create_scenario(self.config)
        update_status(0, "Completed")

        update_status(1, "In progress")
        self.logger.debug(f"Running scenario {self.config.scenario} with seed {self.config.seed}")
        outcome = scenario.run()
        update_status(1, "Completed")

        update_status(2, "In progress")
        report = ScenarioReport(
            scenario=self.config.scenario,
            inputs={
                "seed": self.config.seed,
                "sample_count": self.config.sample_count,
                "threads": self.config.threads,
                "options": dict(sorted(self.config.options.items())),
                "tolerances": self.config.resolved_tolerances,
            },
            checks=outcome.checks,
            details=outcome.details,
            duration=time.perf_counter() - started,
        )
        update_status(2, "Completed")

        for check in report.failed_checks:
            self.logger.warning(
                f"Check failed: {check.name} (expected {check.expected}, observed {check.observed})"
            )
        self.logger.debug(
            f"Scenario {report.scenario} finished in {report.duration:.3f}s, passed={report.passed}"
        )
        return report


def run_scenario(
    config: ScenarioConfig, status_updater_callback: Optional[StatusCallback] = None
) -> ScenarioReport:
    """Run the scenario named by config and return its report."""
    return ScenarioRunner(config).execute(status_updater_callback)
