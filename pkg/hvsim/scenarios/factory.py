"""
Scenario factory module for creating scenarios by name.
"""

from typing import Dict, Type

from hvsim.errors import ConfigurationError
from hvsim.scenarios.base import Scenario, ScenarioConfig
from hvsim.scenarios.saturation import (
    NormScanScenario,
    PureCriterionScenario,
    SingletMaxScenario,
    WernerScenario,
)
from hvsim.scenarios.separable import (
    FactoredScenario,
    MixedEkertScenario,
    SeparableMaxScenario,
)
from hvsim.scenarios.single_spin import LinearityFailureScenario, VerifyD2Scenario
from hvsim.scenarios.two_paths import BellOriginalScenario, ChshPathsScenario


class ScenarioFactory:
    """Factory for creating scenarios."""

    scenarios: Dict[str, Type[Scenario]] = {
        scenario.name: scenario
        for scenario in (
            VerifyD2Scenario,
            LinearityFailureScenario,
            ChshPathsScenario,
            BellOriginalScenario,
            FactoredScenario,
            SingletMaxScenario,
            SeparableMaxScenario,
            MixedEkertScenario,
            WernerScenario,
            NormScanScenario,
            PureCriterionScenario,
        )
    }

    @classmethod
    def create_scenario(cls, config: ScenarioConfig) -> Scenario:
        """
        Create a scenario instance for a configuration.

        Args:
            config: The validated scenario configuration.

        Returns:
            The scenario, ready to run.

        Raises:
            ConfigurationError: If the scenario name is unknown.
        """
        if config.scenario not in cls.scenarios:
            raise ConfigurationError(f"Unknown scenario: {config.scenario}")
        return cls.scenarios[config.scenario](config)

    @classmethod
    def available(cls) -> Dict[str, str]:
        """Scenario names mapped to their one-line descriptions."""
        return {name: scenario.description for name, scenario in cls.scenarios.items()}
