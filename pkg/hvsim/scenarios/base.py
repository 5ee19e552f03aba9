"""
Base types for scenarios: configuration, check records, reports and the
abstract scenario.
"""

import logging
import math
import numbers
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, ClassVar, Dict, List, Optional, Sequence, TypeVar, Union

import numpy as np

from hvsim.config import (
    DEFAULT_REPORT_FORMAT,
    DEFAULT_SEED,
    DEFAULT_THREADS,
    DEFAULT_TOLERANCES,
    REPORT_FORMATS,
    SCENARIO_DEFAULTS,
)
from hvsim.errors import ConfigurationError
from hvsim.sampling import task_rng


T = TypeVar("T")
R = TypeVar("R")

CheckValue = Union[float, bool]


def whole_number(name: str, value: Any) -> int:
    """An integral value as int; bools and fractional numbers are rejected."""
    if isinstance(value, bool):
        raise ConfigurationError(f"{name} must be an integer, got {value!r}")
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, numbers.Real) and float(value).is_integer():
        return int(value)
    raise ConfigurationError(f"{name} must be an integer, got {value!r}")


@dataclass
class ScenarioConfig:
    """
    Everything that determines one scenario run.

    sample_count defaults to the scenario's entry in SCENARIO_DEFAULTS;
    tolerances holds overrides of DEFAULT_TOLERANCES by name.
    """

    scenario: str
    seed: int = DEFAULT_SEED
    sample_count: Optional[int] = None
    tolerances: Dict[str, float] = field(default_factory=dict)
    output_format: str = DEFAULT_REPORT_FORMAT
    output_path: Optional[str] = None
    threads: int = DEFAULT_THREADS
    options: Dict[str, Any] = field(default_factory=dict)
    timing: bool = False

    def __post_init__(self) -> None:
        if self.scenario not in SCENARIO_DEFAULTS:
            known = ", ".join(sorted(SCENARIO_DEFAULTS))
            raise ConfigurationError(f"Unknown scenario '{self.scenario}'. Known: {known}")
        if self.sample_count is None:
            self.sample_count = SCENARIO_DEFAULTS[self.scenario]
        self.sample_count = whole_number("sample_count", self.sample_count)
        if self.sample_count < 1:
            raise ConfigurationError(f"sample_count must be at least 1, got {self.sample_count}")
        self.seed = whole_number("seed", self.seed)
        if self.seed < 0:
            raise ConfigurationError(f"seed must be non-negative, got {self.seed}")
        for name, value in self.tolerances.items():
            if name not in DEFAULT_TOLERANCES:
                known = ", ".join(sorted(DEFAULT_TOLERANCES))
                raise ConfigurationError(f"Unknown tolerance '{name}'. Known: {known}")
            if not value > 0.0 or not math.isfinite(value):
                raise ConfigurationError(f"Tolerance '{name}' must be positive, got {value}")
        if self.output_format not in REPORT_FORMATS:
            known = ", ".join(sorted(REPORT_FORMATS))
            raise ConfigurationError(f"Unknown format '{self.output_format}'. Known: {known}")
        self.threads = whole_number("threads", self.threads)
        if self.threads < 1:
            raise ConfigurationError(f"threads must be at least 1, got {self.threads}")
        if not isinstance(self.timing, bool):
            raise ConfigurationError(f"timing must be true or false, got {self.timing!r}")

    def tolerance(self, name: str) -> float:
        return float(self.tolerances.get(name, DEFAULT_TOLERANCES[name]))

    @property
    def resolved_tolerances(self) -> Dict[str, float]:
        return {name: self.tolerance(name) for name in sorted(DEFAULT_TOLERANCES)}


@dataclass(frozen=True)
class CheckRecord:
    """
    One verified claim: expected value, observed value, tolerance and verdict.

    comparison is one of "close" (|observed - expected| <= tolerance),
    "at_most" (observed <= expected + tolerance), "greater" (observed >
    expected + tolerance) and "flag" (observed is True).
    """

    name: str
    expected: CheckValue
    observed: CheckValue
    tolerance: float
    passed: bool
    comparison: str = "close"

    @classmethod
    def close(cls, name: str, expected: float, observed: float, tolerance: float) -> "CheckRecord":
        passed = bool(abs(float(observed) - float(expected)) <= tolerance)
        return cls(name, float(expected), float(observed), tolerance, passed, "close")

    @classmethod
    def at_most(cls, name: str, bound: float, observed: float, tolerance: float) -> "CheckRecord":
        passed = bool(float(observed) <= float(bound) + tolerance)
        return cls(name, float(bound), float(observed), tolerance, passed, "at_most")

    @classmethod
    def greater(cls, name: str, bound: float, observed: float, tolerance: float = 0.0) -> "CheckRecord":
        passed = bool(float(observed) > float(bound) + tolerance)
        return cls(name, float(bound), float(observed), tolerance, passed, "greater")

    @classmethod
    def flag(cls, name: str, observed: bool) -> "CheckRecord":
        return cls(name, True, bool(observed), 0.0, bool(observed), "flag")


@dataclass
class ScenarioReport:
    """The outcome of one scenario run."""

    scenario: str
    inputs: Dict[str, Any]
    checks: List[CheckRecord] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)
    duration: Optional[float] = None

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failed_checks(self) -> List[CheckRecord]:
        return [check for check in self.checks if not check.passed]


@dataclass
class ScenarioOutcome:
    """What a scenario hands back to the runner."""

    checks: List[CheckRecord] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)


class Scenario(ABC):
    """Abstract base class for scenarios."""

    name: ClassVar[str]
    description: ClassVar[str]

    def __init__(self, config: ScenarioConfig):
        self.logger = logging.getLogger(__name__)
        self.config = config

    @property
    def samples(self) -> int:
        return self.config.sample_count

    def tol(self, name: str) -> float:
        return self.config.tolerance(name)

    def rng(self, *key: int) -> np.random.Generator:
        """The stream of the task addressed by key."""
        return task_rng(self.config.seed, *key)

    def option(self, name: str, default: Any) -> Any:
        return self.config.options.get(name, default)

    def map_tasks(self, func: Callable[[T], R], items: Sequence[T]) -> List[R]:
        """Apply func to every item, on the worker pool when threads > 1, in item order."""
        if self.config.threads > 1 and len(items) > 1:
            with ThreadPoolExecutor(max_workers=self.config.threads) as executor:
                return list(executor.map(func, items))
        return [func(item) for item in items]

    @abstractmethod
    def run(self) -> ScenarioOutcome:
        """
        Execute the scenario.

        Returns:
            The check records and any extra details for the report.
        """
        pass
