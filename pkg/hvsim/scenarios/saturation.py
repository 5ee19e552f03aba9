"""
Scenarios on the quantum maximum: the singlet, Werner states, the operator-norm
bound and pure states.
"""

import math
from typing import Tuple

import numpy as np

from hvsim.config import CLASSICAL_BOUND, DEFAULT_RESTARTS, TSIRELSON_BOUND, WERNER_GRID
from hvsim.errors import ConfigurationError
from hvsim.optimize.search import (
    correlation_bound,
    family_state,
    maximize_chsh,
    saturation_scan,
)
from hvsim.quantum.chsh import chsh_operator, chsh_value, operator_norm
from hvsim.quantum.states import concurrence, singlet_state
from hvsim.sampling import random_product_state, random_settings, task_rng
from hvsim.scenarios.base import CheckRecord, Scenario, ScenarioOutcome


class SingletMaxScenario(Scenario):
    name = "singlet-max"
    description = "The optimizer drives the singlet to 2 sqrt(2)"

    def run(self) -> ScenarioOutcome:
        state = singlet_state()
        result = maximize_chsh(state, self.samples, self.config.seed, self.config.threads)
        norm = operator_norm(chsh_operator(result.best_settings))
        return ScenarioOutcome(
            checks=[
                CheckRecord.close(
                    "optimized singlet value", TSIRELSON_BOUND, result.best_value, self.tol("optimizer")
                ),
                CheckRecord.at_most("optimized value below the norm bound", TSIRELSON_BOUND, result.best_value, self.tol("bound")),
                CheckRecord.close("||B|| at the optimum", TSIRELSON_BOUND, norm, self.tol("optimizer")),
                CheckRecord.close(
                    "correlation-matrix bound", TSIRELSON_BOUND, correlation_bound(state), self.tol("oracle")
                ),
            ],
            details={"restarts": self.samples, "iterations": result.iterations, "converged": result.converged},
        )


class WernerScenario(Scenario):
    name = "werner"
    description = "Werner states reach 2 sqrt(2) p, below 2 for p <= 1/sqrt(2) although entangled for p > 1/3"

    def run(self) -> ScenarioOutcome:
        grid = [float(p) for p in self.option("werner_p", list(WERNER_GRID))]
        if any(not 0.0 <= p <= 1.0 for p in grid):
            raise ConfigurationError(f"Werner parameters must lie in [0, 1], got {grid}")

        scan = saturation_scan("werner", grid, self.config.seed, self.samples, self.config.threads)
        checks = []
        for p, result in scan:
            checks.append(
                CheckRecord.close(f"p={p:g}: optimized value", TSIRELSON_BOUND * p, result.best_value, self.tol("werner"))
            )
            if 1.0 / 3.0 < p <= 1.0 / math.sqrt(2.0):
                checks.append(
                    CheckRecord.at_most(
                        f"p={p:g}: entangled state obeys the bound 2",
                        CLASSICAL_BOUND,
                        result.best_value,
                        self.tol("bound"),
                    )
                )

        ordered = sorted(scan, key=lambda item: item[0])
        monotone = all(
            later.best_value >= earlier.best_value - self.tol("werner")
            for (_, earlier), (_, later) in zip(ordered, ordered[1:])
        )
        checks.append(CheckRecord.flag("optimized value non-decreasing in p", monotone))
        return ScenarioOutcome(
            checks=checks,
            details={"values": {f"{p:g}": result.best_value for p, result in scan}},
        )


class NormScanScenario(Scenario):
    name = "norm-scan"
    description = "||B|| never exceeds 2 sqrt(2) and equals 2 sqrt(1 + |a x a'||b x b'|)"

    def _sample(self, index: int) -> Tuple[float, float, float]:
        settings = random_settings(self.rng(index))
        operator = chsh_operator(settings)
        norm = operator_norm(operator)
        a, a_prime = settings.a.as_array(), settings.a_prime.as_array()
        b, b_prime = settings.b.as_array(), settings.b_prime.as_array()
        closed = 2.0 * math.sqrt(
            1.0 + np.linalg.norm(np.cross(a, a_prime)) * np.linalg.norm(np.cross(b, b_prime))
        )
        singlet = abs(chsh_value(singlet_state(), settings))
        return norm, abs(norm - closed), singlet - norm

    def run(self) -> ScenarioOutcome:
        results = self.map_tasks(self._sample, list(range(self.samples)))
        return ScenarioOutcome(
            checks=[
                CheckRecord.at_most(
                    "largest ||B||", TSIRELSON_BOUND, max(r[0] for r in results), self.tol("bound")
                ),
                CheckRecord.close(
                    "||B|| matches 2 sqrt(1 + |a x a'||b x b'|)", 0.0, max(r[1] for r in results), self.tol("oracle")
                ),
                CheckRecord.at_most(
                    "singlet |<B>| minus ||B||", 0.0, max(r[2] for r in results), self.tol("bound")
                ),
            ],
        )


class PureCriterionScenario(Scenario):
    name = "pure-criterion"
    description = "Pure states reach 2 sqrt(1 + C^2): above 2 exactly when entangled"

    def run(self) -> ScenarioOutcome:
        restarts = int(self.option("restarts", DEFAULT_RESTARTS))
        scan = saturation_scan("pure", list(range(self.samples)), self.config.seed, restarts, self.config.threads)
        tol = self.tol("optimizer")

        deviations = []
        entangled_above = True
        for index, (_, result) in enumerate(scan):
            state = family_state("pure", float(index), self.config.seed, index)
            c = concurrence(state)
            expected = 2.0 * math.sqrt(1.0 + c * c)
            deviations.append(abs(result.best_value - expected))
            if c > tol and result.best_value <= CLASSICAL_BOUND:
                entangled_above = False

        product = random_product_state(task_rng(self.config.seed, self.samples, 1))
        product_result = maximize_chsh(product, restarts, self.config.seed, self.config.threads)

        return ScenarioOutcome(
            checks=[
                CheckRecord.close("largest deviation from 2 sqrt(1 + C^2)", 0.0, max(deviations), tol),
                CheckRecord.flag("entangled states exceed 2", entangled_above),
                CheckRecord.close("product state value", CLASSICAL_BOUND, product_result.best_value, tol),
                CheckRecord.close("product state concurrence", 0.0, concurrence(product), self.tol("exact")),
            ],
        )
