"""
Scenarios on the local evaluation of the CHSH operator: the two-bound
discrepancy and Bell's original inequality.
"""

import math
from typing import Tuple

import numpy as np

from hvsim.config import CLASSICAL_BOUND, TILDE_SUM_THRESHOLD, TSIRELSON_BOUND
from hvsim.hidden.chsh_paths import (
    bell_original_check,
    discrepancy_report,
    hidden_variable_bell_correlations,
)
from hvsim.quantum.chsh import MeasurementSettings, quantum_sum_check, tilde_vectors
from hvsim.quantum.linalg import UnitVector3
from hvsim.sampling import random_pure_state, random_settings, random_unit_vector
from hvsim.scenarios.base import CheckRecord, Scenario, ScenarioOutcome


def orthogonal_settings() -> MeasurementSettings:
    """a = x, a' = y, b = (x + y)/sqrt(2), b' = (x - y)/sqrt(2)."""
    root = 1.0 / math.sqrt(2.0)
    return MeasurementSettings(
        a=UnitVector3(1.0, 0.0, 0.0),
        a_prime=UnitVector3(0.0, 1.0, 0.0),
        b=UnitVector3(root, root, 0.0),
        b_prime=UnitVector3(root, -root, 0.0),
    )


def coplanar(degrees: float) -> UnitVector3:
    return UnitVector3.from_angles(math.pi / 2.0, math.radians(degrees))


class ChshPathsScenario(Scenario):
    name = "chsh-paths"
    description = "The same CHSH operator gets bound 2 sqrt(2) by path A and 2 by path B"

    def _sample(self, index: int) -> Tuple[float, float, float, float, bool]:
        rng = self.rng(index)
        settings = random_settings(rng)
        report = discrepancy_report(settings)
        tilde = tilde_vectors(settings.b, settings.b_prime)
        tilde_sum = quantum_sum_check(
            random_pure_state(rng), settings.a, settings.a_prime, tilde.b_tilde, tilde.b_tilde_prime
        )
        return (
            abs(report.path_a_max - tilde.norm_sum),
            report.gap,
            report.path_a_max,
            abs(report.path_b_max - CLASSICAL_BOUND),
            abs(tilde_sum) > TILDE_SUM_THRESHOLD,
        )

    def run(self) -> ScenarioOutcome:
        exact = self.tol("exact")
        report = discrepancy_report(orthogonal_settings())

        results = self.map_tasks(self._sample, list(range(self.samples)))
        norm_sum_gap = max(r[0] for r in results)
        smallest_gap = min(r[1] for r in results)
        largest_a = max(r[2] for r in results)
        path_b_gap = max(r[3] for r in results)
        nonzero_fraction = sum(r[4] for r in results) / len(results)

        return ScenarioOutcome(
            checks=[
                CheckRecord.close("orthogonal b, b': path A max", TSIRELSON_BOUND, report.path_a_max, exact),
                CheckRecord.close("orthogonal b, b': path B max", CLASSICAL_BOUND, report.path_b_max, 0.0),
                CheckRecord.close(
                    "orthogonal b, b': gap", TSIRELSON_BOUND - CLASSICAL_BOUND, report.gap, exact
                ),
                CheckRecord.greater(
                    "orthogonal b, b': |singlet tilde sum| excludes anti-correlation",
                    0.0,
                    abs(report.singlet_tilde_sum),
                    exact,
                ),
                CheckRecord.close("path A max equals |b+b'| + |b-b'|", 0.0, norm_sum_gap, exact),
                CheckRecord.close("path B max equals 2", 0.0, path_b_gap, 0.0),
                CheckRecord.greater("smallest gap", 0.0, smallest_gap),
                CheckRecord.at_most("largest path A max", TSIRELSON_BOUND, largest_a, self.tol("bound")),
                CheckRecord.greater("random pure states: fraction with |tilde sum| > 0.01", 0.0, nonzero_fraction),
            ],
            details={
                "orthogonal_assignment_a": report.achieving_assignment_a.as_dict(),
                "orthogonal_assignment_b": report.achieving_assignment_b.as_dict(),
                "orthogonal_singlet_tilde_sum": report.singlet_tilde_sum,
                "pure_state_nonzero_tilde_sum_fraction": nonzero_fraction,
            },
        )


class BellOriginalScenario(Scenario):
    name = "bell-original"
    description = "Bell's original inequality: violated by the singlet, obeyed by anti-correlated hidden variables"

    def _sample(self, index: int) -> Tuple[bool, float]:
        rng = self.rng(index)
        a, b, b_prime = (random_unit_vector(rng) for _ in range(3))
        check = bell_original_check(a, b, b_prime)

        weights = rng.dirichlet(np.ones(8))
        weights = weights / weights.sum()
        e_ab, e_ab_prime, e_bb_prime = hidden_variable_bell_correlations(weights)
        excess = abs(e_ab - e_ab_prime) - (1.0 + e_bb_prime)
        return check.hidden_variable_bound_holds, excess

    def run(self) -> ScenarioOutcome:
        tol = self.tol("bell")
        check = bell_original_check(coplanar(0.0), coplanar(45.0), coplanar(90.0))

        results = self.map_tasks(self._sample, list(range(self.samples)))
        pointwise_holds = all(r[0] for r in results)
        largest_excess = max(r[1] for r in results)

        return ScenarioOutcome(
            checks=[
                CheckRecord.close("0/45/90 degrees: quantum lhs", 1.0 / math.sqrt(2.0), check.lhs, tol),
                CheckRecord.close("0/45/90 degrees: quantum rhs", 1.0 - 1.0 / math.sqrt(2.0), check.rhs, tol),
                CheckRecord.flag("0/45/90 degrees: singlet violates the inequality", check.violated),
                CheckRecord.flag("hidden-variable bound holds at every deterministic point", pointwise_holds),
                CheckRecord.at_most(
                    "largest hidden-variable excess over random weights", 0.0, largest_excess, self.tol("exact")
                ),
            ],
        )
