"""
Scenarios on Bell's d=2 model: oracle equivalence and the linearity failure.
"""

from typing import List, Tuple

import numpy as np

from hvsim.config import (
    D2_QUADRATURE_CHECKS,
    D2_QUADRATURE_POINTS,
    LINEARITY_GRID_POINTS,
    OMEGA_MAX,
    OMEGA_MIN,
)
from hvsim.hidden.bell_d2 import (
    QUADRATURE,
    MixCoefficient,
    dispersion_free_observable,
    integrate_observable,
    integrated_linearity,
    linearity_failure_measure,
    spectral_decompose,
)
from hvsim.quantum.linalg import UnitVector3
from hvsim.quantum.states import QuantumState, expectation
from hvsim.sampling import (
    random_non_collinear_pair,
    random_observable,
    random_unit_vector,
)
from hvsim.scenarios.base import CheckRecord, Scenario, ScenarioOutcome


class VerifyD2Scenario(Scenario):
    name = "verify-d2"
    description = "Bell's d=2 model reproduces <psi|O|psi> for random observables and states"

    def _sample(self, index: int) -> Tuple[float, float, bool]:
        rng = self.rng(index)
        operator = random_observable(rng)
        s = random_unit_vector(rng)
        hidden = integrate_observable(operator, s)
        quantum = expectation(QuantumState.pure_d2(s), operator)

        spectral = spectral_decompose(operator)
        omega = float(rng.uniform(OMEGA_MIN, OMEGA_MAX))
        value = dispersion_free_observable(operator, s, omega)
        dispersion_free = value in (spectral.mu1, spectral.mu2)

        quadrature_gap = 0.0
        if index < D2_QUADRATURE_CHECKS:
            quadrature = integrate_observable(
                operator, s, method=QUADRATURE, points=D2_QUADRATURE_POINTS
            )
            quadrature_gap = abs(quadrature - hidden)
        return abs(hidden - quantum), quadrature_gap, dispersion_free

    def run(self) -> ScenarioOutcome:
        results = self.map_tasks(self._sample, list(range(self.samples)))
        oracle_gap = max(r[0] for r in results)
        quadrature_gap = max(r[1] for r in results)
        all_dispersion_free = all(r[2] for r in results)
        self.logger.debug(f"verify-d2: oracle gap {oracle_gap:.3e}, quadrature gap {quadrature_gap:.3e}")

        return ScenarioOutcome(
            checks=[
                CheckRecord.close(
                    "closed form matches quantum expectation", 0.0, oracle_gap, self.tol("oracle")
                ),
                CheckRecord.close(
                    "quadrature matches closed form", 0.0, quadrature_gap, self.tol("quadrature")
                ),
                CheckRecord.flag("pointwise values are eigenvalues", all_dispersion_free),
            ],
            details={
                "quadrature_points": D2_QUADRATURE_POINTS,
                "quadrature_samples": min(self.samples, D2_QUADRATURE_CHECKS),
            },
        )


class LinearityFailureScenario(Scenario):
    name = "linearity-failure"
    description = "Dispersion-free values are not additive pointwise but are after integration"

    def _sample(self, index: int) -> Tuple[float, float]:
        rng = self.rng(index)
        n, m = random_non_collinear_pair(rng)
        lam = MixCoefficient(float(rng.uniform(1e-3, 1.0 - 1e-3)))
        s = random_unit_vector(rng)
        measure = linearity_failure_measure(n, m, lam, s)
        hidden, quantum = integrated_linearity(n, m, lam, s)
        return measure, abs(hidden - quantum)

    def run(self) -> ScenarioOutcome:
        n = UnitVector3(1.0, 0.0, 0.0)
        m = UnitVector3(0.0, 1.0, 0.0)
        half = MixCoefficient(0.5)
        orthogonal_measure = linearity_failure_measure(n, m, half, n)
        orthogonal_grid = linearity_failure_measure(
            n, m, half, n, method=QUADRATURE, points=LINEARITY_GRID_POINTS
        )

        results: List[Tuple[float, float]] = self.map_tasks(
            self._sample, list(range(self.samples))
        )
        smallest_measure = min(r[0] for r in results)
        integrated_gap = max(r[1] for r in results)

        return ScenarioOutcome(
            checks=[
                CheckRecord.close(
                    "failure measure for orthogonal n, m at lambda=0.5, s=n",
                    1.0,
                    orthogonal_measure,
                    self.tol("bound"),
                ),
                CheckRecord.close(
                    "grid measure matches breakpoint measure",
                    orthogonal_measure,
                    orthogonal_grid,
                    self.tol("quadrature"),
                ),
                CheckRecord.greater("smallest failure measure", 0.0, smallest_measure),
                CheckRecord.close(
                    "integrated linearity holds", 0.0, integrated_gap, self.tol("oracle")
                ),
            ],
            details={"mean_failure_measure": float(np.mean([r[0] for r in results]))},
        )
