"""
Scenarios on separable states: the factored model, optimized separable states
and mixtures of products.
"""

from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from hvsim.config import (
    CLASSICAL_BOUND,
    DEFAULT_RESTARTS,
    MIXED_EKERT_MIXTURES,
    MIXED_EKERT_SETTINGS,
    WITNESS_SAMPLES,
)
from hvsim.errors import ConfigurationError, InvalidArgumentError
from hvsim.hidden.factored import (
    FactoredModel,
    factored_chsh,
    linearity_after_integration,
    marginal_weights,
    pointwise_nonlinearity_witness,
    product_expectation,
)
from hvsim.optimize.search import correlation_bound, maximize_chsh, saturation_scan
from hvsim.quantum.chsh import chsh_operator
from hvsim.quantum.linalg import UnitVector3
from hvsim.quantum.pauli import pauli_dot, tensor
from hvsim.quantum.states import (
    QuantumState,
    expectation,
    mixed_separable_density,
    separable_density,
)
from hvsim.sampling import random_settings, random_unit_vector
from hvsim.scenarios.base import CheckRecord, Scenario, ScenarioOutcome

# Quantum-equivalence and linearity checks build density matrices, so they
# run on at most this many of the sampled tuples.
EQUIVALENCE_SAMPLES = 1000


class FactoredScenario(Scenario):
    name = "factored"
    description = "The factored model reproduces separable states and restores the single bound 2"

    def _sample(self, index: int) -> Tuple[float, float, float, float, float]:
        rng = self.rng(index)
        model = FactoredModel(random_unit_vector(rng), random_unit_vector(rng))
        settings = random_settings(rng)
        report = factored_chsh(model, settings)

        quantum_gap = 0.0
        linearity_gap = 0.0
        if index < EQUIVALENCE_SAMPLES:
            state = separable_density(model.s1, model.s2)
            quantum = expectation(state, tensor(pauli_dot(settings.a), pauli_dot(settings.b)))
            quantum_gap = abs(product_expectation(model, settings.a, settings.b) - quantum)
            linearity_gap = linearity_after_integration(
                model, settings.a, settings.b, settings.b_prime
            ).max_deviation
        return (
            max(abs(report.path_a_value), abs(report.path_b_value)),
            abs(report.gap),
            abs(report.path_a_value - report.closed_form),
            quantum_gap,
            linearity_gap,
        )

    def run(self) -> ScenarioOutcome:
        exact = self.tol("exact")
        results = self.map_tasks(self._sample, list(range(self.samples)))

        s1 = UnitVector3(0.0, 0.0, 1.0)
        model = FactoredModel(s1, UnitVector3(1.0, 0.0, 0.0))
        orthogonal = pointwise_nonlinearity_witness(
            model, UnitVector3(1.0, 0.0, 0.0), UnitVector3(0.0, 1.0, 0.0), WITNESS_SAMPLES, self.config.seed
        )
        close_b = UnitVector3(1.0, 0.0, 0.0)
        close_b_prime = UnitVector3(0.9, float(np.sqrt(1.0 - 0.81)), 0.0)
        narrow = pointwise_nonlinearity_witness(
            model, close_b, close_b_prime, WITNESS_SAMPLES, self.config.seed
        )

        parallel = marginal_weights(model, s1)
        anti = marginal_weights(model, -s1)
        tilted = marginal_weights(model, UnitVector3(0.8, 0.0, 0.6))

        restarts = int(self.option("restarts", DEFAULT_RESTARTS))
        optimized = maximize_chsh(
            separable_density(model.s1, model.s2), restarts, self.config.seed, self.config.threads
        )

        return ScenarioOutcome(
            checks=[
                CheckRecord.at_most(
                    "largest |<B>| under the factored model",
                    CLASSICAL_BOUND,
                    max(r[0] for r in results),
                    self.tol("bound"),
                ),
                CheckRecord.close("path A equals path B", 0.0, max(r[1] for r in results), exact),
                CheckRecord.close("path A equals closed form", 0.0, max(r[2] for r in results), exact),
                CheckRecord.close(
                    "product expectation equals separable trace", 0.0, max(r[3] for r in results), exact
                ),
                CheckRecord.close(
                    "linearity after integration", 0.0, max(r[4] for r in results), exact
                ),
                CheckRecord.flag("pointwise non-linearity for orthogonal b, b'", bool(orthogonal)),
                CheckRecord.flag("pointwise non-linearity for b.b' = 0.9", bool(narrow)),
                CheckRecord.close("c_theta for a_theta = s1", 1.0, parallel.c_theta, exact),
                CheckRecord.close("c_bar for a_theta = s1", 0.0, parallel.c_bar, exact),
                CheckRecord.close("c_theta for a_theta = -s1", 0.0, anti.c_theta, exact),
                CheckRecord.close("c_theta for s1.a_theta = 0.6", 0.8, tilted.c_theta, exact),
                CheckRecord.close(
                    "optimized separable value", CLASSICAL_BOUND, optimized.best_value, self.tol("optimizer")
                ),
            ],
            details={
                "witness_floor_orthogonal": orthogonal.analytic_floor,
                "witness_min_orthogonal": orthogonal.min_abs_deviation,
                "witness_floor_narrow": narrow.analytic_floor,
                "witness_min_narrow": narrow.min_abs_deviation,
            },
        )


class SeparableMaxScenario(Scenario):
    name = "separable-max"
    description = "Optimized CHSH value of random pure separable states reaches 2 and no more"

    def run(self) -> ScenarioOutcome:
        restarts = int(self.option("restarts", DEFAULT_RESTARTS))
        scan = saturation_scan(
            "separable", list(range(self.samples)), self.config.seed, restarts, self.config.threads
        )
        values = [result.best_value for _, result in scan]
        return ScenarioOutcome(
            checks=[
                CheckRecord.close(
                    "largest deviation from 2",
                    0.0,
                    max(abs(v - CLASSICAL_BOUND) for v in values),
                    self.tol("optimizer"),
                ),
                CheckRecord.at_most("largest optimized value", CLASSICAL_BOUND, max(values), self.tol("bound")),
            ],
            details={"values": values},
        )


def _parse_atoms(raw: Sequence[Dict[str, Any]]) -> List[Tuple[UnitVector3, UnitVector3, float]]:
    atoms = []
    try:
        for atom in raw:
            atoms.append(
                (
                    UnitVector3.from_array(atom["n_a"], normalize=True),
                    UnitVector3.from_array(atom["n_b"], normalize=True),
                    float(atom["weight"]),
                )
            )
    except (KeyError, TypeError, InvalidArgumentError) as e:
        raise ConfigurationError(f"Invalid mixed-ekert atoms: {e}") from e
    return atoms


class MixedEkertScenario(Scenario):
    name = "mixed-ekert"
    description = "Mixtures of product states never exceed the CHSH bound 2"

    def _mixture(self, index: int) -> QuantumState:
        rng = self.rng(0, index)
        weights = rng.dirichlet(np.ones(self.samples))
        weights = weights / weights.sum()
        return mixed_separable_density(
            (random_unit_vector(rng), random_unit_vector(rng), w) for w in weights
        )

    def _largest_values(self, state: QuantumState, operators: np.ndarray) -> Tuple[float, float]:
        rho = state.density_matrix()
        values = np.einsum("ij,kji->k", rho, operators).real
        return float(np.max(np.abs(values))), correlation_bound(state)

    def run(self) -> ScenarioOutcome:
        settings_count = int(self.option("settings", MIXED_EKERT_SETTINGS))
        operators = np.array(
            [chsh_operator(random_settings(self.rng(1, k))).matrix for k in range(settings_count)]
        )

        raw_atoms = self.option("atoms", None)
        if raw_atoms is not None:
            try:
                states = [mixed_separable_density(_parse_atoms(raw_atoms))]
            except InvalidArgumentError as e:
                raise ConfigurationError(f"Invalid mixed-ekert atoms: {e}") from e
        else:
            mixtures = int(self.option("mixtures", MIXED_EKERT_MIXTURES))
            states = self.map_tasks(self._mixture, list(range(mixtures)))

        results = self.map_tasks(lambda state: self._largest_values(state, operators), states)
        bound_tol = self.tol("bound")
        return ScenarioOutcome(
            checks=[
                CheckRecord.at_most(
                    "largest |Tr rho B| over sampled settings",
                    CLASSICAL_BOUND,
                    max(r[0] for r in results),
                    bound_tol,
                ),
                CheckRecord.at_most(
                    "largest optimal value 2 sqrt(t1^2 + t2^2)",
                    CLASSICAL_BOUND,
                    max(r[1] for r in results),
                    bound_tol,
                ),
            ],
            details={"mixtures": len(states), "settings": settings_count, "atoms": self.samples},
        )
