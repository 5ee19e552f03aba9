"""
The factored hidden-variables model: a product of two Bell d=2 models.

The a-system carries lambda1, the b-system lambda2, each uniform on
[-1/2, 1/2] with weight P(lambda1, lambda2) = P1(lambda1) P2(lambda2). The
model reproduces exactly the pure separable states rho(s1) (x) rho(s2), keeps
the linearity of expectation values after integration and therefore gives a
single CHSH bound 2.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from hvsim.config import (
    COLLINEAR_TOL,
    MARGINAL_QUADRATURE_POINTS,
    MARGINAL_RTOL,
    MARGINAL_SAMPLE_POINTS,
    OMEGA_MAX,
    OMEGA_MIN,
    VALUE_MATCH_TOL,
)
from hvsim.errors import InvalidArgumentError, NumericalResidueError
from hvsim.hidden.bell_d2 import (
    QUADRATURE,
    dispersion_free_observable,
    integrate_observable,
    integrate_projector,
    omega_midpoints,
    projector_values,
)
from hvsim.quantum.chsh import MeasurementSettings, tilde_vectors
from hvsim.quantum.linalg import UnitVector3
from hvsim.quantum.pauli import pauli_dot


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FactoredHiddenPoint:
    """(lambda1, lambda2): hidden variables of the a-system and the b-system."""

    lambda1: float
    lambda2: float

    def __post_init__(self) -> None:
        for name, value in (("lambda1", self.lambda1), ("lambda2", self.lambda2)):
            if not OMEGA_MIN <= value <= OMEGA_MAX:
                raise InvalidArgumentError(
                    f"{name} must lie in [{OMEGA_MIN}, {OMEGA_MAX}], got {value}"
                )


@dataclass(frozen=True)
class ProjectionA:
    """A_psi(theta, lambda1) = (1 + a_psi(theta, lambda1)) / 2 in {0, 1}."""

    value: int

    def __post_init__(self) -> None:
        if self.value not in (0, 1):
            raise InvalidArgumentError(f"Projection value must be 0 or 1, got {self.value}")

    @classmethod
    def from_dichotomic(cls, value: float) -> "ProjectionA":
        return cls(int(round(0.5 * (1.0 + value))))


@dataclass(frozen=True)
class FactoredModel:
    """Bloch vectors s1, s2 of the product state psi1(s1) psi2(s2)."""

    s1: UnitVector3
    s2: UnitVector3

    def dichotomic_a(self, direction: UnitVector3, point: FactoredHiddenPoint) -> float:
        """a_psi(theta, lambda1) in {+1, -1}."""
        return dispersion_free_observable(pauli_dot(direction), self.s1, point.lambda1)

    def dichotomic_b(self, direction: UnitVector3, point: FactoredHiddenPoint) -> float:
        """b_psi(phi, lambda2) in {+1, -1}."""
        return dispersion_free_observable(pauli_dot(direction), self.s2, point.lambda2)

    def projection_a(self, direction: UnitVector3, point: FactoredHiddenPoint) -> "ProjectionA":
        return ProjectionA.from_dichotomic(self.dichotomic_a(direction, point))


@dataclass(frozen=True)
class FactoredChshReport:
    """<B> under the factored model evaluated by both paths."""

    path_a_value: float
    path_b_value: float
    closed_form: float
    settings: MeasurementSettings

    @property
    def gap(self) -> float:
        return self.path_a_value - self.path_b_value


@dataclass(frozen=True)
class LinearityCheck:
    """Both sides of <a.sigma (x) (b +/- b').sigma> = <a.sigma (x) b.sigma> +/- <a.sigma (x) b'.sigma>."""

    lhs_plus: float
    rhs_plus: float
    lhs_minus: float
    rhs_minus: float
    marginal_lhs: float
    marginal_rhs: float

    @property
    def max_deviation(self) -> float:
        return max(
            abs(self.lhs_plus - self.rhs_plus),
            abs(self.lhs_minus - self.rhs_minus),
            abs(self.marginal_lhs - self.marginal_rhs),
        )

    @property
    def holds(self) -> bool:
        return self.max_deviation <= VALUE_MATCH_TOL


@dataclass(frozen=True)
class NonlinearityWitness:
    """
    Whether |b+b'| b~(lambda2) - b(lambda2) - b'(lambda2) stayed nonzero at every sample.

    The left side lies in {+/-|b+b'|} minus {-2, 0, 2}; for non-collinear b, b'
    its magnitude is at least analytic_floor = min(|b+b'|, 2 - |b+b'|).
    """

    holds: bool
    sample_count: int
    min_abs_deviation: float
    analytic_floor: float

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class MarginalWeights:
    """Marginal weight constants of the b-system, each multiplying P2(lambda2)."""

    c_total: float
    c_theta: float
    c_bar: float


def _spin_integral(s: UnitVector3, direction: UnitVector3) -> float:
    return integrate_observable(pauli_dot(direction), s)


def product_expectation(model: FactoredModel, a: UnitVector3, b: UnitVector3) -> float:
    """
    <a.sigma (x) b.sigma> as the product of two d=2 integrals.

    Each factor is the closed-form omega-integral of Bell's model for a spin
    observable, equal to s.m; the product is (a.s1)(b.s2).
    """
    return _spin_integral(model.s1, a) * _spin_integral(model.s2, b)


def _tilde_route(model: FactoredModel, a: UnitVector3, combined: np.ndarray) -> float:
    """|v| <a.sigma (x) v^.sigma> for v = b +/- b', zero when v vanishes."""
    length = float(np.linalg.norm(combined))
    if length <= COLLINEAR_TOL:
        return 0.0
    unit = UnitVector3.from_array(combined / length, normalize=True)
    return length * product_expectation(model, a, unit)


def factored_chsh(model: FactoredModel, settings: MeasurementSettings) -> FactoredChshReport:
    """
    <B> under the factored model by path A (tilde form) and path B (split b, b').

    Raises:
        DegenerateConfigurationError: If b and b' are collinear (path A guard).
    """
    tilde = tilde_vectors(settings.b, settings.b_prime)
    a_s1 = _spin_integral(model.s1, settings.a)
    a_prime_s1 = _spin_integral(model.s1, settings.a_prime)

    path_a = tilde.norm_plus * a_s1 * _spin_integral(
        model.s2, tilde.b_tilde
    ) + tilde.norm_minus * a_prime_s1 * _spin_integral(model.s2, tilde.b_tilde_prime)

    b_s2 = _spin_integral(model.s2, settings.b)
    b_prime_s2 = _spin_integral(model.s2, settings.b_prime)
    path_b = a_s1 * (b_s2 + b_prime_s2) + a_prime_s1 * (b_s2 - b_prime_s2)

    s1 = model.s1.as_array()
    s2 = model.s2.as_array()
    b = settings.b.as_array()
    b_prime = settings.b_prime.as_array()
    closed_form = float(
        np.dot(settings.a.as_array(), s1) * np.dot(b + b_prime, s2)
        + np.dot(settings.a_prime.as_array(), s1) * np.dot(b - b_prime, s2)
    )
    return FactoredChshReport(path_a, path_b, closed_form, settings)


def linearity_after_integration(
    model: FactoredModel, a: UnitVector3, b: UnitVector3, b_prime: UnitVector3
) -> LinearityCheck:
    """
    Check that expectation values stay linear in b after integration.

    lhs = |b +/- b'| <a.sigma (x) (b +/- b')^.sigma> by the tilde route,
    rhs = <a.sigma (x) b.sigma> +/- <a.sigma (x) b'.sigma>, for both signs, plus
    the one-sided relation |b+b'| <b~.sigma> = <b.sigma> + <b'.sigma> on the b-system.
    """
    b_arr = b.as_array()
    b_prime_arr = b_prime.as_array()
    ab = product_expectation(model, a, b)
    ab_prime = product_expectation(model, a, b_prime)

    plus = b_arr + b_prime_arr
    plus_length = float(np.linalg.norm(plus))
    if plus_length <= COLLINEAR_TOL:
        marginal_lhs = 0.0
    else:
        marginal_lhs = plus_length * _spin_integral(
            model.s2, UnitVector3.from_array(plus / plus_length, normalize=True)
        )

    return LinearityCheck(
        lhs_plus=_tilde_route(model, a, plus),
        rhs_plus=ab + ab_prime,
        lhs_minus=_tilde_route(model, a, b_arr - b_prime_arr),
        rhs_minus=ab - ab_prime,
        marginal_lhs=marginal_lhs,
        marginal_rhs=_spin_integral(model.s2, b) + _spin_integral(model.s2, b_prime),
    )


def pointwise_nonlinearity_witness(
    model: FactoredModel,
    b: UnitVector3,
    b_prime: UnitVector3,
    sample_count: int,
    seed: Optional[int] = 0,
) -> NonlinearityWitness:
    """
    Sample lambda2 uniformly and test |b+b'| b~(lambda2) - b(lambda2) - b'(lambda2) != 0.

    The dichotomic values come from Bell's model for the b-system state s2.

    Raises:
        InvalidArgumentError: If sample_count is below 1.
        DegenerateConfigurationError: If b and b' are collinear.
    """
    if sample_count < 1:
        raise InvalidArgumentError(f"Witness needs at least one sample, got {sample_count}")
    tilde = tilde_vectors(b, b_prime)
    rng = np.random.default_rng(seed)
    lambdas = rng.uniform(OMEGA_MIN, OMEGA_MAX, size=sample_count)

    def values(direction: UnitVector3) -> np.ndarray:
        return 2.0 * projector_values(model.s2.dot(direction), lambdas) - 1.0

    deviation = tilde.norm_plus * values(tilde.b_tilde) - values(b) - values(b_prime)
    min_abs = float(np.min(np.abs(deviation)))
    floor = min(tilde.norm_plus, 2.0 - tilde.norm_plus)

    witness = NonlinearityWitness(
        holds=bool(min_abs > VALUE_MATCH_TOL),
        sample_count=sample_count,
        min_abs_deviation=min_abs,
        analytic_floor=floor,
    )
    logger.debug(
        f"Nonlinearity witness over {sample_count} samples: min |deviation| {min_abs:.6f}, floor {floor:.6f}"
    )
    return witness


def marginal_weights(
    model: FactoredModel,
    theta_direction: UnitVector3,
    sample_points: int = MARGINAL_SAMPLE_POINTS,
    quadrature_points: int = MARGINAL_QUADRATURE_POINTS,
) -> MarginalWeights:
    """
    Marginal weights of the b-system under the factored weight.

    P(Lambda1; lambda2), P(psi, theta; lambda2) and Pbar(psi, theta; lambda2) are
    c_total P2(lambda2), c_theta P2(lambda2) and c_bar P2(lambda2) with
    c_total = 1, c_theta = (1 + s1.a_theta)/2 and c_bar = 1 - c_theta. The
    proportionality is confirmed at sample_points values of lambda2 by
    integrating over lambda1 with midpoint quadrature.

    Raises:
        InvalidArgumentError: If sample_points or quadrature_points is below 1.
        NumericalResidueError: If the sampled marginals are not proportional to
            P2(lambda2) with the same constants.
    """
    if sample_points < 1 or quadrature_points < 1:
        raise InvalidArgumentError("Marginal weights need at least one lambda2 point and one quadrature point")
    c_theta = integrate_projector(model.s1, theta_direction)
    weights = MarginalWeights(c_total=1.0, c_theta=c_theta, c_bar=1.0 - c_theta)

    lambda1 = omega_midpoints(quadrature_points)
    projection = projector_values(model.s1.dot(theta_direction), lambda1)
    p1 = np.ones_like(lambda1)
    lambda2 = np.linspace(OMEGA_MIN, OMEGA_MAX, sample_points)
    # the model's P2 and a tilted density on the same interval; the lambda1
    # integral must factor out of both
    shapes = np.vstack([np.ones_like(lambda2), 1.0 + lambda2])

    joint = shapes[:, :, np.newaxis] * p1
    ratios = np.stack(
        [
            joint.mean(axis=2),
            (projection * joint).mean(axis=2),
            ((1.0 - projection) * joint).mean(axis=2),
        ],
        axis=-1,
    ) / shapes[:, :, np.newaxis]
    reference = ratios[0, 0]

    spread = np.max(np.abs(ratios - reference), axis=(0, 1))
    if np.any(spread > MARGINAL_RTOL * np.maximum(1.0, np.abs(reference))):
        raise NumericalResidueError(f"Marginal weights are not proportional to P2: spread {spread}")

    quadrature_theta = integrate_projector(
        model.s1, theta_direction, method=QUADRATURE, points=quadrature_points
    )
    if abs(reference[1] - quadrature_theta) > MARGINAL_RTOL:
        raise NumericalResidueError("Sampled marginal disagrees with the quadrature integral")
    if abs(reference[1] - c_theta) > 2.0 / quadrature_points:
        raise NumericalResidueError("Sampled marginal disagrees with the closed form")

    logger.debug(f"Marginal weights {weights} confirmed at {sample_points} lambda2 points")
    return weights
