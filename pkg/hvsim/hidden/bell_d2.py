"""
Bell's dispersion-free hidden-variables model for a single spin-1/2 system.

A pure state |psi><psi| = (1 + s.sigma)/2 and a hidden variable omega, uniform
on [-1/2, 1/2], assign the projector P_m the value

    P_m,psi(omega) = (1 + sign(omega + |s.m|/2) sign(s.m)) / 2

with sign(0) = +1. Every observable is then valued through its spectral
decomposition. All integrals over omega are available in closed form (the
integrands are step functions) and by midpoint quadrature as a cross-check.
"""

import logging
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from hvsim.config import (
    DEFAULT_QUADRATURE_POINTS,
    HERMITIAN_TOL,
    OMEGA_MAX,
    OMEGA_MIN,
    VALUE_MATCH_TOL,
)
from hvsim.errors import (
    DegenerateConfigurationError,
    InvalidArgumentError,
    NumericalResidueError,
)
from hvsim.quantum.chsh import is_collinear
from hvsim.quantum.linalg import Hermitian2, UnitVector3
from hvsim.quantum.pauli import IDENTITY2, PAULI_MATRICES, pauli_dot_matrix, projector
from hvsim.quantum.states import QuantumState, expectation


logger = logging.getLogger(__name__)

EXACT = "exact"
QUADRATURE = "quadrature"
INTEGRATION_METHODS = (EXACT, QUADRATURE)


@dataclass(frozen=True)
class HiddenVarOmega:
    """Bell's hidden variable omega in [-1/2, 1/2]."""

    omega: float

    def __post_init__(self) -> None:
        if not OMEGA_MIN <= self.omega <= OMEGA_MAX:
            raise InvalidArgumentError(
                f"omega must lie in [{OMEGA_MIN}, {OMEGA_MAX}], got {self.omega}"
            )


@dataclass(frozen=True)
class MixCoefficient:
    """The weight lambda of E = lambda P_n + (1 - lambda) P_m, strictly inside (0, 1)."""

    lambda_mix: float

    def __post_init__(self) -> None:
        if not 0.0 < self.lambda_mix < 1.0:
            raise InvalidArgumentError(
                f"Mixing coefficient must lie in (0, 1), got {self.lambda_mix}"
            )


@dataclass(frozen=True)
class Spectral2:
    """
    O = mu1 P1 + mu2 P2 with P1, P2 the projectors on the Bloch axes p1_dir, p2_dir.

    For a multiple of the identity both eigenvalues coincide and the axis is the
    arbitrary (0, 0, 1), flagged by degenerate.
    """

    mu1: float
    mu2: float
    p1_dir: UnitVector3
    p2_dir: UnitVector3
    degenerate: bool = False

    def reconstruct(self) -> np.ndarray:
        return self.mu1 * projector(self.p1_dir).matrix + self.mu2 * projector(
            self.p2_dir
        ).matrix


OmegaLike = Union[HiddenVarOmega, float]


def _omega_value(omega: OmegaLike) -> float:
    if isinstance(omega, HiddenVarOmega):
        return omega.omega
    return HiddenVarOmega(float(omega)).omega


def _sign(x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """sign with sign(0) = +1."""
    return np.where(np.asarray(x) >= 0.0, 1.0, -1.0)


def projector_values(c: float, omegas: np.ndarray) -> np.ndarray:
    """Projector values on an array of omegas for overlap c = s.m."""
    return 0.5 * (1.0 + _sign(omegas + 0.5 * abs(c)) * _sign(c))


def omega_midpoints(points: int) -> np.ndarray:
    if points < 1:
        raise InvalidArgumentError(f"Quadrature needs at least one point, got {points}")
    width = OMEGA_MAX - OMEGA_MIN
    return OMEGA_MIN + (np.arange(points) + 0.5) * (width / points)


def dispersion_free_projector(s: UnitVector3, m: UnitVector3, omega: OmegaLike) -> int:
    """
    Value 0 or 1 of the projector (1 + m.sigma)/2 at the hidden point omega.

    Args:
        s: Bloch vector of the pure state.
        m: Projector direction.
        omega: Hidden variable.

    Returns:
        1 or 0.
    """
    w = _omega_value(omega)
    return int(projector_values(s.dot(m), np.array([w]))[0])


def integrate_projector(
    s: UnitVector3,
    m: UnitVector3,
    method: str = EXACT,
    points: int = DEFAULT_QUADRATURE_POINTS,
) -> float:
    """
    Measure of the omega-set on which the projector takes the value 1.

    The exact method uses the single breakpoint omega = -|s.m|/2: the set is
    [-|c|/2, 1/2] for c = s.m >= 0 and [-1/2, -|c|/2) otherwise, so the
    measure is (1 + s.m)/2. The quadrature method agrees within 1/points.
    """
    c = s.dot(m)
    if method == EXACT:
        breakpoint_ = -0.5 * abs(c)
        if c >= 0.0:
            return OMEGA_MAX - breakpoint_
        return breakpoint_ - OMEGA_MIN
    if method == QUADRATURE:
        return float(np.mean(projector_values(c, omega_midpoints(points))))
    raise InvalidArgumentError(
        f"Unknown integration method '{method}', expected one of {INTEGRATION_METHODS}"
    )


def spectral_decompose(operator: Hermitian2) -> Spectral2:
    """
    Split a 2x2 Hermitian O = alpha 1 + beta.sigma into mu1 P1 + mu2 P2.

    mu1 = alpha + |beta| >= mu2 = alpha - |beta|; P1 projects on beta/|beta| and
    P2 on -beta/|beta|, so P1 + P2 = 1.
    """
    matrix = operator.matrix
    alpha = 0.5 * float(np.trace(matrix).real)
    beta = np.array([0.5 * float(np.trace(matrix @ p).real) for p in PAULI_MATRICES])
    length = float(np.linalg.norm(beta))

    if length <= HERMITIAN_TOL:
        axis = UnitVector3(0.0, 0.0, 1.0)
        logger.debug("Degenerate observable: multiple of the identity")
        return Spectral2(alpha, alpha, axis, -axis, degenerate=True)

    axis = UnitVector3.from_array(beta / length, normalize=True)
    spectral = Spectral2(alpha + length, alpha - length, axis, -axis)

    deviation = float(np.max(np.abs(spectral.reconstruct() - matrix)))
    if deviation > 1e-10:
        raise NumericalResidueError(
            f"Spectral reconstruction is off by {deviation:.3e}"
        )
    return spectral


def dispersion_free_observable(
    operator: Hermitian2, s: UnitVector3, omega: OmegaLike
) -> float:
    """
    mu1 P1,psi(omega) + mu2 P2,psi(omega) for a general 2x2 observable.

    P2,psi is taken as 1 - P1,psi so the value always lies in {mu1, mu2}, even
    when s is orthogonal to the spectral axis.
    """
    spectral = spectral_decompose(operator)
    p1 = dispersion_free_projector(s, spectral.p1_dir, omega)
    return spectral.mu1 * p1 + spectral.mu2 * (1 - p1)


def _observable_values(spectral: Spectral2, s: UnitVector3, omegas: np.ndarray) -> np.ndarray:
    p1 = projector_values(s.dot(spectral.p1_dir), omegas)
    return spectral.mu1 * p1 + spectral.mu2 * (1.0 - p1)


def integrate_observable(
    operator: Hermitian2,
    s: UnitVector3,
    method: str = EXACT,
    points: int = DEFAULT_QUADRATURE_POINTS,
) -> float:
    """The omega-integral of the dispersion-free value of a 2x2 observable."""
    spectral = spectral_decompose(operator)
    weight = integrate_projector(s, spectral.p1_dir, method=method, points=points)
    return spectral.mu1 * weight + spectral.mu2 * (1.0 - weight)


def _mixture(n: UnitVector3, m: UnitVector3, lam: MixCoefficient) -> Hermitian2:
    lam_value = lam.lambda_mix
    return Hermitian2(
        lam_value * projector(n).matrix + (1.0 - lam_value) * projector(m).matrix
    )


def linearity_failure_measure(
    n: UnitVector3,
    m: UnitVector3,
    lam: MixCoefficient,
    s: UnitVector3,
    method: str = EXACT,
    points: int = DEFAULT_QUADRATURE_POINTS,
) -> float:
    """
    Measure of the omega-set where the dispersion-free value of
    E = lambda P_n + (1 - lambda) P_m differs from lambda P_n,psi + (1 - lambda) P_m,psi.

    Both sides are step functions with breakpoints at -|s.n|/2, -|s.m|/2 and
    -|s.p1|/2 (p1 the spectral axis of E). The exact method sums the lengths of
    the sub-intervals on which they differ; the quadrature method counts
    midpoints of a uniform grid.

    Raises:
        DegenerateConfigurationError: If n and m are collinear.
    """
    if is_collinear(n, m):
        raise DegenerateConfigurationError(
            f"n and m are collinear (|n x m| = {n.cross_norm(m):.3e})"
        )
    lam_value = lam.lambda_mix
    spectral = spectral_decompose(_mixture(n, m, lam))
    c_n = s.dot(n)
    c_m = s.dot(m)

    def mismatch(omegas: np.ndarray) -> np.ndarray:
        rhs = lam_value * projector_values(c_n, omegas) + (
            1.0 - lam_value
        ) * projector_values(c_m, omegas)
        lhs = _observable_values(spectral, s, omegas)
        return np.abs(lhs - rhs) > VALUE_MATCH_TOL

    if method == EXACT:
        cuts = [-0.5 * abs(c) for c in (c_n, c_m, s.dot(spectral.p1_dir))]
        edges = np.unique(np.clip([OMEGA_MIN, OMEGA_MAX, *cuts], OMEGA_MIN, OMEGA_MAX))
        lengths = np.diff(edges)
        centers = edges[:-1] + 0.5 * lengths
        measure = float(np.sum(lengths[mismatch(centers)]))
    elif method == QUADRATURE:
        measure = float(np.mean(mismatch(omega_midpoints(points))))
    else:
        raise InvalidArgumentError(
            f"Unknown integration method '{method}', expected one of {INTEGRATION_METHODS}"
        )

    logger.debug(f"Linearity failure measure {measure:.6f} (lambda={lam_value}, method={method})")
    return measure


def integrated_linearity(
    n: UnitVector3, m: UnitVector3, lam: MixCoefficient, s: UnitVector3
) -> Tuple[float, float]:
    """
    Both sides of <E> = lambda <P_n> + (1 - lambda) <P_m> after integration.

    Returns:
        The hidden-variables integral of E's dispersion-free value and the
        quantum value lambda <P_n> + (1 - lambda) <P_m>.
    """
    state = QuantumState.pure_d2(s)
    hidden = integrate_observable(_mixture(n, m, lam), s)
    quantum = lam.lambda_mix * expectation(state, projector(n)) + (
        1.0 - lam.lambda_mix
    ) * expectation(state, projector(m))
    return hidden, quantum


def bloch_observable(alpha: float, beta: np.ndarray) -> Hermitian2:
    """alpha 1 + beta.sigma for a real scalar and real 3-vector."""
    return Hermitian2(alpha * IDENTITY2 + pauli_dot_matrix(np.asarray(beta, dtype=float)))
