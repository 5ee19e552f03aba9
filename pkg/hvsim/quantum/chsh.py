"""
The CHSH operator, its tilde rewriting and the quantum-side checks built on it.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np

from hvsim.config import COLLINEAR_TOL
from hvsim.errors import DegenerateConfigurationError
from hvsim.quantum.linalg import Hermitian4, UnitVector3, jacobi_eigenvalues
from hvsim.quantum.pauli import pauli_dot_matrix
from hvsim.quantum.states import QuantumState, expectation


@dataclass(frozen=True)
class MeasurementSettings:
    """The four CHSH measurement directions a, a', b, b'."""

    a: UnitVector3
    a_prime: UnitVector3
    b: UnitVector3
    b_prime: UnitVector3

    def key(self) -> tuple:
        return tuple(
            round(c, 12)
            for v in (self.a, self.a_prime, self.b, self.b_prime)
            for c in (v.x, v.y, v.z)
        )


@dataclass(frozen=True)
class TildeDecomposition:
    """b + b' = norm_plus * b_tilde and b - b' = norm_minus * b_tilde_prime."""

    b_tilde: UnitVector3
    b_tilde_prime: UnitVector3
    norm_plus: float
    norm_minus: float

    @property
    def norm_sum(self) -> float:
        return self.norm_plus + self.norm_minus


def is_collinear(u: UnitVector3, v: UnitVector3) -> bool:
    return u.cross_norm(v) <= COLLINEAR_TOL


def tilde_vectors(b: UnitVector3, b_prime: UnitVector3) -> TildeDecomposition:
    """
    Rewrite b +/- b' as lengths times orthogonal unit vectors.

    Raises:
        DegenerateConfigurationError: If |b x b'| <= COLLINEAR_TOL.
    """
    if is_collinear(b, b_prime):
        raise DegenerateConfigurationError(
            f"b and b' are collinear (|b x b'| = {b.cross_norm(b_prime):.3e})"
        )
    plus = b.as_array() + b_prime.as_array()
    minus = b.as_array() - b_prime.as_array()
    norm_plus = float(np.linalg.norm(plus))
    norm_minus = float(np.linalg.norm(minus))
    return TildeDecomposition(
        b_tilde=UnitVector3.from_array(plus / norm_plus, normalize=True),
        b_tilde_prime=UnitVector3.from_array(minus / norm_minus, normalize=True),
        norm_plus=norm_plus,
        norm_minus=norm_minus,
    )


def correlation_operator(a: np.ndarray, b: np.ndarray) -> Hermitian4:
    """(a . sigma) (x) (b . sigma) for arbitrary real 3-vectors a, b."""
    return Hermitian4(np.kron(pauli_dot_matrix(a), pauli_dot_matrix(b)))


def chsh_operator(settings: MeasurementSettings) -> Hermitian4:
    """B = a.sigma (x) (b + b').sigma + a'.sigma (x) (b - b').sigma."""
    a = settings.a.as_array()
    a_prime = settings.a_prime.as_array()
    b = settings.b.as_array()
    b_prime = settings.b_prime.as_array()
    return Hermitian4(
        np.kron(pauli_dot_matrix(a), pauli_dot_matrix(b + b_prime))
        + np.kron(pauli_dot_matrix(a_prime), pauli_dot_matrix(b - b_prime))
    )


def chsh_operator_tilde(settings: MeasurementSettings) -> Hermitian4:
    """The same B written as |b+b'| a.sigma (x) b~.sigma + |b-b'| a'.sigma (x) b~'.sigma."""
    tilde = tilde_vectors(settings.b, settings.b_prime)
    return Hermitian4(
        tilde.norm_plus
        * np.kron(
            pauli_dot_matrix(settings.a.as_array()),
            pauli_dot_matrix(tilde.b_tilde.as_array()),
        )
        + tilde.norm_minus
        * np.kron(
            pauli_dot_matrix(settings.a_prime.as_array()),
            pauli_dot_matrix(tilde.b_tilde_prime.as_array()),
        )
    )


def operator_norm(operator: Union[Hermitian4, np.ndarray]) -> float:
    """
    Spectral norm max |eigenvalue| of a Hermitian 4x4 operator.

    Raises:
        InvalidArgumentError: If a raw array is not Hermitian within tolerance.
    """
    if not isinstance(operator, Hermitian4):
        operator = Hermitian4(operator)
    eigenvalues = jacobi_eigenvalues(operator)
    return float(max(abs(eigenvalues[0]), abs(eigenvalues[-1])))


def quantum_sum_check(
    state: QuantumState,
    a: UnitVector3,
    a_prime: UnitVector3,
    b_tilde: UnitVector3,
    b_tilde_prime: UnitVector3,
) -> float:
    """
    <a.sigma (x) b~.sigma> + <a'.sigma (x) b~'.sigma>.

    An anti-correlated assignment in which every hidden point sends one term to
    +1 and the other to -1 would force this sum to vanish; a nonzero value
    excludes that assignment for the state.
    """
    first = expectation(state, correlation_operator(a.as_array(), b_tilde.as_array()))
    second = expectation(
        state, correlation_operator(a_prime.as_array(), b_tilde_prime.as_array())
    )
    return first + second


def chsh_value(state: QuantumState, settings: MeasurementSettings) -> float:
    """Tr(rho B) for the CHSH operator of the given settings."""
    return expectation(state, chsh_operator(settings))