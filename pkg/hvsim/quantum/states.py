"""
Quantum states of one and two spin-1/2 systems and their expectation values.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from hvsim.config import (
    IMAG_RESIDUE_TOL,
    PSD_TOL,
    TRACE_TOL,
    UNIT_TOL,
    WEIGHT_SUM_TOL,
)
from hvsim.errors import InvalidArgumentError, NumericalResidueError
from hvsim.quantum.linalg import (
    Hermitian4,
    HermitianOperator,
    UnitVector3,
    jacobi_eigenvalues,
)
from hvsim.quantum.pauli import IDENTITY2, PAULI_MATRICES, pauli_dot_matrix


logger = logging.getLogger(__name__)


class StateKind(str, Enum):
    PURE_D2_BLOCH = "pure-d2-bloch"
    PURE_D4 = "pure-d4"
    DENSITY_D4 = "density-d4"


@dataclass(frozen=True, eq=False)
class QuantumState:
    """
    A quantum state in one of three representations.

    Use the pure_d2, pure_d4 and density_d4 constructors; they enforce the
    unit-norm, unit-trace and positivity invariants.
    """

    kind: StateKind
    bloch: Optional[UnitVector3] = None
    amplitudes: Optional[np.ndarray] = None
    density: Optional[Hermitian4] = None

    @classmethod
    def pure_d2(cls, s: UnitVector3) -> "QuantumState":
        return cls(kind=StateKind.PURE_D2_BLOCH, bloch=s)

    @classmethod
    def pure_d4(cls, amplitudes: Sequence[complex]) -> "QuantumState":
        psi = np.array(amplitudes, dtype=complex).reshape(-1)
        if psi.shape != (4,):
            raise InvalidArgumentError(f"Expected 4 amplitudes, got {psi.shape[0]}")
        norm = float(np.linalg.norm(psi))
        if abs(norm - 1.0) > UNIT_TOL:
            raise InvalidArgumentError(f"Pure state is not normalized (|psi| = {norm})")
        psi.setflags(write=False)
        return cls(kind=StateKind.PURE_D4, amplitudes=psi)

    @classmethod
    def density_d4(cls, rho: Union[Hermitian4, np.ndarray]) -> "QuantumState":
        operator = rho if isinstance(rho, Hermitian4) else Hermitian4(rho)
        trace = complex(np.trace(operator.matrix))
        if abs(trace - 1.0) > TRACE_TOL:
            raise InvalidArgumentError(f"Density matrix trace is {trace}, expected 1")
        smallest = float(jacobi_eigenvalues(operator)[0])
        if smallest < -PSD_TOL:
            raise InvalidArgumentError(
                f"Density matrix is not positive semidefinite (eigenvalue {smallest:.3e})"
            )
        return cls(kind=StateKind.DENSITY_D4, density=operator)

    @property
    def dim(self) -> int:
        return 2 if self.kind is StateKind.PURE_D2_BLOCH else 4

    def density_matrix(self) -> np.ndarray:
        """The state's density matrix as a complex array."""
        if self.kind is StateKind.PURE_D2_BLOCH:
            return 0.5 * (IDENTITY2 + pauli_dot_matrix(self.bloch.as_array()))
        if self.kind is StateKind.PURE_D4:
            return np.outer(self.amplitudes, self.amplitudes.conj())
        return np.array(self.density.matrix)


def _bloch_density(n: UnitVector3) -> np.ndarray:
    return 0.5 * (IDENTITY2 + pauli_dot_matrix(n.as_array()))


def expectation(state: QuantumState, operator: HermitianOperator) -> float:
    """
    Quantum expectation value <psi|O|psi> or Tr(rho O).

    The value is computed in complex arithmetic; an imaginary residue above
    IMAG_RESIDUE_TOL raises, anything below is discarded.

    Args:
        state: The state.
        operator: A Hermitian2 for d=2 states or Hermitian4 for d=4 states.

    Returns:
        The real expectation value.

    Raises:
        InvalidArgumentError: If the dimensions do not match.
        NumericalResidueError: If the imaginary residue is too large.
    """
    if operator.dim != state.dim:
        raise InvalidArgumentError(
            f"Dimension mismatch: state d={state.dim}, operator d={operator.dim}"
        )

    if state.kind is StateKind.PURE_D4:
        psi = state.amplitudes
        value = complex(np.vdot(psi, operator.matrix @ psi))
    else:
        value = complex(np.trace(state.density_matrix() @ operator.matrix))

    if abs(value.imag) > IMAG_RESIDUE_TOL:
        raise NumericalResidueError(
            f"Expectation value has imaginary residue {value.imag:.3e}"
        )
    return value.real


def correlation_matrix(state: QuantumState) -> np.ndarray:
    """
    The 3x3 spin correlation matrix T_ij = <sigma_i (x) sigma_j>.

    For every d=4 state, <a.sigma (x) b.sigma> = a^T T b.
    """
    if state.dim != 4:
        raise InvalidArgumentError("Correlation matrix needs a d=4 state")
    rho = state.density_matrix()
    t = np.empty((3, 3), dtype=float)
    for i, si in enumerate(PAULI_MATRICES):
        for j, sj in enumerate(PAULI_MATRICES):
            t[i, j] = float(np.trace(rho @ np.kron(si, sj)).real)
    return t


def singlet_state() -> QuantumState:
    """The singlet (|01> - |10>)/sqrt(2); <a.sigma (x) b.sigma> = -a.b."""
    amp = 1.0 / np.sqrt(2.0)
    return QuantumState.pure_d4([0.0, amp, -amp, 0.0])


def separable_density(n_a: UnitVector3, n_b: UnitVector3) -> QuantumState:
    """The pure product state rho(n_a) (x) rho(n_b) as a density matrix."""
    return QuantumState.density_d4(np.kron(_bloch_density(n_a), _bloch_density(n_b)))


def mixed_separable_density(
    samples: Iterable[Tuple[UnitVector3, UnitVector3, float]],
) -> QuantumState:
    """
    A convex mixture sum_i w_i rho(n_a,i) (x) rho(n_b,i).

    Args:
        samples: Atoms (n_a, n_b, weight) with non-negative weights summing to 1.

    Returns:
        The mixed separable density matrix.

    Raises:
        InvalidArgumentError: On a negative weight, a bad normalization or no atoms.
    """
    rho = np.zeros((4, 4), dtype=complex)
    total = 0.0
    count = 0
    for n_a, n_b, weight in samples:
        weight = float(weight)
        if weight < 0.0:
            raise InvalidArgumentError(f"Negative mixture weight {weight}")
        rho += weight * np.kron(_bloch_density(n_a), _bloch_density(n_b))
        total += weight
        count += 1
    if count == 0:
        raise InvalidArgumentError("Mixture needs at least one atom")
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        raise InvalidArgumentError(f"Mixture weights sum to {total}, expected 1")
    logger.debug(f"Built mixed separable state from {count} atoms")
    return QuantumState.density_d4(rho)


def werner_density(p: float) -> QuantumState:
    """p |singlet><singlet| + (1 - p) I/4 for 0 <= p <= 1."""
    if not 0.0 <= p <= 1.0:
        raise InvalidArgumentError(f"Werner parameter must lie in [0, 1], got {p}")
    singlet = singlet_state().density_matrix()
    return QuantumState.density_d4(p * singlet + (1.0 - p) * np.eye(4) / 4.0)


def concurrence(state: QuantumState) -> float:
    """Concurrence 2|psi_00 psi_11 - psi_01 psi_10| of a pure two-qubit state."""
    if state.kind is not StateKind.PURE_D4:
        raise InvalidArgumentError("Concurrence is defined here for pure d=4 states only")
    psi = state.amplitudes
    return float(2.0 * abs(psi[0] * psi[3] - psi[1] * psi[2]))

