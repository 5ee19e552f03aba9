"""
Exact quantum-mechanics oracle for one and two spin-1/2 systems.

This package contains the Pauli algebra, states, expectation values, operator
norms and the CHSH operator against which the hidden-variables models are
checked.
"""

from hvsim.quantum.linalg import (
    Hermitian2,
    Hermitian4,
    HermitianOperator,
    UnitVector3,
    jacobi_eigenvalues,
    jacobi_eigh,
)
from hvsim.quantum.pauli import pauli_dot, projector, tensor
from hvsim.quantum.states import (
    QuantumState,
    StateKind,
    concurrence,
    correlation_matrix,
    expectation,
    mixed_separable_density,
    separable_density,
    singlet_state,
    werner_density,
)
from hvsim.quantum.chsh import (
    MeasurementSettings,
    TildeDecomposition,
    chsh_operator,
    chsh_operator_tilde,
    chsh_value,
    correlation_operator,
    operator_norm,
    quantum_sum_check,
    tilde_vectors,
)

__all__ = [
    "Hermitian2",
    "Hermitian4",
    "HermitianOperator",
    "UnitVector3",
    "jacobi_eigenvalues",
    "jacobi_eigh",
    "pauli_dot",
    "projector",
    "tensor",
    "QuantumState",
    "StateKind",
    "concurrence",
    "correlation_matrix",
    "expectation",
    "mixed_separable_density",
    "separable_density",
    "singlet_state",
    "werner_density",
    "MeasurementSettings",
    "TildeDecomposition",
    "chsh_operator",
    "chsh_operator_tilde",
    "chsh_value",
    "correlation_operator",
    "operator_norm",
    "quantum_sum_check",
    "tilde_vectors",
]
