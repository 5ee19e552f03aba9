"""
Pauli algebra for one and two spin-1/2 systems.

Tensor products use the Kronecker convention with the first factor acting on
the a-system: basis order |00>, |01>, |10>, |11>, row-major.
"""

from typing import Tuple

import numpy as np

from hvsim.quantum.linalg import Hermitian2, Hermitian4, UnitVector3


IDENTITY2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI_MATRICES: Tuple[np.ndarray, np.ndarray, np.ndarray] = (SIGMA_X, SIGMA_Y, SIGMA_Z)

for _m in (IDENTITY2, SIGMA_X, SIGMA_Y, SIGMA_Z):
    _m.setflags(write=False)


def pauli_dot_matrix(vector: np.ndarray) -> np.ndarray:
    """v_x sigma_x + v_y sigma_y + v_z sigma_z for any real 3-vector."""
    vx, vy, vz = (float(c) for c in vector)
    return np.array([[vz, vx - 1j * vy], [vx + 1j * vy, -vz]], dtype=complex)


def pauli_dot(m: UnitVector3) -> Hermitian2:
    """
    The spin observable m . sigma along a unit direction.

    Args:
        m: Measurement direction.

    Returns:
        Traceless Hermitian2 with eigenvalues +1 and -1.
    """
    return Hermitian2(pauli_dot_matrix(m.as_array()))


def projector(m: UnitVector3) -> Hermitian2:
    """The rank-one projector (1 + m . sigma) / 2."""
    return Hermitian2(0.5 * (IDENTITY2 + pauli_dot_matrix(m.as_array())))


def tensor(a: Hermitian2, b: Hermitian2) -> Hermitian4:
    """Kronecker product a (x) b, first factor on the a-system."""
    return Hermitian4(np.kron(a.matrix, b.matrix))
