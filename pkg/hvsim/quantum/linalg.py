"""
Small fixed-size linear algebra: unit 3-vectors, Hermitian 2x2/4x4 operators
and a cyclic Jacobi eigensolver for complex Hermitian matrices.
"""

import logging
import math
from dataclasses import dataclass
from typing import ClassVar, Sequence, Tuple, Union

import numpy as np

from hvsim.config import (
    HERMITIAN_TOL,
    JACOBI_MAX_SWEEPS,
    JACOBI_TOL,
    UNIT_TOL,
)
from hvsim.errors import InvalidArgumentError


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class UnitVector3:
    """A direction on the unit sphere (measurement axis or Bloch vector)."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        norm_sq = self.x * self.x + self.y * self.y + self.z * self.z
        if not math.isfinite(norm_sq) or abs(norm_sq - 1.0) > UNIT_TOL:
            raise InvalidArgumentError(
                f"Not a unit vector: ({self.x}, {self.y}, {self.z}), |v|^2={norm_sq}"
            )

    @classmethod
    def from_array(cls, values: Sequence[float], normalize: bool = False) -> "UnitVector3":
        """
        Build a unit vector from three components.

        Args:
            values: The x, y, z components.
            normalize: Rescale to unit length instead of validating it.

        Returns:
            The unit vector.

        Raises:
            InvalidArgumentError: If the input is not a 3-vector, is zero while
                normalizing, or is not unit length without normalizing.
        """
        arr = np.asarray(values, dtype=float).reshape(-1)
        if arr.shape != (3,):
            raise InvalidArgumentError(f"Expected 3 components, got shape {arr.shape}")
        if normalize:
            norm = float(np.linalg.norm(arr))
            if norm == 0.0 or not math.isfinite(norm):
                raise InvalidArgumentError("Cannot normalize a zero vector")
            arr = arr / norm
        return cls(float(arr[0]), float(arr[1]), float(arr[2]))

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "UnitVector3":
        """Polar angle theta from +z, azimuth phi from +x."""
        sin_theta = math.sin(theta)
        return cls(
            sin_theta * math.cos(phi), sin_theta * math.sin(phi), math.cos(theta)
        )

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def dot(self, other: "UnitVector3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross_norm(self, other: "UnitVector3") -> float:
        return float(np.linalg.norm(np.cross(self.as_array(), other.as_array())))

    def angles(self) -> Tuple[float, float]:
        """Inverse of from_angles: (theta, phi)."""
        theta = math.acos(max(-1.0, min(1.0, self.z)))
        phi = math.atan2(self.y, self.x)
        return theta, phi

    def __neg__(self) -> "UnitVector3":
        return UnitVector3(-self.x, -self.y, -self.z)


class HermitianOperator:
    """
    A complex Hermitian matrix of fixed dimension.

    Subclasses fix the dimension. Instances are immutable: the stored array is
    a read-only copy.
    """

    dim: ClassVar[int] = 0

    def __init__(self, matrix: Union[np.ndarray, Sequence], atol: float = HERMITIAN_TOL):
        arr = np.array(matrix, dtype=complex)
        if arr.shape != (self.dim, self.dim):
            raise InvalidArgumentError(
                f"{type(self).__name__} needs shape ({self.dim}, {self.dim}), got {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise InvalidArgumentError(f"{type(self).__name__} has non-finite entries")
        deviation = float(np.max(np.abs(arr - arr.conj().T)))
        if deviation > atol:
            raise InvalidArgumentError(
                f"Matrix is not Hermitian (max |M - M^H| = {deviation:.3e})"
            )
        arr.setflags(write=False)
        self._matrix = arr

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    def trace(self) -> float:
        return float(np.trace(self._matrix).real)

    def allclose(self, other: "HermitianOperator", atol: float = HERMITIAN_TOL) -> bool:
        return bool(np.max(np.abs(self._matrix - other.matrix)) <= atol)

    def _wrap(self, arr: np.ndarray) -> "HermitianOperator":
        return type(self)(arr)

    def __add__(self, other: "HermitianOperator") -> "HermitianOperator":
        if type(other) is not type(self):
            return NotImplemented
        return self._wrap(self._matrix + other.matrix)

    def __sub__(self, other: "HermitianOperator") -> "HermitianOperator":
        if type(other) is not type(self):
            return NotImplemented
        return self._wrap(self._matrix - other.matrix)

    def __mul__(self, scalar: float) -> "HermitianOperator":
        if not isinstance(scalar, (int, float, np.floating, np.integer)):
            return NotImplemented
        return self._wrap(self._matrix * float(scalar))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"{type(self).__name__}({np.array2string(self._matrix, precision=4)})"


class Hermitian2(HermitianOperator):
    """A 2x2 Hermitian observable of one spin-1/2 system."""

    dim = 2


class Hermitian4(HermitianOperator):
    """A 4x4 Hermitian observable of two spin-1/2 systems."""

    dim = 4


def _off_diagonal_norm(a: np.ndarray) -> float:
    return float(np.sqrt(np.sum(np.abs(a) ** 2) - np.sum(np.abs(np.diag(a)) ** 2)))


def jacobi_eigh(
    matrix: Union[HermitianOperator, np.ndarray],
    tol: float = JACOBI_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Diagonalize a complex Hermitian matrix by cyclic Jacobi rotations.

    Each rotation first removes the phase of the pivot a[p, q] and then applies
    the real symmetric Jacobi rotation to the (p, q) block. Sweeps stop once the
    off-diagonal Frobenius norm drops below tol (scaled by max(1, ||A||_F)).

    Args:
        matrix: The Hermitian matrix.
        tol: Stopping threshold on the off-diagonal Frobenius norm.
        max_sweeps: Maximum number of full sweeps over all pivots.

    Returns:
        Eigenvalues in ascending order and the matching eigenvectors as columns.
    """
    a = np.array(
        matrix.matrix if isinstance(matrix, HermitianOperator) else matrix,
        dtype=complex,
    )
    n = a.shape[0]
    if a.shape != (n, n):
        raise InvalidArgumentError(f"Expected a square matrix, got shape {a.shape}")

    v = np.eye(n, dtype=complex)
    threshold = tol * max(1.0, float(np.linalg.norm(a)))

    for sweep in range(max_sweeps):
        off = _off_diagonal_norm(a)
        if off < threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c

                u = np.eye(n, dtype=complex)
                u[p, p] = c
                u[p, q] = s
                u[q, p] = -s * phase.conjugate()
                u[q, q] = c * phase.conjugate()

                a = u.conj().T @ a @ u
                a[p, q] = 0.0
                a[q, p] = 0.0
                v = v @ u
    else:
        off = _off_diagonal_norm(a)
        if off >= threshold:
            logger.warning(
                f"Jacobi eigensolver stopped after {max_sweeps} sweeps with off-diagonal norm {off:.3e}"
            )

    logger.debug(f"Jacobi eigensolver finished, off-diagonal norm {_off_diagonal_norm(a):.3e}")

    eigenvalues = np.real(np.diag(a))
    order = np.argsort(eigenvalues, kind="stable")
    return eigenvalues[order], v[:, order]


def jacobi_eigenvalues(matrix: Union[HermitianOperator, np.ndarray]) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix in ascending order."""
    eigenvalues, _ = jacobi_eigh(matrix)
    return eigenvalues
