"""
Maximization of CHSH expectation values over measurement settings.

Every d=4 state enters only through its correlation matrix T, since
<a.sigma (x) b.sigma> = a^T T b. Each restart sweeps a coplanar angle grid in
one pair of planes and then releases all eight polar/azimuthal angles to a
Nelder-Mead refinement. The reported value is re-evaluated as Tr(rho B).
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from hvsim.config import (
    DEFAULT_RESTARTS,
    DEFAULT_THREADS,
    GRID_STEP_DEGREES,
    SIMPLEX_FATOL,
    SIMPLEX_MAX_ITERATIONS,
    SIMPLEX_XATOL,
)
from hvsim.errors import InvalidArgumentError
from hvsim.quantum.chsh import MeasurementSettings, chsh_value
from hvsim.quantum.linalg import UnitVector3
from hvsim.quantum.states import (
    QuantumState,
    correlation_matrix,
    separable_density,
    werner_density,
)
from hvsim.sampling import random_pure_state, random_unit_vector, task_rng


logger = logging.getLogger(__name__)

STATE_FAMILIES = ("separable", "werner", "pure")

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class AngleParams:
    """Polar/azimuthal pairs (theta, phi) for a, a', b, b' in that order."""

    values: Tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) != 8:
            raise InvalidArgumentError(f"Expected 8 angles, got {len(self.values)}")

    @classmethod
    def from_array(cls, values: Sequence[float]) -> "AngleParams":
        return cls(tuple(float(v) for v in values))

    @classmethod
    def from_settings(cls, settings: MeasurementSettings) -> "AngleParams":
        angles: List[float] = []
        for vector in (settings.a, settings.a_prime, settings.b, settings.b_prime):
            angles.extend(vector.angles())
        return cls(tuple(angles))

    def wrapped(self) -> "AngleParams":
        return AngleParams(tuple(math.fmod(v, TWO_PI) for v in self.values))

    def vectors(self) -> np.ndarray:
        """The four directions as rows of a 4x3 array."""
        pairs = np.asarray(self.values, dtype=float).reshape(4, 2)
        theta, phi = pairs[:, 0], pairs[:, 1]
        return np.column_stack(
            (np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta))
        )

    def to_settings(self) -> MeasurementSettings:
        wrapped = self.wrapped().values
        a, a_prime, b, b_prime = (
            UnitVector3.from_angles(wrapped[2 * i], wrapped[2 * i + 1]) for i in range(4)
        )
        return MeasurementSettings(a, a_prime, b, b_prime)


@dataclass(frozen=True)
class PlaneFrame:
    """Orthonormal pairs spanning the a-plane and the b-plane of a coplanar sweep."""

    a_u: np.ndarray
    a_v: np.ndarray
    b_u: np.ndarray
    b_v: np.ndarray


@dataclass(frozen=True)
class OptResult:
    """Best CHSH value found and where."""

    best_value: float
    best_settings: MeasurementSettings
    iterations: int
    converged: bool


def _require_d4(state: QuantumState) -> None:
    if state.dim != 4:
        raise InvalidArgumentError("CHSH maximization needs a d=4 state")


def _chsh_from_correlations(t: np.ndarray, vectors: np.ndarray) -> float:
    a, a_prime, b, b_prime = vectors
    return float(a @ t @ (b + b_prime) + a_prime @ t @ (b - b_prime))


def _settings_from_vectors(vectors: Iterable[np.ndarray]) -> MeasurementSettings:
    a, a_prime, b, b_prime = (UnitVector3.from_array(v, normalize=True) for v in vectors)
    return MeasurementSettings(a, a_prime, b, b_prime)


def correlation_bound(state: QuantumState) -> float:
    """
    Maximal CHSH value over all settings, 2 sqrt(t1^2 + t2^2).

    t1 >= t2 are the two largest singular values of the correlation matrix.
    """
    _require_d4(state)
    singular = np.linalg.svd(correlation_matrix(state), compute_uv=False)
    return float(2.0 * math.sqrt(singular[0] ** 2 + singular[1] ** 2))


def aligned_frame(state: QuantumState) -> PlaneFrame:
    """Planes spanned by the two leading left and right singular vectors of T."""
    u, _, vt = np.linalg.svd(correlation_matrix(state))
    return PlaneFrame(a_u=u[:, 0], a_v=u[:, 1], b_u=vt[0], b_v=vt[1])


def random_frame(rng: np.random.Generator) -> PlaneFrame:
    """Two independently oriented random planes."""
    q_a, _ = np.linalg.qr(rng.standard_normal((3, 2)))
    q_b, _ = np.linalg.qr(rng.standard_normal((3, 2)))
    return PlaneFrame(a_u=q_a[:, 0], a_v=q_a[:, 1], b_u=q_b[:, 0], b_v=q_b[:, 1])


def coplanar_grid_max(
    state: QuantumState,
    frame: Optional[PlaneFrame] = None,
    step: float = GRID_STEP_DEGREES,
) -> Tuple[float, MeasurementSettings]:
    """
    Sweep a, a' over one plane and b, b' over another on a uniform angle grid.

    Args:
        state: A d=4 state.
        frame: The two planes; defaults to the singular-vector planes of T.
        step: Grid spacing in degrees.

    Returns:
        The largest value on the grid and its settings (lowest flat index on ties).
    """
    _require_d4(state)
    if step <= 0.0:
        raise InvalidArgumentError(f"Grid step must be positive, got {step}")
    frame = frame or aligned_frame(state)
    t = correlation_matrix(state)

    angles = np.deg2rad(np.arange(0.0, 360.0, step))
    a_dirs = np.outer(np.cos(angles), frame.a_u) + np.outer(np.sin(angles), frame.a_v)
    b_dirs = np.outer(np.cos(angles), frame.b_u) + np.outer(np.sin(angles), frame.b_v)
    e = a_dirs @ t @ b_dirs.T

    # S[i, i', j, j'] = E(i, j) + E(i, j') + E(i', j) - E(i', j')
    s = (
        e[:, None, :, None]
        + e[:, None, None, :]
        + e[None, :, :, None]
        - e[None, :, None, :]
    )
    i, i_prime, j, j_prime = np.unravel_index(int(np.argmax(s)), s.shape)
    settings = _settings_from_vectors(
        (a_dirs[i], a_dirs[i_prime], b_dirs[j], b_dirs[j_prime])
    )
    return float(s[i, i_prime, j, j_prime]), settings


def _run_restart(state: QuantumState, t: np.ndarray, seed: int, index: int) -> OptResult:
    if index == 0:
        frame = aligned_frame(state)
    else:
        frame = random_frame(task_rng(seed, index))
    grid_value, grid_settings = coplanar_grid_max(state, frame)

    def objective(x: np.ndarray) -> float:
        return -_chsh_from_correlations(t, AngleParams.from_array(x).vectors())

    start = np.array(AngleParams.from_settings(grid_settings).values)
    result = minimize(
        objective,
        start,
        method="Nelder-Mead",
        options={
            "maxiter": SIMPLEX_MAX_ITERATIONS,
            "xatol": SIMPLEX_XATOL,
            "fatol": SIMPLEX_FATOL,
        },
    )

    refined = -float(result.fun)
    if refined >= grid_value:
        settings = AngleParams.from_array(result.x).to_settings()
        value = refined
    else:
        settings = grid_settings
        value = grid_value

    if not result.success:
        logger.warning(f"Restart {index}: simplex stopped without converging ({result.message})")
    logger.debug(
        f"Restart {index}: grid {grid_value:.10f}, refined {refined:.10f} after {result.nit} iterations"
    )
    return OptResult(
        best_value=value,
        best_settings=settings,
        iterations=int(result.nit),
        converged=bool(result.success),
    )


def maximize_chsh(
    state: QuantumState,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    threads: int = DEFAULT_THREADS,
) -> OptResult:
    """
    Maximize Tr(rho B) over the eight measurement angles.

    Restart 0 sweeps the singular-vector planes of the correlation matrix;
    restart k > 0 sweeps random planes drawn from its own stream of (seed, k).
    The best restart wins, the lowest index on ties.

    Args:
        state: A d=4 state.
        restarts: Number of independent restarts, at least 1.
        seed: Seed for the restart streams.
        threads: Worker threads for the restarts.

    Returns:
        The best result, its value re-evaluated as Tr(rho B).

    Raises:
        InvalidArgumentError: For a d=2 state or fewer than one restart.
    """
    _require_d4(state)
    if restarts < 1:
        raise InvalidArgumentError(f"Need at least one restart, got {restarts}")
    t = correlation_matrix(state)

    if threads > 1 and restarts > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            results = list(
                executor.map(lambda k: _run_restart(state, t, seed, k), range(restarts))
            )
    else:
        results = [_run_restart(state, t, seed, k) for k in range(restarts)]

    best = results[0]
    for candidate in results[1:]:
        if candidate.best_value > best.best_value:
            best = candidate

    value = chsh_value(state, best.best_settings)
    logger.debug(f"Best CHSH value {value:.12f} over {restarts} restarts")
    return OptResult(
        best_value=value,
        best_settings=best.best_settings,
        iterations=best.iterations,
        converged=best.converged,
    )


def family_state(family: str, param: float, seed: int, index: int) -> QuantumState:
    """
    The state of a family for one grid entry.

    Werner entries use the parameter as p. Separable and pure entries draw a
    random state from the stream (seed, index); the parameter is a label.
    """
    if family == "werner":
        return werner_density(param)
    if family == "separable":
        rng = task_rng(seed, index)
        return separable_density(random_unit_vector(rng), random_unit_vector(rng))
    if family == "pure":
        return random_pure_state(task_rng(seed, index))
    raise InvalidArgumentError(
        f"Unknown state family '{family}', expected one of {STATE_FAMILIES}"
    )


def saturation_scan(
    state_family: str,
    family_param_grid: Sequence[float],
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    threads: int = DEFAULT_THREADS,
) -> List[Tuple[float, OptResult]]:
    """One maximize_chsh per grid entry, in grid order."""
    if state_family not in STATE_FAMILIES:
        raise InvalidArgumentError(
            f"Unknown state family '{state_family}', expected one of {STATE_FAMILIES}"
        )
    results = []
    for index, param in enumerate(family_param_grid):
        state = family_state(state_family, param, seed, index)
        results.append((param, maximize_chsh(state, restarts, seed, threads)))
    return results
