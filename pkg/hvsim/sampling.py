"""
Seeded random inputs for scenarios, scans and tests.

Every task draws from its own stream, keyed by the run seed and the task's
index, so results do not depend on how tasks are spread over workers.
"""

import math
from typing import Tuple

import numpy as np

from hvsim.hidden.bell_d2 import bloch_observable
from hvsim.quantum.chsh import MeasurementSettings, is_collinear
from hvsim.quantum.linalg import Hermitian2, UnitVector3
from hvsim.quantum.states import QuantumState


def task_rng(seed: int, *key: int) -> np.random.Generator:
    """Generator for the task addressed by key under the run seed."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(key)))


def random_unit_vector(rng: np.random.Generator) -> UnitVector3:
    """Area-uniform direction: z = 2u - 1, phi = 2 pi v."""
    u, v = rng.random(2)
    z = 2.0 * u - 1.0
    phi = 2.0 * math.pi * v
    r = math.sqrt(max(0.0, 1.0 - z * z))
    return UnitVector3.from_array((r * math.cos(phi), r * math.sin(phi), z), normalize=True)


def random_non_collinear_pair(rng: np.random.Generator) -> Tuple[UnitVector3, UnitVector3]:
    while True:
        first = random_unit_vector(rng)
        second = random_unit_vector(rng)
        if not is_collinear(first, second):
            return first, second


def random_settings(rng: np.random.Generator) -> MeasurementSettings:
    """Four independent directions; b and b' are redrawn until non-collinear."""
    a = random_unit_vector(rng)
    a_prime = random_unit_vector(rng)
    b, b_prime = random_non_collinear_pair(rng)
    return MeasurementSettings(a, a_prime, b, b_prime)


def random_pure_state(rng: np.random.Generator) -> QuantumState:
    """Four complex standard-normal amplitudes, normalized."""
    amplitudes = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    return QuantumState.pure_d4(amplitudes / np.linalg.norm(amplitudes))


def random_product_state(rng: np.random.Generator) -> QuantumState:
    """A pure product state psi_a (x) psi_b."""
    first = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    second = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    psi = np.kron(first / np.linalg.norm(first), second / np.linalg.norm(second))
    return QuantumState.pure_d4(psi / np.linalg.norm(psi))


def random_observable(rng: np.random.Generator) -> Hermitian2:
    """alpha 1 + beta.sigma with standard-normal alpha and beta."""
    return bloch_observable(float(rng.standard_normal()), rng.standard_normal(3))
