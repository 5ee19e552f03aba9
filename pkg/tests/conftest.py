"""Shared fixtures for the hvsim test suite."""

import math

import numpy as np
import pytest

from hvsim.quantum.chsh import MeasurementSettings
from hvsim.quantum.linalg import UnitVector3

from tests.helpers import X, Y, Z


@pytest.fixture
def rng():
    return np.random.default_rng(20120924)


@pytest.fixture
def orthogonal_settings():
    """a = x, a' = y, b and b' at +/-45 degrees in the x-y plane."""
    root = 1.0 / math.sqrt(2.0)
    return MeasurementSettings(
        a=X,
        a_prime=Y,
        b=UnitVector3(root, root, 0.0),
        b_prime=UnitVector3(root, -root, 0.0),
    )


@pytest.fixture
def collinear_settings():
    return MeasurementSettings(a=X, a_prime=Y, b=Z, b_prime=-Z)
