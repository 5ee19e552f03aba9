import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hvsim.errors import DegenerateConfigurationError, InvalidArgumentError
from hvsim.hidden.bell_d2 import (
    EXACT,
    QUADRATURE,
    HiddenVarOmega,
    MixCoefficient,
    bloch_observable,
    dispersion_free_observable,
    dispersion_free_projector,
    integrate_observable,
    integrate_projector,
    integrated_linearity,
    linearity_failure_measure,
    spectral_decompose,
)
from hvsim.quantum.linalg import Hermitian2, UnitVector3
from hvsim.quantum.pauli import pauli_dot
from hvsim.quantum.states import QuantumState, expectation
from hvsim.sampling import (
    random_non_collinear_pair,
    random_observable,
    random_unit_vector,
    task_rng,
)

from tests.helpers import X, Y, Z


omegas = st.floats(min_value=-0.5, max_value=0.5)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


class TestHiddenVariable:
    @pytest.mark.parametrize("omega", [-0.51, 0.5000001, math.nan])
    def test_range(self, omega):
        with pytest.raises(InvalidArgumentError):
            HiddenVarOmega(omega)

    def test_endpoints_allowed(self):
        assert HiddenVarOmega(-0.5).omega == -0.5
        assert HiddenVarOmega(0.5).omega == 0.5

    @pytest.mark.parametrize("lam", [0.0, 1.0, -0.2])
    def test_mix_coefficient_open_interval(self, lam):
        with pytest.raises(InvalidArgumentError):
            MixCoefficient(lam)


class TestProjector:
    def test_positive_overlap_threshold(self):
        s = UnitVector3.from_angles(math.acos(0.6), 0.0)
        # c = 0.6: value 1 exactly on [-0.3, 1/2]
        assert dispersion_free_projector(s, Z, -0.29) == 1
        assert dispersion_free_projector(s, Z, -0.31) == 0

    def test_negative_overlap_threshold(self):
        s = UnitVector3.from_angles(math.acos(-0.6), 0.0)
        assert dispersion_free_projector(s, Z, -0.31) == 1
        assert dispersion_free_projector(s, Z, -0.29) == 0

    def test_orthogonal_uses_sign_zero_plus(self):
        assert dispersion_free_projector(X, Z, 0.0) == 1
        assert dispersion_free_projector(X, Z, -0.01) == 0

    @given(seeds, omegas)
    def test_values_are_zero_or_one(self, seed, omega):
        rng = task_rng(seed)
        assert dispersion_free_projector(random_unit_vector(rng), random_unit_vector(rng), omega) in (0, 1)

    @settings(max_examples=50)
    @given(seeds)
    def test_integral_is_born_rule(self, seed):
        rng = task_rng(seed)
        s = random_unit_vector(rng)
        m = random_unit_vector(rng)
        assert integrate_projector(s, m) == pytest.approx(0.5 * (1.0 + s.dot(m)), abs=1e-15)

    def test_quadrature_agrees(self, rng):
        s = random_unit_vector(rng)
        m = random_unit_vector(rng)
        exact = integrate_projector(s, m)
        assert integrate_projector(s, m, method=QUADRATURE, points=100_000) == pytest.approx(exact, abs=2e-5)

    def test_unknown_method(self):
        with pytest.raises(InvalidArgumentError):
            integrate_projector(X, Z, method="simpson")

    def test_quadrature_needs_points(self):
        with pytest.raises(InvalidArgumentError):
            integrate_projector(X, Z, method=QUADRATURE, points=0)


class TestSpectral:
    def test_reconstructs(self, rng):
        op = random_observable(rng)
        spectral = spectral_decompose(op)
        assert spectral.mu1 >= spectral.mu2
        np.testing.assert_allclose(spectral.reconstruct(), op.matrix, atol=1e-12)

    def test_identity_is_degenerate(self):
        spectral = spectral_decompose(Hermitian2(3.0 * np.eye(2)))
        assert spectral.degenerate
        assert spectral.mu1 == spectral.mu2 == pytest.approx(3.0)

    def test_spin_observable(self):
        spectral = spectral_decompose(pauli_dot(Y))
        assert (spectral.mu1, spectral.mu2) == pytest.approx((1.0, -1.0))
        assert spectral.p1_dir.y == pytest.approx(1.0)


class TestObservable:
    @settings(max_examples=50)
    @given(seeds, omegas)
    def test_dispersion_free_value_is_eigenvalue(self, seed, omega):
        rng = task_rng(seed)
        op = random_observable(rng)
        spectral = spectral_decompose(op)
        value = dispersion_free_observable(op, random_unit_vector(rng), omega)
        assert value in (spectral.mu1, spectral.mu2)

    def test_orthogonal_state_still_eigenvalue(self):
        # s orthogonal to the spectral axis: P2 := 1 - P1 keeps the value in {mu1, mu2}
        op = bloch_observable(0.25, [0.0, 0.0, 2.0])
        for omega in (-0.5, -0.1, 0.0, 0.4):
            assert dispersion_free_observable(op, X, omega) in (2.25, -1.75)

    @settings(max_examples=50)
    @given(seeds)
    def test_integral_matches_quantum(self, seed):
        rng = task_rng(seed)
        op = random_observable(rng)
        s = random_unit_vector(rng)
        expected = expectation(QuantumState.pure_d2(s), op)
        assert integrate_observable(op, s) == pytest.approx(expected, abs=1e-10)

    def test_degenerate_observable(self):
        op = Hermitian2(-2.0 * np.eye(2))
        assert dispersion_free_observable(op, Z, 0.1) == pytest.approx(-2.0)
        assert integrate_observable(op, Z) == pytest.approx(-2.0)


class TestLinearityFailure:
    def test_orthogonal_half_mixture_fails_everywhere(self):
        half = MixCoefficient(0.5)
        assert linearity_failure_measure(X, Y, half, X) == pytest.approx(1.0, abs=1e-12)

    def test_grid_agrees_with_breakpoints(self):
        half = MixCoefficient(0.5)
        exact = linearity_failure_measure(X, Y, half, X, method=EXACT)
        grid = linearity_failure_measure(X, Y, half, X, method=QUADRATURE, points=100_000)
        assert grid == pytest.approx(exact, abs=1e-4)

    @pytest.mark.parametrize("index", range(25))
    def test_random_measure_positive(self, index):
        rng = task_rng(3, index)
        n, m = random_non_collinear_pair(rng)
        lam = MixCoefficient(float(rng.uniform(0.01, 0.99)))
        s = random_unit_vector(rng)
        measure = linearity_failure_measure(n, m, lam, s)
        assert 0.0 < measure <= 1.0

    @pytest.mark.parametrize("index", range(25))
    def test_random_grid_matches(self, index):
        rng = task_rng(4, index)
        n, m = random_non_collinear_pair(rng)
        lam = MixCoefficient(float(rng.uniform(0.01, 0.99)))
        s = random_unit_vector(rng)
        exact = linearity_failure_measure(n, m, lam, s)
        grid = linearity_failure_measure(n, m, lam, s, method=QUADRATURE, points=200_000)
        assert grid == pytest.approx(exact, abs=1e-4)

    def test_collinear_raises(self):
        with pytest.raises(DegenerateConfigurationError):
            linearity_failure_measure(Z, -Z, MixCoefficient(0.5), X)

    @pytest.mark.parametrize("index", range(25))
    def test_linear_after_integration(self, index):
        rng = task_rng(5, index)
        n, m = random_non_collinear_pair(rng)
        lam = MixCoefficient(float(rng.uniform(0.01, 0.99)))
        hidden, quantum = integrated_linearity(n, m, lam, random_unit_vector(rng))
        assert hidden == pytest.approx(quantum, abs=1e-10)
