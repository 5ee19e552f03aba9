import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from hvsim.errors import InvalidArgumentError
from hvsim.quantum.linalg import Hermitian2
from hvsim.quantum.pauli import pauli_dot, tensor
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
from hvsim.sampling import random_pure_state, random_unit_vector

from tests.helpers import X, Y, Z


class TestConstructors:
    def test_pure_d4_rejects_unnormalized(self):
        with pytest.raises(InvalidArgumentError):
            QuantumState.pure_d4([1.0, 1.0, 0.0, 0.0])

    def test_pure_d4_rejects_wrong_size(self):
        with pytest.raises(InvalidArgumentError):
            QuantumState.pure_d4([1.0, 0.0])

    def test_density_rejects_bad_trace(self):
        with pytest.raises(InvalidArgumentError):
            QuantumState.density_d4(np.eye(4) / 2.0)

    def test_density_rejects_negative_eigenvalue(self):
        with pytest.raises(InvalidArgumentError):
            QuantumState.density_d4(np.diag([0.6, 0.6, 0.1, -0.3]))

    def test_kinds(self):
        assert QuantumState.pure_d2(Z).kind is StateKind.PURE_D2_BLOCH
        assert singlet_state().kind is StateKind.PURE_D4
        assert werner_density(0.5).kind is StateKind.DENSITY_D4


class TestExpectation:
    def test_d2_spin_expectation_is_overlap(self, rng):
        s = random_unit_vector(rng)
        m = random_unit_vector(rng)
        assert expectation(QuantumState.pure_d2(s), pauli_dot(m)) == pytest.approx(s.dot(m), abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            expectation(singlet_state(), pauli_dot(Z))

    def test_singlet_anticorrelation(self, rng):
        a = random_unit_vector(rng)
        b = random_unit_vector(rng)
        value = expectation(singlet_state(), tensor(pauli_dot(a), pauli_dot(b)))
        assert value == pytest.approx(-a.dot(b), abs=1e-12)

    def test_separable_density_factorizes(self, rng):
        n_a, n_b, a, b = (random_unit_vector(rng) for _ in range(4))
        value = expectation(separable_density(n_a, n_b), tensor(pauli_dot(a), pauli_dot(b)))
        assert value == pytest.approx(a.dot(n_a) * b.dot(n_b), abs=1e-12)

    def test_pure_and_density_agree(self, rng):
        state = random_pure_state(rng)
        op = tensor(pauli_dot(random_unit_vector(rng)), pauli_dot(random_unit_vector(rng)))
        dense = QuantumState.density_d4(state.density_matrix())
        assert expectation(state, op) == pytest.approx(expectation(dense, op), abs=1e-12)

    def test_identity_expectation(self):
        assert expectation(QuantumState.pure_d2(X), Hermitian2(np.eye(2))) == pytest.approx(1.0)


class TestCorrelationMatrix:
    def test_singlet_is_minus_identity(self):
        assert_allclose(correlation_matrix(singlet_state()), -np.eye(3), atol=1e-12)

    def test_bilinear_form(self, rng):
        state = random_pure_state(rng)
        a = random_unit_vector(rng)
        b = random_unit_vector(rng)
        t = correlation_matrix(state)
        direct = expectation(state, tensor(pauli_dot(a), pauli_dot(b)))
        assert a.as_array() @ t @ b.as_array() == pytest.approx(direct, abs=1e-12)

    def test_werner_scales_singlet(self):
        assert_allclose(correlation_matrix(werner_density(0.3)), -0.3 * np.eye(3), atol=1e-12)

    def test_requires_d4(self):
        with pytest.raises(InvalidArgumentError):
            correlation_matrix(QuantumState.pure_d2(Z))


class TestMixtures:
    def test_weights_must_sum_to_one(self):
        with pytest.raises(InvalidArgumentError):
            mixed_separable_density([(X, Y, 0.5), (Y, Z, 0.4)])

    def test_negative_weight(self):
        with pytest.raises(InvalidArgumentError):
            mixed_separable_density([(X, Y, 1.5), (Y, Z, -0.5)])

    def test_empty(self):
        with pytest.raises(InvalidArgumentError):
            mixed_separable_density([])

    def test_single_atom_is_product(self):
        mixed = mixed_separable_density([(X, Z, 1.0)])
        assert_allclose(mixed.density_matrix(), separable_density(X, Z).density_matrix())

    def test_opposed_b_mixture_has_no_correlation(self, rng):
        n_a, n_b, a, b = (random_unit_vector(rng) for _ in range(4))
        mixed = mixed_separable_density([(n_a, n_b, 0.5), (n_a, -n_b, 0.5)])
        assert expectation(mixed, tensor(pauli_dot(a), pauli_dot(b))) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("atoms", [2, 5, 12])
    def test_random_mixture_is_a_density(self, rng, atoms):
        weights = rng.dirichlet(np.ones(atoms))
        weights = weights / weights.sum()
        rho = mixed_separable_density(
            [(random_unit_vector(rng), random_unit_vector(rng), w) for w in weights]
        ).density_matrix()
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
        assert np.linalg.eigvalsh(rho).min() >= -1e-12

    def test_full_werner_is_singlet_projector(self):
        singlet = singlet_state().density_matrix()
        assert_allclose(werner_density(1.0).density_matrix(), singlet, atol=1e-15)

    def test_zero_werner_is_maximally_mixed(self):
        assert_allclose(werner_density(0.0).density_matrix(), np.eye(4) / 4.0, atol=1e-15)

    @pytest.mark.parametrize("p", [-0.1, 1.1])
    def test_werner_range(self, p):
        with pytest.raises(InvalidArgumentError):
            werner_density(p)


class TestConcurrence:
    def test_singlet(self):
        assert concurrence(singlet_state()) == pytest.approx(1.0)

    def test_product(self):
        assert concurrence(QuantumState.pure_d4([1.0, 0.0, 0.0, 0.0])) == 0.0

    def test_partial(self):
        theta = 0.3
        state = QuantumState.pure_d4([math.cos(theta), 0.0, 0.0, math.sin(theta)])
        assert concurrence(state) == pytest.approx(math.sin(2 * theta))

    def test_requires_pure(self):
        with pytest.raises(InvalidArgumentError):
            concurrence(werner_density(1.0))
