import math

import numpy as np
import pytest
from scipy.optimize import linprog

from hvsim.config import CLASSICAL_BOUND, TSIRELSON_BOUND
from hvsim.errors import DegenerateConfigurationError, InvalidArgumentError
from hvsim.hidden.chsh_paths import (
    DichotomicAssignment,
    ObservableLabel,
    Path,
    WeightVector,
    anticorrelated_assignments,
    bell_original_check,
    discrepancy_report,
    enumerate_assignments,
    hidden_variable_bell_correlations,
    max_over_weights,
    path_a_value,
    path_b_value,
    path_values,
)
from hvsim.quantum.chsh import tilde_vectors
from hvsim.quantum.linalg import UnitVector3
from hvsim.sampling import random_settings, random_unit_vector, task_rng


def simplex_max(values):
    """Independent LP maximum of sum_i p_i v_i over the probability simplex."""
    n = len(values)
    result = linprog(
        -np.asarray(values), A_eq=np.ones((1, n)), b_eq=[1.0], bounds=[(0.0, None)] * n
    )
    return -result.fun


def in_plane(degrees):
    return UnitVector3.from_angles(math.pi / 2.0, math.radians(degrees))


class TestAssignments:
    @pytest.mark.parametrize("path", list(Path))
    def test_sixteen_distinct(self, path):
        assignments = enumerate_assignments(path)
        assert len(assignments) == 16
        assert len({tuple(a.as_dict().items()) for a in assignments}) == 16
        assert len(set(assignments)) == 16

    def test_canonical_order(self):
        assignments = enumerate_assignments(Path.B)
        assert set(assignments[0].as_dict().values()) == {1}
        assert set(assignments[15].as_dict().values()) == {-1}
        assert assignments[1][ObservableLabel.B_PHI_PRIME] == -1
        assert assignments[1][ObservableLabel.A_THETA] == 1

    def test_rejects_non_dichotomic(self):
        with pytest.raises(InvalidArgumentError):
            DichotomicAssignment.from_mapping({ObservableLabel.A_THETA: 0})

    def test_equal_assignments_hash_alike(self):
        first = DichotomicAssignment.from_mapping({ObservableLabel.A_THETA: 1, ObservableLabel.B_PHI: -1})
        second = DichotomicAssignment.from_mapping({ObservableLabel.A_THETA: 1, ObservableLabel.B_PHI: -1})
        assert first == second
        assert hash(first) == hash(second)

    def test_missing_label(self):
        assignment = DichotomicAssignment.from_mapping({ObservableLabel.A_THETA: 1})
        with pytest.raises(InvalidArgumentError):
            assignment[ObservableLabel.B_PHI]


class TestWeights:
    def test_rejects_bad_sum(self):
        with pytest.raises(InvalidArgumentError):
            WeightVector(Path.A, np.full(16, 0.1))

    def test_rejects_negative(self):
        probs = np.full(16, 1.0 / 16.0)
        probs[0] = -probs[0]
        probs[1] += 2.0 / 16.0
        with pytest.raises(InvalidArgumentError):
            WeightVector(Path.A, probs)

    def test_rejects_wrong_length(self):
        with pytest.raises(InvalidArgumentError):
            WeightVector(Path.B, np.full(8, 1.0 / 8.0))

    def test_average(self):
        weight = WeightVector(Path.B, np.full(16, 1.0 / 16.0))
        assert weight.average(np.arange(16)) == pytest.approx(7.5)


class TestPathValues:
    def test_path_b_always_two(self):
        for assignment in enumerate_assignments(Path.B):
            assert abs(path_b_value(assignment)) == 2.0

    def test_path_a_orthogonal(self, orthogonal_settings):
        best = enumerate_assignments(Path.A)[0]
        assert path_a_value(best, orthogonal_settings) == pytest.approx(TSIRELSON_BOUND)

    def test_path_a_collinear(self, collinear_settings):
        with pytest.raises(DegenerateConfigurationError):
            path_values(Path.A, collinear_settings)

    def test_path_b_collinear_is_fine(self, collinear_settings):
        value, _ = max_over_weights(Path.B, collinear_settings)
        assert value == CLASSICAL_BOUND


class TestMaximization:
    @pytest.mark.parametrize("index", range(30))
    def test_matches_linear_program(self, index):
        settings = random_settings(task_rng(21, index))
        for path in Path:
            value, _ = max_over_weights(path, settings)
            assert value == pytest.approx(simplex_max(path_values(path, settings)), abs=1e-9)

    def test_point_mass_on_lowest_index(self, orthogonal_settings):
        _, weight = max_over_weights(Path.B, orthogonal_settings)
        # all-(+1) gives 1*(1+1) + 1*(1-1) = 2, the first maximizer
        assert weight.probabilities[0] == 1.0
        assert weight.probabilities.sum() == 1.0

    @pytest.mark.parametrize("index", range(30))
    def test_path_a_max_is_norm_sum(self, index):
        settings = random_settings(task_rng(22, index))
        tilde = tilde_vectors(settings.b, settings.b_prime)
        value, _ = max_over_weights(Path.A, settings)
        assert value == pytest.approx(tilde.norm_sum, abs=1e-12)
        assert CLASSICAL_BOUND < value <= TSIRELSON_BOUND + 1e-12


class TestDiscrepancyReport:
    def test_orthogonal(self, orthogonal_settings):
        report = discrepancy_report(orthogonal_settings)
        assert report.path_a_max == pytest.approx(TSIRELSON_BOUND)
        assert report.path_b_max == CLASSICAL_BOUND
        assert report.gap == pytest.approx(TSIRELSON_BOUND - CLASSICAL_BOUND)
        assert abs(report.singlet_tilde_sum) > 0.0
        assert report.settings is orthogonal_settings

    def test_achieving_assignment_attains_max(self, orthogonal_settings):
        report = discrepancy_report(orthogonal_settings)
        assert path_a_value(report.achieving_assignment_a, orthogonal_settings) == pytest.approx(
            report.path_a_max
        )
        assert path_b_value(report.achieving_assignment_b) == report.path_b_max

    def test_collinear(self, collinear_settings):
        with pytest.raises(DegenerateConfigurationError):
            discrepancy_report(collinear_settings)


class TestBellOriginal:
    def test_singlet_violation(self):
        check = bell_original_check(in_plane(0.0), in_plane(45.0), in_plane(90.0))
        assert check.lhs == pytest.approx(1.0 / math.sqrt(2.0))
        assert check.rhs == pytest.approx(1.0 - 1.0 / math.sqrt(2.0))
        assert check.violated
        assert check.hidden_variable_bound_holds

    def test_no_violation_when_aligned(self):
        check = bell_original_check(in_plane(0.0), in_plane(0.0), in_plane(0.0))
        assert not check.violated

    def test_eight_deterministic_points(self):
        assert len(anticorrelated_assignments()) == 8

    @pytest.mark.parametrize("index", range(30))
    def test_random_weights_obey_inequality(self, index):
        rng = task_rng(23, index)
        weights = rng.dirichlet(np.ones(8))
        e_ab, e_ab_prime, e_bb_prime = hidden_variable_bell_correlations(weights / weights.sum())
        assert abs(e_ab - e_ab_prime) <= 1.0 + e_bb_prime + 1e-12

    def test_bad_weights(self):
        with pytest.raises(InvalidArgumentError):
            hidden_variable_bell_correlations(np.full(8, 0.2))
        with pytest.raises(InvalidArgumentError):
            hidden_variable_bell_correlations(np.full(4, 0.25))

    def test_random_directions_pointwise(self, rng):
        a, b, b_prime = (random_unit_vector(rng) for _ in range(3))
        assert bell_original_check(a, b, b_prime).hidden_variable_bound_holds
