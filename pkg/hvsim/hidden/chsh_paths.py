"""
Local non-contextual hidden-variables evaluation of the CHSH operator in d=4.

The same operator B is evaluated two ways from the formula
<a.sigma (x) b.sigma> = sum_lambda P(lambda) a(lambda) b(lambda):

  path A: on the rewritten form |b+b'| a.sigma (x) b~.sigma + |b-b'| a'.sigma (x) b~'.sigma,
          which is bounded by |b+b'| + |b-b'| <= 2 sqrt(2);
  path B: on a(b + b') + a'(b - b') with separate dichotomic values for b and b',
          which is always +/-2.

Only four dichotomic values enter each path, so the hidden-variable space for
the bounds is the 16 deterministic assignments of a path and every weight
P(lambda) is a point of the probability simplex over them.
"""

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np

from hvsim.config import VALUE_MATCH_TOL, WEIGHT_SUM_TOL
from hvsim.errors import InvalidArgumentError
from hvsim.quantum.chsh import MeasurementSettings, quantum_sum_check, tilde_vectors
from hvsim.quantum.linalg import UnitVector3
from hvsim.quantum.states import singlet_state


logger = logging.getLogger(__name__)


class ObservableLabel(str, Enum):
    A_THETA = "a_theta"
    A_THETA_PRIME = "a_theta_prime"
    B_PHI = "b_phi"
    B_PHI_PRIME = "b_phi_prime"
    B_TILDE = "b_tilde"
    B_TILDE_PRIME = "b_tilde_prime"


class Path(str, Enum):
    A = "A"
    B = "B"


PATH_LABELS: Dict[Path, Tuple[ObservableLabel, ...]] = {
    Path.A: (
        ObservableLabel.A_THETA,
        ObservableLabel.A_THETA_PRIME,
        ObservableLabel.B_TILDE,
        ObservableLabel.B_TILDE_PRIME,
    ),
    Path.B: (
        ObservableLabel.A_THETA,
        ObservableLabel.A_THETA_PRIME,
        ObservableLabel.B_PHI,
        ObservableLabel.B_PHI_PRIME,
    ),
}


@dataclass(frozen=True)
class DichotomicAssignment:
    """The +/-1 outputs of one deterministic hidden-variable point."""

    values: Tuple[Tuple[ObservableLabel, int], ...]

    def __post_init__(self) -> None:
        for label, value in self.values:
            if value not in (1, -1):
                raise InvalidArgumentError(f"{label.value} must be +1 or -1, got {value}")

    @classmethod
    def from_mapping(cls, values: Mapping[ObservableLabel, int]) -> "DichotomicAssignment":
        return cls(tuple(values.items()))

    def __getitem__(self, label: ObservableLabel) -> int:
        for key, value in self.values:
            if key is label:
                return value
        raise InvalidArgumentError(f"Assignment has no value for {label.value}")

    def as_dict(self) -> Dict[str, int]:
        return {label.value: value for label, value in self.values}


@dataclass(frozen=True, eq=False)
class WeightVector:
    """A probability weight over the 16 deterministic assignments of one path."""

    path: Path
    probabilities: np.ndarray

    def __post_init__(self) -> None:
        probs = np.asarray(self.probabilities, dtype=float)
        if probs.shape != (16,):
            raise InvalidArgumentError(f"Weight vector needs 16 entries, got {probs.shape}")
        if np.any(probs < 0.0):
            raise InvalidArgumentError("Weight vector has negative entries")
        if abs(float(probs.sum()) - 1.0) > WEIGHT_SUM_TOL:
            raise InvalidArgumentError(f"Weight vector sums to {probs.sum()}, expected 1")

    @classmethod
    def point_mass(cls, path: Path, index: int) -> "WeightVector":
        probs = np.zeros(16)
        probs[index] = 1.0
        return cls(path, probs)

    def average(self, values: Sequence[float]) -> float:
        return float(np.dot(self.probabilities, np.asarray(values, dtype=float)))


@dataclass(frozen=True)
class ChshReport:
    """Both maximizations for one measurement configuration and their gap."""

    path_a_max: float
    path_b_max: float
    gap: float
    achieving_assignment_a: DichotomicAssignment
    achieving_assignment_b: DichotomicAssignment
    settings: MeasurementSettings
    singlet_tilde_sum: float = field(default=0.0)


@dataclass(frozen=True)
class BellOriginalCheck:
    """Bell's original inequality |E(a,b) - E(a,b')| <= 1 + E(b,b') under the singlet law."""

    lhs: float
    rhs: float
    violated: bool
    hidden_variable_bound_holds: bool


def enumerate_assignments(path: Path) -> List[DichotomicAssignment]:
    """
    The 16 deterministic assignments of a path in canonical order.

    The order is the product over {+1, -1} of the path's labels, +1 first and
    the first label varying slowest; index 0 is the all-(+1) assignment.
    """
    labels = PATH_LABELS[Path(path)]
    return [
        DichotomicAssignment(tuple(zip(labels, combo)))
        for combo in itertools.product((1, -1), repeat=len(labels))
    ]


def path_a_value(assign: DichotomicAssignment, settings: MeasurementSettings) -> float:
    """
    |b+b'| a(theta) b~ + |b-b'| a(theta') b~' at one hidden point.

    Raises:
        DegenerateConfigurationError: If b and b' are collinear.
    """
    tilde = tilde_vectors(settings.b, settings.b_prime)
    return tilde.norm_plus * (
        assign[ObservableLabel.A_THETA] * assign[ObservableLabel.B_TILDE]
    ) + tilde.norm_minus * (
        assign[ObservableLabel.A_THETA_PRIME] * assign[ObservableLabel.B_TILDE_PRIME]
    )


def path_b_value(assign: DichotomicAssignment) -> float:
    """a(theta)(b(phi) + b(phi')) + a(theta')(b(phi) - b(phi')), always +/-2."""
    a = assign[ObservableLabel.A_THETA]
    a_prime = assign[ObservableLabel.A_THETA_PRIME]
    b = assign[ObservableLabel.B_PHI]
    b_prime = assign[ObservableLabel.B_PHI_PRIME]
    return float(a * (b + b_prime) + a_prime * (b - b_prime))


def path_values(path: Path, settings: MeasurementSettings) -> np.ndarray:
    """Values of all 16 canonical assignments of a path."""
    assignments = enumerate_assignments(path)
    if Path(path) is Path.A:
        return np.array([path_a_value(assign, settings) for assign in assignments])
    return np.array([path_b_value(assign) for assign in assignments])


def max_over_weights(path: Path, settings: MeasurementSettings) -> Tuple[float, WeightVector]:
    """
    Maximize sum_lambda P(lambda) value(lambda) over the probability simplex.

    The objective is linear, so the maximum sits on a vertex: a point mass on
    the lowest-index assignment attaining the largest value.

    Returns:
        The maximum and the maximizing weight.
    """
    path = Path(path)
    values = path_values(path, settings)
    index = int(np.argmax(values))
    weight = WeightVector.point_mass(path, index)
    return float(values[index]), weight


def discrepancy_report(settings: MeasurementSettings) -> ChshReport:
    """
    Run both maximizations for one configuration.

    Raises:
        DegenerateConfigurationError: If b and b' are collinear.
    """
    a_max, weight_a = max_over_weights(Path.A, settings)
    b_max, weight_b = max_over_weights(Path.B, settings)
    assignments_a = enumerate_assignments(Path.A)
    assignments_b = enumerate_assignments(Path.B)

    tilde = tilde_vectors(settings.b, settings.b_prime)
    tilde_sum = quantum_sum_check(
        singlet_state(), settings.a, settings.a_prime, tilde.b_tilde, tilde.b_tilde_prime
    )

    report = ChshReport(
        path_a_max=a_max,
        path_b_max=b_max,
        gap=a_max - b_max,
        achieving_assignment_a=assignments_a[int(np.argmax(weight_a.probabilities))],
        achieving_assignment_b=assignments_b[int(np.argmax(weight_b.probabilities))],
        settings=settings,
        singlet_tilde_sum=tilde_sum,
    )
    logger.debug(
        f"Discrepancy report: path A {a_max:.12f}, path B {b_max:.12f}, gap {report.gap:.12f}"
    )
    return report


def anticorrelated_assignments() -> List[Tuple[int, int, int]]:
    """
    Deterministic points of the singlet-constrained model as (a(theta), a(phi), a(phi')).

    The b-side values follow from b(x) = -a(x).
    """
    return list(itertools.product((1, -1), repeat=3))


def hidden_variable_bell_correlations(
    weights: Sequence[float],
) -> Tuple[float, float, float]:
    """
    Correlations E(a,b), E(a,b'), E(b,b') of a weighted anti-correlated model.

    Each point assigns a(theta), a(phi), a(phi') and b(x) = -a(x); the
    correlation E(x, y) is the weighted average of a(x) b(y).

    Args:
        weights: Non-negative weights over anticorrelated_assignments(), summing to 1.
    """
    probs = np.asarray(weights, dtype=float)
    points = anticorrelated_assignments()
    if probs.shape != (len(points),) or np.any(probs < 0.0):
        raise InvalidArgumentError("Expected 8 non-negative weights")
    if abs(float(probs.sum()) - 1.0) > WEIGHT_SUM_TOL:
        raise InvalidArgumentError(f"Weights sum to {probs.sum()}, expected 1")

    e_ab = sum(w * (a_t * -a_p) for w, (a_t, a_p, _) in zip(probs, points))
    e_ab_prime = sum(w * (a_t * -a_pp) for w, (a_t, _, a_pp) in zip(probs, points))
    e_bb_prime = sum(w * (a_p * -a_pp) for w, (_, a_p, a_pp) in zip(probs, points))
    return float(e_ab), float(e_ab_prime), float(e_bb_prime)


def bell_original_check(
    a: UnitVector3, b: UnitVector3, b_prime: UnitVector3
) -> BellOriginalCheck:
    """
    Bell's original inequality under the singlet correlation law E(x, y) = -x.y.

    The quantum side is lhs = |-a.b + a.b'| against rhs = 1 - b.b'. The
    hidden-variables side is checked point by point over the anti-correlated
    deterministic assignments: |a(theta)(b(phi) - b(phi'))| <= 1 - b(phi) b(phi')
    at every point implies the inequality for every weight.
    """
    lhs = abs(-a.dot(b) + a.dot(b_prime))
    rhs = 1.0 - b.dot(b_prime)
    violated = lhs > rhs + VALUE_MATCH_TOL

    holds = True
    for a_theta, a_phi, a_phi_prime in anticorrelated_assignments():
        b_phi, b_phi_prime = -a_phi, -a_phi_prime
        point_lhs = abs(a_theta * (b_phi - b_phi_prime))
        point_rhs = 1 - b_phi * b_phi_prime
        holds = holds and point_lhs <= point_rhs

    return BellOriginalCheck(lhs=lhs, rhs=rhs, violated=violated, hidden_variable_bound_holds=holds)
