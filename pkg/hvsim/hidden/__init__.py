"""
Hidden-variables package.

This package contains Bell's dispersion-free model for one spin-1/2 system,
the two-path local evaluator of the CHSH operator and the factored model for
pure separable states.
"""

from hvsim.hidden.bell_d2 import (
    HiddenVarOmega,
    MixCoefficient,
    Spectral2,
    dispersion_free_observable,
    dispersion_free_projector,
    integrate_observable,
    integrate_projector,
    integrated_linearity,
    linearity_failure_measure,
    spectral_decompose,
)
from hvsim.hidden.chsh_paths import (
    ChshReport,
    DichotomicAssignment,
    Path,
    WeightVector,
    bell_original_check,
    discrepancy_report,
    enumerate_assignments,
    max_over_weights,
    path_a_value,
    path_b_value,
)
from hvsim.hidden.factored import (
    FactoredChshReport,
    FactoredModel,
    factored_chsh,
    linearity_after_integration,
    marginal_weights,
    pointwise_nonlinearity_witness,
    product_expectation,
)

__all__ = [
    "HiddenVarOmega",
    "MixCoefficient",
    "Spectral2",
    "dispersion_free_observable",
    "dispersion_free_projector",
    "integrate_observable",
    "integrate_projector",
    "integrated_linearity",
    "linearity_failure_measure",
    "spectral_decompose",
    "ChshReport",
    "DichotomicAssignment",
    "Path",
    "WeightVector",
    "bell_original_check",
    "discrepancy_report",
    "enumerate_assignments",
    "max_over_weights",
    "path_a_value",
    "path_b_value",
    "FactoredChshReport",
    "FactoredModel",
    "factored_chsh",
    "linearity_after_integration",
    "marginal_weights",
    "pointwise_nonlinearity_witness",
    "product_expectation",
]
