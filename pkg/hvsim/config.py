"""
Configuration settings for the hvsim toolkit.
"""

import math
from typing import Dict, Set


UNIT_TOL = 1e-12
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
WEIGHT_SUM_TOL = 1e-12
PSD_TOL = 1e-10
IMAG_RESIDUE_TOL = 1e-10
COLLINEAR_TOL = 1e-9
VALUE_MATCH_TOL = 1e-12
TILDE_SUM_THRESHOLD = 0.01


JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 50


OMEGA_MIN = -0.5
OMEGA_MAX = 0.5
DEFAULT_QUADRATURE_POINTS = 100_000


MARGINAL_SAMPLE_POINTS = 64
MARGINAL_QUADRATURE_POINTS = 4096
MARGINAL_RTOL = 1e-10


TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)
CLASSICAL_BOUND = 2.0


GRID_STEP_DEGREES = 15.0
SIMPLEX_MAX_ITERATIONS = 5000
SIMPLEX_XATOL = 1e-8
SIMPLEX_FATOL = 1e-10
DEFAULT_RESTARTS = 5


DEFAULT_SEED = 2012
DEFAULT_THREADS = 1


DEFAULT_TOLERANCES: Dict[str, float] = {
    "exact": 1e-12,
    "oracle": 1e-10,
    "quadrature": 1e-5,
    "bound": 1e-9,
    "optimizer": 1e-6,
    "werner": 1e-5,
    "bell": 1e-5,
}


SCENARIO_DEFAULTS: Dict[str, int] = {
    "verify-d2": 1000,
    "linearity-failure": 100,
    "chsh-paths": 1000,
    "bell-original": 1000,
    "factored": 10000,
    "singlet-max": 5,
    "separable-max": 10,
    "mixed-ekert": 16,
    "werner": 5,
    "norm-scan": 10000,
    "pure-criterion": 6,
}


MIXED_EKERT_MIXTURES = 1000
MIXED_EKERT_SETTINGS = 100
LINEARITY_GRID_POINTS = 1_000_000
D2_QUADRATURE_POINTS = 1_000_000
D2_QUADRATURE_CHECKS = 20
WITNESS_SAMPLES = 100_000
WERNER_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)


REPORT_FORMATS: Set[str] = {"json", "csv", "markdown"}
DEFAULT_REPORT_FORMAT = "json"
REPORT_SIGNIFICANT_DIGITS = 15
CSV_HEADER = ("scenario", "check", "expected", "observed", "tolerance", "pass")


CONFIG_FILE_KEYS: Set[str] = {
    "scenario",
    "seed",
    "samples",
    "tol",
    "format",
    "out",
    "threads",
    "options",
    "timing",
}

YAML_EXTENSIONS: Set[str] = {".yaml", ".yml"}
