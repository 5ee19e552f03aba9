"""
Optimization package for CHSH values over measurement settings.
"""

from hvsim.optimize.search import (
    AngleParams,
    OptResult,
    coplanar_grid_max,
    correlation_bound,
    maximize_chsh,
    saturation_scan,
)

__all__ = [
    "AngleParams",
    "OptResult",
    "coplanar_grid_max",
    "correlation_bound",
    "maximize_chsh",
    "saturation_scan",
]
