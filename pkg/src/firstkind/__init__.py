"""Classification of simply connected planar domains of first and second kind.

A domain is given by the Taylor coefficients of its Riemann map from the unit
disk. The package locates the maxima of the Robin function, recentres the map
at the top maximum and decides the kind from the coefficient invariant ``D``.
"""

from .catalog import appendix3, builtin_map, disk, f3, nonunivalent
from .classify import A_integral, ClassificationResult, D_series, classify
from .config import DEFAULT_CONFIG, QuadratureConfig, load_config
from .deformations import (
    DeformationFamily,
    builtin_family,
    coefficient_path,
    d_infty,
    family_at,
    scaling_path,
    sweep,
    threshold_bisect,
)
from .geometry import check_S_I, check_starlike, check_univalent
from .greens import green, hadamard_check, inverse_map
from .robin import count_maxima, find_critical_points, robin_gradient, robin_value
from .series import CoefficientMap, NormalizedMap, recenter, rotate, scale, series_area

__all__ = [
    "A_integral",
    "ClassificationResult",
    "CoefficientMap",
    "DEFAULT_CONFIG",
    "D_series",
    "DeformationFamily",
    "NormalizedMap",
    "QuadratureConfig",
    "appendix3",
    "builtin_family",
    "builtin_map",
    "check_S_I",
    "check_starlike",
    "check_univalent",
    "classify",
    "coefficient_path",
    "count_maxima",
    "d_infty",
    "disk",
    "f3",
    "family_at",
    "find_critical_points",
    "green",
    "hadamard_check",
    "inverse_map",
    "load_config",
    "nonunivalent",
    "recenter",
    "robin_gradient",
    "robin_value",
    "rotate",
    "scale",
    "scaling_path",
    "series_area",
    "sweep",
    "threshold_bisect",
]
