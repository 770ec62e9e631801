"""Motivic statistics: Laurent-polynomial classes, Euler products, densities,
rational Witt vectors and finite-field verification."""

from .config import conf_class, kapranov_m
from .euler import EulerFactorSpec, PrecisionError, evaluate_at, expand, realize
from .motring import (
    DivergenceError, FilteredClass, L, LClass, TSeries, gl_class, kapranov_special_value,
    resolve_class, sigma_series, sym_n,
)
from .theorems import (
    DensityReport, complete_intersection_density, lnk, m_singular_density, p1_smooth_class,
    surjection_density, vakil_wood_density,
)
from .witt import WittDivisor, ghost, kapranov_special_witt, sigma_s, specialize

__all__ = [
    "LClass", "FilteredClass", "TSeries", "L", "DivergenceError", "PrecisionError",
    "gl_class", "kapranov_special_value", "resolve_class", "sigma_series", "sym_n",
    "conf_class", "kapranov_m", "EulerFactorSpec", "expand", "evaluate_at", "realize",
    "DensityReport", "vakil_wood_density", "complete_intersection_density",
    "m_singular_density", "surjection_density", "lnk", "p1_smooth_class",
    "WittDivisor", "specialize", "ghost", "sigma_s", "kapranov_special_witt",
]
