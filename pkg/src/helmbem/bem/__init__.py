"""Galerkin boundary-element spaces, assembly, solve and projections."""

from .assembly import GalerkinSystem, assemble, kernel_for, load_vector
from .projection import (
    ConditionEstimate,
    DensityVector,
    FourierProjector,
    best_approx_error,
    estimate_qo_condition_norm,
    galerkin_error,
    l2_distance,
    l2_project,
    qo_condition_norm_exact,
)
from .solver import solve_galerkin
from .space import BoundarySpace, Mesh, build_space, panel_count, quadrature_order

__all__ = [
    "BoundarySpace", "ConditionEstimate", "DensityVector", "FourierProjector",
    "GalerkinSystem", "Mesh", "assemble", "best_approx_error", "build_space",
    "estimate_qo_condition_norm", "galerkin_error", "kernel_for", "l2_distance",
    "l2_project", "load_vector", "panel_count", "qo_condition_norm_exact", "quadrature_order",
    "solve_galerkin",
]
