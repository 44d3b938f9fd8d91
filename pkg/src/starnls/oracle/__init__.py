"""Finite-element check of the index counts on the truncated star graph."""

from .assembly import (
    DiscreteOperator,
    Operator,
    StarMatrix,
    assemble,
    gauss_points,
    lumped_mass_matrix,
    mass_matrix,
    minimum_length,
    potential_matrix,
    stiffness_matrix,
)
from .inertia import (
    InertiaResult,
    OracleCounts,
    count_below,
    eigenpairs_below,
    eigenvalues_below,
    inertia,
    match_tolerance,
    oracle_counts,
    whole_line_eigenvalues,
    zero_window,
)
from .report import OracleReport, run_oracle

__all__ = [
    "DiscreteOperator",
    "InertiaResult",
    "Operator",
    "OracleCounts",
    "OracleReport",
    "StarMatrix",
    "assemble",
    "count_below",
    "eigenpairs_below",
    "eigenvalues_below",
    "gauss_points",
    "inertia",
    "lumped_mass_matrix",
    "mass_matrix",
    "match_tolerance",
    "minimum_length",
    "oracle_counts",
    "potential_matrix",
    "run_oracle",
    "stiffness_matrix",
    "whole_line_eigenvalues",
    "zero_window",
]
