"""Decaying solutions of the half-line problem with a sech^2 well and their zeros."""

from .solution import (
    ShootingSolution,
    far_field_start,
    figure_curves,
    log_derivative,
    potential,
    solve_decaying,
    well_depth,
    zero_solution,
)
from .volterra import volterra_solution
from .zeros import (
    ZeroLocation,
    find_lambda0,
    lambda0_closed_form,
    track_zero,
    vertex_slope,
)

__all__ = [
    "ShootingSolution",
    "ZeroLocation",
    "far_field_start",
    "figure_curves",
    "find_lambda0",
    "lambda0_closed_form",
    "log_derivative",
    "potential",
    "solve_decaying",
    "track_zero",
    "vertex_slope",
    "volterra_solution",
    "well_depth",
    "zero_solution",
]
