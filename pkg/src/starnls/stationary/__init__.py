"""Closed-form stationary states and their conserved functionals."""

from .functionals import check_vertex, energy, mass, state_mass
from .state import (
    EdgeKind,
    StationaryState,
    available_branches,
    build_state,
    profile_table,
    residual_stationary,
    sech,
    shift,
    soliton_derivative,
    soliton_profile,
    soliton_second_derivative,
)

__all__ = [
    "EdgeKind",
    "StationaryState",
    "available_branches",
    "build_state",
    "check_vertex",
    "energy",
    "mass",
    "profile_table",
    "residual_stationary",
    "sech",
    "shift",
    "soliton_derivative",
    "soliton_profile",
    "soliton_second_derivative",
    "state_mass",
]
