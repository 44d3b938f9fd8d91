"""Time evolution of the NLS equation on the truncated star graph."""

from .experiment import (
    Direction,
    EvolutionTrace,
    instability_experiment,
    perturbation,
)
from .field import Field, StarGrid
from .propagator import Propagator, orbital_distance, step

__all__ = [
    "Direction",
    "EvolutionTrace",
    "Field",
    "Propagator",
    "StarGrid",
    "instability_experiment",
    "orbital_distance",
    "perturbation",
    "step",
]
