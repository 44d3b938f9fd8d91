"""Star graph parameters shared by every other subpackage."""

from .params import (
    DEFAULT_TOLERANCES,
    BranchParams,
    GraphConfig,
    ToleranceSet,
    omega_threshold,
    rescale,
    validate,
    validate_graph,
)

__all__ = [
    "DEFAULT_TOLERANCES",
    "BranchParams",
    "GraphConfig",
    "ToleranceSet",
    "omega_threshold",
    "rescale",
    "validate",
    "validate_graph",
]
