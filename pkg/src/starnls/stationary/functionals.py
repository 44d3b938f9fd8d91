"""Mass and energy of fields on the star graph.

Both functionals are reconstructed from the evolution equation and the delta
vertex condition:

    mass(psi)   = sum_j int |psi_j|^2 dx
    energy(psi) = sum_j int |psi_j'|^2 dx + alpha |psi(0)|^2 - sum_j int |psi_j|^(2p+2) dx

Fields are sampled on a common uniform grid starting at the vertex, one row per edge.
"""

from math import sqrt

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.integrate import simpson
from scipy.special import beta, betainc

from starnls.common.errors import VertexMismatch
from starnls.graph import GraphConfig
from starnls.stationary.state import StationaryState

VERTEX_RTOL: float = 1e-8


def mass(values: ArrayLike, x: ArrayLike) -> float:
    """Total mass of a sampled field.

    Args:
        values: Edge samples of shape (N, len(x)), real or complex.
        x: Uniform grid from the vertex.

    Returns:
        Sum over edges of the Simpson integral of |psi_j|^2.
    """
    field: NDArray[np.complex128] = np.asarray(values)
    return float(np.sum(simpson(np.abs(field) ** 2, x=np.asarray(x), axis=-1)))


def check_vertex(values: ArrayLike) -> complex:
    """Check continuity of a sampled field at the vertex.

    Args:
        values: Edge samples of shape (N, M).

    Returns:
        Mean vertex value.

    Raises:
        VertexMismatch: Edge values at the vertex differ by more than 1e-8 relative.
    """
    vertex: NDArray[np.complex128] = np.asarray(values)[:, 0]
    scale: float = float(np.max(np.abs(vertex)))
    spread: float = float(np.max(np.abs(vertex - vertex[0])))
    if spread > VERTEX_RTOL * scale:
        msg: str = f"edge values at the vertex differ by {spread:.3e} (scale {scale:.3e})"
        raise VertexMismatch(msg)
    return complex(np.mean(vertex))


def energy(values: ArrayLike, x: ArrayLike, config: GraphConfig) -> float:
    """Energy of a sampled field.

    Args:
        values: Edge samples of shape (N, len(x)), real or complex.
        x: Uniform grid from the vertex.
        config: Star graph providing alpha and p.

    Returns:
        Kinetic plus vertex minus nonlinear energy.
    """
    field: NDArray[np.complex128] = np.asarray(values)
    grid: NDArray[np.float64] = np.asarray(x, dtype=np.float64)
    vertex: complex = check_vertex(field)

    gradient: NDArray[np.complex128] = np.gradient(field, grid, axis=-1, edge_order=2)
    kinetic: float = float(np.sum(simpson(np.abs(gradient) ** 2, x=grid, axis=-1)))
    potential: float = float(
        np.sum(
            simpson(np.abs(field) ** (2.0 * config.p + 2.0), x=grid, axis=-1),
        ),
    )
    return kinetic + config.alpha * abs(vertex) ** 2 - potential


def state_mass(state: StationaryState) -> float:
    """Mass of a stationary state from the incomplete beta function.

    Args:
        state: Stationary state.

    Returns:
        Exact mass on the untruncated half-lines.
    """
    p: float = state.config.p
    b: float = 1.0 / p
    scale: float = state.amplitude**2 / (p * sqrt(state.branch.omega))
    total: float = 0.0
    for center in state.centers:
        t0: float = float(np.tanh(-p * sqrt(state.branch.omega) * center))
        tail: float = 1.0 - np.sign(t0) * betainc(0.5, b, t0 * t0)
        total += scale * 0.5 * beta(0.5, b) * tail
    return total
