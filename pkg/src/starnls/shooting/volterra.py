"""Bounded-kernel integral equation for w = v exp(mu x).

    w(x) = 1 - 1 / (2 mu) int_x^inf (1 - exp(-2 mu (y - x))) Q(y) w(y) dy

The trapezoid discretization is upper triangular, so the Neumann series sums
to a single back substitution.
"""

from math import sqrt

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import solve_triangular

from starnls.common.errors import LambdaAboveOmega
from starnls.shooting.solution import potential


def volterra_solution(
    p: float,
    omega: float,
    lam: float,
    x: ArrayLike,
) -> NDArray[np.float64]:
    """Solve the integral equation for w on an increasing grid.

    The integral is truncated at the last grid point, which should lie in the far field.

    Args:
        p: Nonlinearity power.
        omega: Frequency.
        lam: Spectral parameter.
        x: Increasing grid.

    Returns:
        w at the grid points.

    Raises:
        LambdaAboveOmega: lam is not below omega.
    """
    if not lam < omega:
        msg: str = f"lambda={lam} must lie below omega={omega}"
        raise LambdaAboveOmega(msg)

    grid: NDArray[np.float64] = np.asarray(x, dtype=np.float64)
    mu: float = sqrt(omega - lam)

    weights: NDArray[np.float64] = np.empty_like(grid)
    weights[1:-1] = 0.5 * (grid[2:] - grid[:-2])
    weights[0] = 0.5 * (grid[1] - grid[0])
    weights[-1] = 0.5 * (grid[-1] - grid[-2])

    gap: NDArray[np.float64] = grid[np.newaxis, :] - grid[:, np.newaxis]
    kernel: NDArray[np.float64] = np.triu(
        -np.expm1(-2.0 * mu * np.maximum(gap, 0.0)),
        k=1,
    )
    kernel *= (weights * potential(p, omega, grid))[np.newaxis, :] / (2.0 * mu)

    system: NDArray[np.float64] = kernel
    system[np.diag_indices_from(system)] += 1.0
    return solve_triangular(system, np.ones_like(grid), lower=False)
