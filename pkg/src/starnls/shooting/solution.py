"""Decaying solution of the half-line Schrodinger equation with a sech^2 well.

The equation is

    -v'' + omega v - Q(x) v = lambda v,  Q(x) = (2p+1)(p+1) omega sech^2(p sqrt(omega) x),

normalized by v(x) exp(mu x) -> 1 as x -> +inf with mu = sqrt(omega - lambda).
It is integrated through w = v exp(mu x), which stays bounded on the whole line:

    w'' = 2 mu w' - Q(x) w,  w(X_max) = 1,  w'(X_max) = 0.
"""

from dataclasses import dataclass
from logging import Logger, getLogger
from math import acosh, exp, sqrt

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.integrate import OdeSolution, solve_ivp

from starnls.common.errors import LambdaAboveOmega, SolverFailure, ZeroDenominator
from starnls.graph import DEFAULT_TOLERANCES, ToleranceSet
from starnls.stationary import sech, soliton_derivative

logger: Logger = getLogger(__name__)

SAFETY_LENGTHS: float = 5.0
ZERO_RATIO: float = 1e-14
MAX_EXPONENT: float = 700.0


def well_depth(p: float, omega: float) -> float:
    """Peak Q0 = (2p+1)(p+1) omega of the linearized potential.

    Args:
        p: Nonlinearity power.
        omega: Frequency.

    Returns:
        Depth of the sech^2 well.
    """
    return (2.0 * p + 1.0) * (p + 1.0) * omega


def potential(p: float, omega: float, x: ArrayLike) -> NDArray[np.float64]:
    """The sech^2 well Q(x).

    Args:
        p: Nonlinearity power.
        omega: Frequency.
        x: Position(s).

    Returns:
        Q evaluated at x.
    """
    return well_depth(p, omega) * sech(p * sqrt(omega) * np.asarray(x)) ** 2


def far_field_start(
    p: float,
    omega: float,
    lam: float,
    far_field_cut: float,
) -> float:
    """Point beyond which Q / (omega - lambda) stays below far_field_cut.

    Args:
        p: Nonlinearity power.
        omega: Frequency.
        lam: Spectral parameter.
        far_field_cut: Ratio treated as negligible.

    Returns:
        X_max including a safety margin of five decay lengths.
    """
    width: float = 1.0 / (p * sqrt(omega))
    ratio: float = well_depth(p, omega) / (far_field_cut * (omega - lam))
    return width * (acosh(sqrt(max(ratio, 1.0))) + SAFETY_LENGTHS)


@dataclass(frozen=True, eq=False)
class ShootingSolution:
    """The decaying solution v(x; lambda) for x >= x_start.

    Attributes:
        p: Nonlinearity power.
        omega: Frequency.
        lam: Spectral parameter, below omega.
        mu: Decay rate sqrt(omega - lambda).
        x_start: Left end of the integrated range.
        x_max: Start of the backward integration, where w = 1 and w' = 0.
        dense: Interpolant of (w, w') on [x_start, x_max]; None when the well is disabled.
    """

    p: float
    omega: float
    lam: float
    mu: float
    x_start: float
    x_max: float
    dense: OdeSolution | None

    def w(self, x: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """Scaled solution w = v exp(mu x) and its derivative.

        Args:
            x: Position(s) at or right of x_start.

        Returns:
            Pair (w, w').

        Raises:
            ValueError: A point lies left of x_start.
        """
        grid: NDArray[np.float64] = np.asarray(x, dtype=np.float64)
        if np.any(grid < self.x_start - 1e-12 * max(1.0, abs(self.x_start))):
            msg: str = f"evaluation left of x_start={self.x_start}"
            raise ValueError(msg)

        flat: NDArray[np.float64] = grid.ravel()
        w: NDArray[np.float64] = np.ones_like(flat)
        dw: NDArray[np.float64] = np.zeros_like(flat)
        if self.dense is not None:
            inside: NDArray[np.bool_] = flat < self.x_max
            if np.any(inside):
                state: NDArray[np.float64] = np.asarray(
                    self.dense(np.clip(flat[inside], self.x_start, self.x_max)),
                )
                w[inside] = state[0]
                dw[inside] = state[1]
        return w.reshape(grid.shape), dw.reshape(grid.shape)

    def log_scale(self, x: ArrayLike) -> NDArray[np.float64]:
        """Exponent -mu x with v = w exp(-mu x).

        Args:
            x: Position(s).

        Returns:
            The logarithmic scale factor.
        """
        return -self.mu * np.asarray(x, dtype=np.float64)

    def values(self, x: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """Solution v and derivative v'.

        Args:
            x: Position(s) at or right of x_start, with mu * |x| below the overflow limit.

        Returns:
            Pair (v, v').

        Raises:
            OverflowError: The exponential scale exceeds double range; use w and log_scale.
        """
        scale: NDArray[np.float64] = self.log_scale(x)
        if np.any(scale > MAX_EXPONENT):
            msg: str = "v overflows at the requested points; use w() with log_scale()"
            raise OverflowError(msg)
        w: NDArray[np.float64]
        dw: NDArray[np.float64]
        w, dw = self.w(x)
        factor: NDArray[np.float64] = np.exp(scale)
        return w * factor, (dw - self.mu * w) * factor

    def v(self, x: ArrayLike) -> NDArray[np.float64]:
        """Solution v.

        Args:
            x: Position(s).

        Returns:
            v(x; lambda).
        """
        return self.values(x)[0]

    def normalization_defect(self) -> float:
        """Departure |w(X_max) - 1| of the far-field normalization."""
        return float(abs(self.w(self.x_max)[0] - 1.0))


def solve_decaying(
    p: float,
    omega: float,
    lam: float,
    x_min: float,
    tolerances: ToleranceSet = DEFAULT_TOLERANCES,
    *,
    well: bool = True,
) -> ShootingSolution:
    """Integrate the decaying solution backward from the far field down to x_min.

    Args:
        p: Nonlinearity power.
        omega: Frequency.
        lam: Spectral parameter.
        x_min: Left end of the range needed by the caller.
        tolerances: Solver tolerances.
        well: Include the sech^2 well; False gives the free solution exp(-mu x).

    Returns:
        The solution on [x_min, inf).

    Raises:
        LambdaAboveOmega: lam is not below omega.
        SolverFailure: The integrator did not reach x_min.
    """
    if not lam < omega:
        msg: str = f"lambda={lam} must lie below the continuum edge omega={omega}"
        raise LambdaAboveOmega(msg)

    mu: float = sqrt(omega - lam)
    x_max: float = far_field_start(p, omega, lam, tolerances.far_field_cut)
    if not well or x_min >= x_max:
        return ShootingSolution(p, omega, lam, mu, x_min, x_max, None)

    depth: float = well_depth(p, omega)
    rate: float = p * sqrt(omega)

    def rhs(x: float, y: NDArray[np.float64]) -> NDArray[np.float64]:
        z: float = exp(-abs(rate * x))
        q: float = depth * (2.0 * z / (1.0 + z * z)) ** 2
        return np.array([y[1], 2.0 * mu * y[1] - q * y[0]])

    logger.debug("integrating lambda=%.12g from %.6g to %.6g", lam, x_max, x_min)
    result = solve_ivp(  # pyright: ignore[reportUnknownVariableType]
        rhs,
        (x_max, x_min),
        np.array([1.0, 0.0]),
        method="DOP853",
        rtol=tolerances.ode_rel_tol,
        atol=tolerances.ode_rel_tol * 1e-3,
        dense_output=True,
    )
    if not result.success:  # pyright: ignore[reportUnknownMemberType]
        msg = f"shooting integration failed at lambda={lam}: {result.message}"  # pyright: ignore[reportUnknownMemberType]
        raise SolverFailure(msg)

    return ShootingSolution(p, omega, lam, mu, x_min, x_max, result.sol)  # pyright: ignore[reportUnknownMemberType, reportUnknownArgumentType]


def log_derivative(sol: ShootingSolution, x: float) -> float:
    """Logarithmic derivative v'(x) / v(x) = -mu + w'(x) / w(x).

    Args:
        sol: Decaying solution.
        x: Position at or right of sol.x_start.

    Returns:
        v'(x) / v(x).

    Raises:
        ZeroDenominator: x is at a zero of v to working precision.
    """
    w: NDArray[np.float64]
    dw: NDArray[np.float64]
    w, dw = sol.w(x)
    w_value: float = float(w)
    dw_value: float = float(dw)
    if w_value == 0 or abs(w_value) <= ZERO_RATIO * abs(dw_value) / sol.mu:
        msg: str = f"v vanishes at x={x} for lambda={sol.lam}"
        raise ZeroDenominator(msg)
    return -sol.mu + dw_value / w_value


def zero_solution(p: float, omega: float, x: ArrayLike) -> NDArray[np.float64]:
    """Closed form of the decaying solution at lambda = 0.

    The translation mode -C phi'(x) with C = 2^(-1/p) omega^(-(1+p)/2p).

    Args:
        p: Nonlinearity power.
        omega: Frequency.
        x: Position(s).

    Returns:
        v(x; 0).
    """
    c: float = 2.0 ** (-1.0 / p) * omega ** (-(1.0 + p) / (2.0 * p))
    return -c * soliton_derivative(p, omega, x)


def figure_curves(
    p: float,
    omega: float,
    lambdas: ArrayLike,
    x: ArrayLike,
    tolerances: ToleranceSet = DEFAULT_TOLERANCES,
) -> list[tuple[float, float, float]]:
    """Rows (lambda, x, v) of the decaying solution for several lambdas.

    Args:
        p: Nonlinearity power.
        omega: Frequency.
        lambdas: Spectral parameters below omega.
        x: Positions.
        tolerances: Solver tolerances.

    Returns:
        One row per (lambda, x) pair.
    """
    grid: NDArray[np.float64] = np.asarray(x, dtype=np.float64)
    rows: list[tuple[float, float, float]] = []
    lam: float
    for lam in np.asarray(lambdas, dtype=np.float64):
        sol: ShootingSolution = solve_decaying(
            p,
            omega,
            float(lam),
            float(grid.min()),
            tolerances,
        )
        values: NDArray[np.float64] = sol.v(grid)
        rows.extend(
            (float(lam), float(xi), float(vi))
            for xi, vi in zip(grid, values, strict=True)
        )
    return rows
