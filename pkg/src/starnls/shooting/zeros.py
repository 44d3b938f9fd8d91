"""Special spectral values of the half-line problem and the zero of v."""

from dataclasses import dataclass
from logging import Logger, getLogger
from math import sqrt

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import brentq

from starnls.common.errors import BracketFailure, NoZero
from starnls.graph import DEFAULT_TOLERANCES, ToleranceSet
from starnls.shooting.solution import ShootingSolution, solve_decaying

logger: Logger = getLogger(__name__)

MAX_SEARCH_LENGTHS: float = 400.0


@dataclass(frozen=True)
class ZeroLocation:
    """The unique zero of v(.; lambda) for lambda in (lambda0, 0].

    Attributes:
        lam: Spectral parameter.
        x0: Position of the zero, nonpositive.
        slope: v'(x0), strictly positive since the zero is simple.
    """

    lam: float
    x0: float
    slope: float


def lambda0_closed_form(p: float, omega: float) -> float:
    """Ground state omega (1 - (p + 1)^2) of the whole-line sech^2 well.

    Args:
        p: Nonlinearity power.
        omega: Frequency.

    Returns:
        The negative eigenvalue with an even eigenfunction.
    """
    return omega * (1.0 - (p + 1.0) ** 2)


def vertex_slope(
    p: float,
    omega: float,
    lam: float,
    tolerances: ToleranceSet = DEFAULT_TOLERANCES,
) -> float:
    """Sign-faithful proxy w'(0) - mu w(0) = v'(0; lambda).

    Args:
        p: Nonlinearity power.
        omega: Frequency.
        lam: Spectral parameter.
        tolerances: Solver tolerances.

    Returns:
        v'(0; lambda).
    """
    sol: ShootingSolution = solve_decaying(p, omega, lam, 0.0, tolerances)
    w: NDArray[np.float64]
    dw: NDArray[np.float64]
    w, dw = sol.w(0.0)
    return float(dw - sol.mu * w)


def find_lambda0(
    p: float,
    omega: float,
    tolerances: ToleranceSet = DEFAULT_TOLERANCES,
) -> float:
    """Locate the unique negative lambda with v'(0; lambda) = 0.

    Args:
        p: Nonlinearity power.
        omega: Frequency.
        tolerances: Solver tolerances.

    Returns:
        lambda0.

    Raises:
        BracketFailure: v'(0) has no sign change on [2 omega (1 - (p+1)^2), 0].
    """
    lo: float = 2.0 * lambda0_closed_form(p, omega)
    hi: float = 0.0
    f_lo: float = vertex_slope(p, omega, lo, tolerances)
    f_hi: float = vertex_slope(p, omega, hi, tolerances)
    if f_lo * f_hi > 0:
        msg: str = f"v'(0) keeps its sign on [{lo}, {hi}] for p={p}, omega={omega}"
        raise BracketFailure(msg)

    root: float = brentq(  # pyright: ignore[reportAssignmentType]
        lambda lam: vertex_slope(p, omega, lam, tolerances),
        lo,
        hi,
        xtol=tolerances.root_tol * omega * 1e-3,
        rtol=tolerances.root_tol,
    )
    logger.debug(
        "lambda0=%.15g (closed form %.15g)",
        root,
        lambda0_closed_form(p, omega),
    )
    return root


def track_zero(
    p: float,
    omega: float,
    lam: float,
    tolerances: ToleranceSet = DEFAULT_TOLERANCES,
) -> ZeroLocation:
    """Find the unique zero x0(lambda) of the decaying solution.

    Args:
        p: Nonlinearity power.
        omega: Frequency.
        lam: Spectral parameter in (lambda0, 0].
        tolerances: Solver tolerances.

    Returns:
        The zero and the slope of v there.

    Raises:
        ValueError: lam is positive.
        NoZero: lam <= lambda0, where v is positive on the whole line.
    """
    if lam > 0:
        msg: str = f"zero tracking needs lambda <= 0, got {lam}"
        raise ValueError(msg)
    if lam <= lambda0_closed_form(p, omega):
        msg = f"v(.; {lam}) has no zero below lambda0"
        raise NoZero(msg)

    width: float = 1.0 / (p * sqrt(omega))
    if lam == 0:
        sol: ShootingSolution = solve_decaying(p, omega, lam, 0.0, tolerances)
        return ZeroLocation(lam, 0.0, float(sol.values(0.0)[1]))

    x_left: float = -width
    sol = solve_decaying(p, omega, lam, x_left, tolerances)
    while float(sol.w(x_left)[0]) > 0:
        x_left *= 2.0
        if x_left < -MAX_SEARCH_LENGTHS * width:
            msg = f"no sign change of v(.; {lam}) down to x={x_left}"
            raise NoZero(msg)
        sol = solve_decaying(p, omega, lam, x_left, tolerances)

    x0: float = brentq(  # pyright: ignore[reportAssignmentType]
        lambda x: float(sol.w(x)[0]),
        x_left,
        sol.x_max,
        xtol=tolerances.root_tol * width,
        rtol=tolerances.root_tol,
    )
    logger.debug("x0(%.12g) = %.12g", lam, x0)
    return ZeroLocation(lam, x0, float(sol.values(x0)[1]))
