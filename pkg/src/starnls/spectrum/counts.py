"""Morse and degeneracy indices of the linearized operators L+ and L-.

An eigenfunction of L+ with eigenvalue lambda <= 0 is v(x + a_K) on the first
K edges and v(x - a_K) on the others, up to per-edge constants, where v is the
decaying solution of the half-line problem. The vertex conditions then reduce
to a determinant

    det M = v(a)^(K-1) v(-a)^(N-K-1) [K v'(a) v(-a) + (N-K) v(a) v'(-a) - alpha v(a) v(-a)],

whose first two factors give eigenvalues of multiplicity K-1 and N-K-1, and
whose bracket gives simple eigenvalues, the roots of F(lambda) = alpha.
"""

from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum
from logging import Logger, getLogger
from typing import Any, NamedTuple

import numpy as np
from scipy.optimize import brentq

from starnls.common.errors import BracketFailure, ZeroDenominator
from starnls.graph import (
    DEFAULT_TOLERANCES,
    BranchParams,
    GraphConfig,
    ToleranceSet,
    validate,
)
from starnls.shooting import (
    ShootingSolution,
    lambda0_closed_form,
    log_derivative,
    solve_decaying,
)
from starnls.stationary import shift

logger: Logger = getLogger(__name__)

MAX_EXPANSIONS: int = 64
STABLE_POWER_LIMIT: float = 2.0
ADJACENCY_FACTOR: float = 10.0


class RecordKind(Enum):
    """Which factor of the vertex determinant produced an eigenvalue."""

    CASE_A_BUMP_ZERO = "case_a_bump_zero"
    CASE_B_TAIL_ZERO = "case_b_tail_zero"
    CASE_C_SCALAR = "case_c_scalar"


class Verdict(Enum):
    """Stability label attached to the index count."""

    UNSTABLE = "unstable"
    STABLE_CANDIDATE = "stable_candidate"


@dataclass(frozen=True)
class EigenvalueRecord:
    """A nonpositive eigenvalue of L+.

    Attributes:
        lam: Eigenvalue.
        multiplicity: K-1 for case a, N-K-1 for case b, 1 for case c.
        kind: Determinant factor that vanishes.
    """

    lam: float
    multiplicity: int
    kind: RecordKind


class DeterminantFactors(NamedTuple):
    """Factors of the vertex determinant at one lambda.

    Attributes:
        bump_value: v(a_K); 1.0 when K = 0 and the factor is absent.
        tail_value: v(-a_K).
        case_c: The bracket of the determinant (N v'(-a) - alpha v(-a) when K = 0).
    """

    bump_value: float
    tail_value: float
    case_c: float


@dataclass(frozen=True)
class SpectralReport:
    """Index count of one stationary state.

    Attributes:
        config: Star graph.
        branch: Frequency and branch index.
        records: Nonpositive eigenvalues of L+ in increasing order.
        n_lplus: Number of negative eigenvalues of L+ with multiplicity.
        z_lplus: Dimension of the kernel of L+.
        n_lminus: Number of negative eigenvalues of L-.
        z_lminus: Dimension of the kernel of L-.
        verdict: Stability label implied by the count.
        lambda_star: Zero of v(-|a_K|; lambda), the pole of F; None when not needed.
        orbitally_stable: True for the symmetric attractive state with p <= 2, False
            for unstable states, None when the count does not decide.
        continuum_edge: Bottom omega of the continuous spectrum.
        warnings: Numerical caveats raised while counting.
    """

    config: GraphConfig
    branch: BranchParams
    records: tuple[EigenvalueRecord, ...]
    n_lplus: int
    z_lplus: int
    n_lminus: int
    z_lminus: int
    verdict: Verdict
    lambda_star: float | None
    orbitally_stable: bool | None
    continuum_edge: float
    warnings: tuple[str, ...] = ()

    def eigenvalues(self) -> list[float]:
        """Eigenvalues repeated according to multiplicity."""
        return [r.lam for r in self.records for _ in range(r.multiplicity)]

    def to_dict(self) -> dict[str, Any]:  # pyright: ignore[reportExplicitAny]
        """Serializable form following the spectrum report schema."""
        return {
            "config": {"n": self.config.n, "alpha": self.config.alpha, "p": self.config.p},
            "branch": {"omega": self.branch.omega, "k": self.branch.k},
            "eigenvalues": [
                {"lambda": r.lam, "multiplicity": r.multiplicity, "kind": r.kind.value}
                for r in self.records
            ],
            "n_Lplus": self.n_lplus,
            "z_Lplus": self.z_lplus,
            "n_Lminus": self.n_lminus,
            "z_Lminus": self.z_lminus,
            "verdict": self.verdict.value,
            "lambda_star": self.lambda_star,
            "orbitally_stable": self.orbitally_stable,
            "continuum_edge": self.continuum_edge,
            "warnings": list(self.warnings),
        }


def has_pole(config: GraphConfig, branch: BranchParams) -> bool:
    """Whether F has a pole on (-inf, 0].

    Args:
        config: Star graph.
        branch: Frequency and branch index.

    Returns:
        True unless alpha < 0 and K = 0.
    """
    return config.alpha > 0 or branch.k >= 1


def expected_morse_index(config: GraphConfig, branch: BranchParams) -> int:
    """Closed-form n(L+): K + 1 for alpha < 0, N - K for alpha > 0.

    Args:
        config: Star graph.
        branch: Frequency and branch index.

    Returns:
        The Morse index of L+.
    """
    return branch.k + 1 if config.alpha < 0 else config.n - branch.k


def F_zero_closed_form(config: GraphConfig, branch: BranchParams) -> float:  # noqa: N802
    """F(0) = p (alpha^2 - (N - 2K)^2 omega) / alpha + alpha.

    Args:
        config: Star graph.
        branch: Frequency and branch index.

    Returns:
        Value of F at lambda = 0.
    """
    alpha: float = config.alpha
    return (
        config.p * (alpha**2 - (config.n - 2 * branch.k) ** 2 * branch.omega) / alpha
        + alpha
    )


def _solve_at(
    config: GraphConfig,
    branch: BranchParams,
    lam: float,
    tolerances: ToleranceSet,
) -> tuple[ShootingSolution, float]:
    if lam > 0:
        msg: str = f"the count only needs lambda <= 0, got {lam}"
        raise ValueError(msg)
    a_k: float = shift(config, branch)
    return solve_decaying(config.p, branch.omega, lam, -abs(a_k), tolerances), a_k


def F(  # noqa: N802
    config: GraphConfig,
    branch: BranchParams,
    lam: float,
    tolerances: ToleranceSet = DEFAULT_TOLERANCES,
) -> float | None:
    """F(lambda) = K v'(a)/v(a) + (N - K) v'(-a)/v(-a) at a = a_K.

    Args:
        config: Star graph.
        branch: Frequency and branch index.
        lam: Spectral parameter, at most 0.
        tolerances: Solver tolerances.

    Returns:
        F(lambda), or None at the pole where v(-|a_K|; lambda) vanishes.
    """
    sol: ShootingSolution
    a_k: float
    sol, a_k = _solve_at(config, branch, lam, tolerances)
    try:
        tail: float = log_derivative(sol, -a_k)
        bump: float = log_derivative(sol, a_k) if branch.k > 0 else 0.0
    except ZeroDenominator:
        return None
    return branch.k * bump + (config.n - branch.k) * tail


def _case_c(sol: ShootingSolution, config: GraphConfig, k: int, a_k: float) -> float:
    # scaled by exp(mu a) when K = 0; the exponential factors cancel otherwise
    w_a: float
    dw_a: float
    w_b: float
    dw_b: float
    w_a, dw_a = (float(v) for v in sol.w(a_k))
    w_b, dw_b = (float(v) for v in sol.w(-a_k))
    dv_a: float = dw_a - sol.mu * w_a
    dv_b: float = dw_b - sol.mu * w_b
    if k == 0:
        return config.n * dv_b - config.alpha * w_b
    return k * dv_a * w_b + (config.n - k) * w_a * dv_b - config.alpha * w_a * w_b


def det_M_condition(  # noqa: N802
    config: GraphConfig,
    branch: BranchParams,
    lam: float,
    tolerances: ToleranceSet = DEFAULT_TOLERANCES,
) -> DeterminantFactors:
    """Evaluate the three factors of the vertex determinant.

    Args:
        config: Star graph.
        branch: Frequency and branch index.
        lam: Spectral parameter, at most 0.
        tolerances: Solver tolerances.

    Returns:
        v(a_K), v(-a_K) and the case c bracket.
    """
    sol: ShootingSolution
    a_k: float
    sol, a_k = _solve_at(config, branch, lam, tolerances)
    bump: float = float(sol.v(a_k)) if branch.k > 0 else 1.0
    tail: float = float(sol.v(-a_k))
    case_c: float = _case_c(sol, config, branch.k, a_k)
    if branch.k == 0:
        case_c *= float(np.exp(sol.mu * a_k))
    return DeterminantFactors(bump, tail, case_c)


def _left_value(
    config: GraphConfig,
    branch: BranchParams,
    lam: float,
    tolerances: ToleranceSet,
) -> float:
    sol: ShootingSolution
    a_k: float
    sol, a_k = _solve_at(config, branch, lam, tolerances)
    return float(sol.w(-abs(a_k))[0])


def find_lambda_star(
    config: GraphConfig,
    branch: BranchParams,
    tolerances: ToleranceSet = DEFAULT_TOLERANCES,
) -> float:
    """Locate the unique lambda at which v(-|a_K|; lambda) = 0.

    Args:
        config: Star graph.
        branch: Frequency and branch index.
        tolerances: Solver tolerances.

    Returns:
        lambda_star in (lambda0, 0).

    Raises:
        BracketFailure: v(-|a_K|) keeps its sign on the search interval.
    """
    omega: float = branch.omega
    lo: float = lambda0_closed_form(config.p, omega)
    step: float = 1e-3 * omega
    expansions: int = 0
    while _left_value(config, branch, lo, tolerances) <= 0:
        lo -= step
        step *= 2.0
        expansions += 1
        if expansions > MAX_EXPANSIONS:
            msg: str = "v(-|a_K|) is not positive below lambda0"
            raise BracketFailure(msg)

    hi: float = 0.0
    if _left_value(config, branch, hi, tolerances) >= 0:
        msg = "v(-|a_K|; 0) is not negative"
        raise BracketFailure(msg)

    root: float = brentq(  # pyright: ignore[reportAssignmentType]
        lambda lam: _left_value(config, branch, lam, tolerances),
        lo,
        hi,
        xtol=tolerances.root_tol * omega * 1e-3,
        rtol=tolerances.root_tol,
    )
    logger.debug("lambda_star=%.15g for %s, %s", root, config, branch)
    return root


def _case_c_value(
    config: GraphConfig,
    branch: BranchParams,
    lam: float,
    tolerances: ToleranceSet,
) -> float:
    sol: ShootingSolution
    a_k: float
    sol, a_k = _solve_at(config, branch, lam, tolerances)
    return _case_c(sol, config, branch.k, a_k)


def _root(
    config: GraphConfig,
    branch: BranchParams,
    lo: float,
    hi: float,
    tolerances: ToleranceSet,
) -> float:
    f_lo: float = _case_c_value(config, branch, lo, tolerances)
    f_hi: float = _case_c_value(config, branch, hi, tolerances)
    if f_lo * f_hi > 0:
        msg: str = f"F - alpha has no sign change on [{lo}, {hi}]"
        raise BracketFailure(msg)
    return brentq(  # pyright: ignore[reportReturnType]
        lambda lam: _case_c_value(config, branch, lam, tolerances),
        lo,
        hi,
        xtol=tolerances.root_tol * branch.omega * 1e-3,
        rtol=tolerances.root_tol,
    )


def solve_F_equals_alpha(  # noqa: N802
    config: GraphConfig,
    branch: BranchParams,
    tolerances: ToleranceSet = DEFAULT_TOLERANCES,
    lambda_star: float | None = None,
) -> list[float]:
    """All roots of F(lambda) = alpha on (-inf, 0].

    The roots are found on the case c bracket of the determinant, which is
    continuous through the pole of F and shares its roots.

    Args:
        config: Star graph.
        branch: Frequency and branch index.
        tolerances: Solver tolerances.
        lambda_star: Pole of F if already known.

    Returns:
        Two roots around the pole for alpha < 0 and K >= 1, one root otherwise.

    Raises:
        BracketFailure: F stays above alpha however far left the search goes.
    """
    validate(config, branch)
    pole: bool = has_pole(config, branch)
    if pole and lambda_star is None:
        lambda_star = find_lambda_star(config, branch, tolerances)

    start: float = lambda_star if pole and lambda_star is not None else 0.0
    step: float = branch.omega
    lo: float = start - step
    expansions: int = 0
    while True:
        value: float | None = F(config, branch, lo, tolerances)
        if value is not None and value < config.alpha:
            break
        step *= 2.0
        lo = start - step
        expansions += 1
        if expansions > MAX_EXPANSIONS:
            msg: str = "could not bracket the lowest root of F = alpha"
            raise BracketFailure(msg)
    logger.debug("lower bracket %.6g after %d expansions", lo, expansions)

    roots: list[float] = [_root(config, branch, lo, start, tolerances)]
    if pole and config.alpha < 0:
        roots.append(_root(config, branch, start, 0.0, tolerances))
    return roots


def F_curve(  # noqa: N802
    config: GraphConfig,
    branch: BranchParams,
    lambdas: Iterable[float],
    tolerances: ToleranceSet = DEFAULT_TOLERANCES,
) -> list[tuple[float, float | None]]:
    """Rows (lambda, F) with None at the pole.

    Args:
        config: Star graph.
        branch: Frequency and branch index.
        lambdas: Nonpositive spectral parameters.
        tolerances: Solver tolerances.

    Returns:
        One row per lambda.
    """
    return [(float(lam), F(config, branch, float(lam), tolerances)) for lam in lambdas]


def positive_side_holds(
    config: GraphConfig,
    branch: BranchParams,
    lambdas: Iterable[float],
    tolerances: ToleranceSet = DEFAULT_TOLERANCES,
) -> bool:
    """Spot-check v(|a_K|; lambda) > 0, which rules out the other zero factor.

    Args:
        config: Star graph.
        branch: Frequency and branch index.
        lambdas: Nonpositive spectral parameters to sample.
        tolerances: Solver tolerances.

    Returns:
        True if v(|a_K|) is positive at every sample.
    """
    a_k: float = abs(shift(config, branch))
    lam: float
    for lam in lambdas:
        sol: ShootingSolution = solve_decaying(
            config.p,
            branch.omega,
            lam,
            a_k,
            tolerances,
        )
        if float(sol.w(a_k)[0]) <= 0:
            return False
    return True


def assemble_report(
    config: GraphConfig,
    branch: BranchParams,
    tolerances: ToleranceSet = DEFAULT_TOLERANCES,
) -> SpectralReport:
    """Count the nonpositive spectrum of L+ and attach the stability labels.

    Args:
        config: Star graph.
        branch: Frequency and branch index.
        tolerances: Solver tolerances.

    Returns:
        The spectral report.
    """
    validate(config, branch)

    warnings: list[str] = []
    lambda_star: float | None = None
    if has_pole(config, branch):
        lambda_star = find_lambda_star(config, branch, tolerances)

    roots: list[float] = solve_F_equals_alpha(config, branch, tolerances, lambda_star)
    records: list[EigenvalueRecord] = [
        EigenvalueRecord(lam, 1, RecordKind.CASE_C_SCALAR) for lam in roots
    ]
    if lambda_star is not None:
        if config.alpha < 0 and branch.k >= 2:  # noqa: PLR2004
            records.append(
                EigenvalueRecord(lambda_star, branch.k - 1, RecordKind.CASE_A_BUMP_ZERO),
            )
        elif config.alpha > 0:
            records.append(
                EigenvalueRecord(
                    lambda_star,
                    config.n - branch.k - 1,
                    RecordKind.CASE_B_TAIL_ZERO,
                ),
            )
        gap: float = abs(roots[0] - lambda_star)
        if gap < ADJACENCY_FACTOR * tolerances.root_tol * abs(lambda_star):
            warning: str = (
                f"lambda_1={roots[0]:.12g} and lambda_star={lambda_star:.12g} "
                "are adjacent to within root tolerance"
            )
            logger.warning(warning)
            warnings.append(warning)

    samples: list[float] = [*roots, 0.0]
    if lambda_star is not None:
        samples.append(lambda_star)
    if not positive_side_holds(config, branch, samples, tolerances):
        warning = "v(|a_K|) is not positive at every sampled eigenvalue"
        logger.warning(warning)
        warnings.append(warning)

    records.sort(key=lambda r: r.lam)
    threshold: float = tolerances.zero_threshold(branch.omega)
    n_lplus: int = sum(r.multiplicity for r in records if r.lam < -threshold)
    z_lplus: int = sum(r.multiplicity for r in records if abs(r.lam) <= threshold)

    unstable: bool = config.alpha > 0 or branch.k >= 1
    orbitally_stable: bool | None
    if unstable:
        orbitally_stable = False
    elif config.p <= STABLE_POWER_LIMIT:
        orbitally_stable = True
    else:
        orbitally_stable = None

    return SpectralReport(
        config=config,
        branch=branch,
        records=tuple(records),
        n_lplus=n_lplus,
        z_lplus=z_lplus,
        n_lminus=0,
        z_lminus=1,
        verdict=Verdict.UNSTABLE if unstable else Verdict.STABLE_CANDIDATE,
        lambda_star=lambda_star,
        orbitally_stable=orbitally_stable,
        continuum_edge=branch.omega,
        warnings=tuple(warnings),
    )
