"""Eigenvalue counts of the discrete pencil by Sylvester inertia.

The shifted matrix A - sigma B is factorized as L D L^T with the vertex
unknown eliminated last. Each edge block is tridiagonal, so elimination runs
from the Dirichlet end toward the vertex on every edge at once, and the vertex
pivot is the Schur complement a_0 - sum_j b_j^2 / d_j1.
"""

from dataclasses import dataclass
from logging import Logger, getLogger
from math import sqrt

import numpy as np
from numpy.typing import NDArray
from scipy import linalg, sparse
from scipy.sparse.linalg import splu

from starnls.common.errors import MaxCountExceeded, SingularShift, SolverFailure
from starnls.graph import DEFAULT_TOLERANCES, ToleranceSet
from starnls.oracle.assembly import DiscreteOperator, StarMatrix
from starnls.shooting import potential

logger: Logger = getLogger(__name__)

PIVOT_RTOL: float = 1e-13
SHIFT_RETRIES: int = 8
BISECTION_RTOL: float = 1e-12
CLUSTER_RTOL: float = 1e-8
INVERSE_ITERATIONS: int = 4
RESIDUAL_RTOL: float = 1e-6
MATCH_FLOOR: float = 1e-4
MATCH_FACTOR: float = 5.0


@dataclass(frozen=True)
class InertiaResult:
    """Number of pencil eigenvalues below a shift.

    Attributes:
        shift: The shift sigma.
        count_below: Negative pivots of A - sigma B.
    """

    shift: float
    count_below: int


@dataclass(frozen=True)
class OracleCounts:
    """Negative and zero eigenvalue counts of a discrete operator.

    Attributes:
        n: Eigenvalues below -window.
        z: Eigenvalues in [-window, window].
        window: Half-width of the zero window.
    """

    n: int
    z: int
    window: float


def _scale(opr: DiscreteOperator) -> float:
    return opr.branch.omega


def inertia(opr: DiscreteOperator, shift: float, *, substitute: bool = False) -> InertiaResult:
    """Count pencil eigenvalues below shift.

    With substitute set, a pivot smaller than the threshold is replaced by minus
    the threshold, as in Sturm counts of tridiagonal bisection. The count is then
    the one of a shift perturbed by a rounding-sized amount.

    Args:
        opr: Discrete operator.
        shift: Shift sigma.
        substitute: Replace vanishing pivots instead of raising.

    Returns:
        The number of negative pivots of stiffness - shift * mass.

    Raises:
        SingularShift: A pivot vanishes to working precision and substitute is off.
    """
    shifted: StarMatrix = opr.stiffness.combine(opr.mass, -shift)
    diag: NDArray[np.float64] = shifted.diag
    off: NDArray[np.float64] = shifted.off
    tiny: float = PIVOT_RTOL * float(np.max(np.abs(diag)))

    inner: int = int(diag.shape[1])
    pivot: NDArray[np.float64] = diag[:, inner - 1].copy()
    negatives: int = 0
    i: int
    for i in range(inner - 1, -1, -1):
        if i < inner - 1:
            pivot = diag[:, i] - off[:, i + 1] ** 2 / pivot
        small: NDArray[np.bool_] = np.abs(pivot) < tiny
        if np.any(small):
            if substitute:
                pivot = np.where(small, -tiny, pivot)
            else:
                msg: str = f"vanishing pivot at node {i + 1} for shift {shift:.15g}"
                raise SingularShift(msg)
        negatives += int(np.count_nonzero(pivot < 0))

    vertex: float = shifted.vertex - float(np.sum(off[:, 0] ** 2 / pivot))
    if abs(vertex) < tiny:
        if not substitute:
            msg = f"vanishing vertex pivot for shift {shift:.15g}"
            raise SingularShift(msg)
        vertex = -tiny
    if vertex < 0:
        negatives += 1

    return InertiaResult(shift, negatives)


def count_below(opr: DiscreteOperator, shift: float) -> int:
    """Inertia count, nudging the shift upward past a singular factorization.

    When every nudge is singular, as at an eigenvalue shared by several edges,
    the count falls back to pivot substitution.

    Args:
        opr: Discrete operator.
        shift: Shift sigma.

    Returns:
        The number of pencil eigenvalues below shift (or just above it after a nudge).
    """
    nudge: float = 1e-12 * _scale(opr)
    attempt: int
    for attempt in range(SHIFT_RETRIES):
        try:
            return inertia(opr, shift + attempt * nudge).count_below
        except SingularShift:
            logger.debug("singular shift %.15g, retrying", shift + attempt * nudge)
    logger.debug("shift %.15g stays singular after %d nudges, substituting pivots", shift, SHIFT_RETRIES)
    return inertia(opr, shift, substitute=True).count_below


def _lower_bound(opr: DiscreteOperator, upper: float) -> float:
    step: float = max(abs(opr.branch.omega), 1.0)
    lo: float = min(upper, 0.0) - step
    while count_below(opr, lo) > 0:
        step *= 2.0
        lo -= step
    return lo


def eigenvalues_below(
    opr: DiscreteOperator,
    upper: float,
    max_count: int,
    tol: float | None = None,
) -> list[float]:
    """Pencil eigenvalues below upper by bisection on inertia counts.

    Args:
        opr: Discrete operator.
        upper: Upper bound.
        max_count: Largest number of eigenvalues expected.
        tol: Bisection width, by default a relative 1e-12 of omega.

    Returns:
        Eigenvalues in increasing order, repeated according to multiplicity.

    Raises:
        MaxCountExceeded: More than max_count eigenvalues lie below upper.
    """
    total: int = count_below(opr, upper)
    if total > max_count:
        msg: str = f"{total} eigenvalues below {upper}, more than {max_count}"
        raise MaxCountExceeded(msg)

    if tol is None:
        tol = BISECTION_RTOL * _scale(opr)
    lo_start: float = _lower_bound(opr, upper)
    values: list[float] = []
    index: int
    for index in range(total):
        lo: float = values[-1] - tol if values else lo_start
        hi: float = upper
        while hi - lo > tol:
            mid: float = 0.5 * (lo + hi)
            if count_below(opr, mid) > index:
                hi = mid
            else:
                lo = mid
        values.append(0.5 * (lo + hi))

    logger.debug("eigenvalues below %.6g: %s", upper, values)
    return values


def _clusters(values: list[float], width: float) -> list[list[float]]:
    groups: list[list[float]] = []
    value: float
    for value in values:
        if groups and value - groups[-1][-1] <= width:
            groups[-1].append(value)
        else:
            groups.append([value])
    return groups


def eigenpairs_below(
    opr: DiscreteOperator,
    upper: float,
    max_count: int,
    seed: int = 0,
) -> list[tuple[float, NDArray[np.float64]]]:
    """Pencil eigenpairs below upper.

    Eigenvalues come from bisection on inertia counts and eigenvectors from
    subspace inverse iteration, one cluster of close eigenvalues at a time.

    Args:
        opr: Discrete operator.
        upper: Upper bound.
        max_count: Largest number of eigenvalues expected.
        seed: Seed of the random starting subspace.

    Returns:
        Pairs (lambda, vector) in increasing order; vectors are mass-orthonormal
        and their largest entry is positive.

    Raises:
        MaxCountExceeded: More than max_count eigenvalues lie below upper.
        SolverFailure: Inverse iteration did not converge.
    """
    values: list[float] = eigenvalues_below(opr, upper, max_count)
    if not values:
        return []

    stiffness: sparse.csc_matrix = opr.stiffness.to_sparse()
    mass: sparse.csc_matrix = opr.mass.to_sparse()
    scale: float = _scale(opr)
    rng: np.random.Generator = np.random.default_rng(seed)

    pairs: list[tuple[float, NDArray[np.float64]]] = []
    group: list[float]
    for group in _clusters(values, CLUSTER_RTOL * scale):
        sigma: float = float(np.mean(group)) - 1e-9 * scale
        lu = splu((stiffness - sigma * mass).tocsc())  # pyright: ignore[reportUnknownVariableType]
        basis: NDArray[np.float64] = rng.standard_normal((opr.size, len(group)))
        for _ in range(INVERSE_ITERATIONS):
            basis = np.asarray(lu.solve(np.asarray(mass @ basis)))  # pyright: ignore[reportUnknownMemberType, reportUnknownArgumentType]
            basis, _ = linalg.qr(basis, mode="economic")  # pyright: ignore[reportAssignmentType]

        reduced_a: NDArray[np.float64] = basis.T @ np.asarray(stiffness @ basis)
        reduced_b: NDArray[np.float64] = basis.T @ np.asarray(mass @ basis)
        ritz: NDArray[np.float64]
        coefficients: NDArray[np.float64]
        ritz, coefficients = linalg.eigh(reduced_a, reduced_b)  # pyright: ignore[reportAssignmentType]
        vectors: NDArray[np.float64] = basis @ coefficients

        k: int
        for k in range(len(group)):
            vector: NDArray[np.float64] = vectors[:, k]
            residual: float = float(
                np.linalg.norm(stiffness @ vector - ritz[k] * (mass @ vector))
                / np.linalg.norm(mass @ vector),
            )
            if residual > RESIDUAL_RTOL * scale:
                msg: str = f"inverse iteration residual {residual:.3e} at lambda={ritz[k]:.10g}"
                raise SolverFailure(msg)
            if vector[np.argmax(np.abs(vector))] < 0:
                vector = -vector
            pairs.append((float(ritz[k]), vector))

    return pairs


def zero_window(opr: DiscreteOperator, tolerances: ToleranceSet = DEFAULT_TOLERANCES) -> float:
    """Half-width of the interval counted as zero.

    Conforming elements overestimate eigenvalues by O(h^2), so the L- kernel
    sits slightly above zero on any finite grid.

    Args:
        opr: Discrete operator.
        tolerances: Tolerances providing zero_tol.

    Returns:
        max(zero_tol * omega, 5 (h p sqrt(omega))^2 omega).
    """
    omega: float = opr.branch.omega
    reduced: float = opr.h * opr.config.p * sqrt(omega)
    return max(tolerances.zero_threshold(omega), MATCH_FACTOR * reduced**2 * omega)


def match_tolerance(opr: DiscreteOperator) -> float:
    """Allowed gap between an analytic eigenvalue and its discrete counterpart."""
    omega: float = opr.branch.omega
    reduced: float = opr.h * opr.config.p * sqrt(omega)
    return max(MATCH_FLOOR * omega, MATCH_FACTOR * reduced**2 * omega)


def oracle_counts(
    opr: DiscreteOperator,
    tolerances: ToleranceSet = DEFAULT_TOLERANCES,
) -> OracleCounts:
    """Negative and zero eigenvalue counts of the discrete operator.

    Args:
        opr: Discrete operator.
        tolerances: Tolerances providing zero_tol.

    Returns:
        Counts below and inside the zero window.
    """
    window: float = zero_window(opr, tolerances)
    below: int = count_below(opr, -window)
    upto: int = count_below(opr, window)
    return OracleCounts(below, upto - below, window)


def whole_line_eigenvalues(
    p: float,
    omega: float,
    length: float,
    m: int,
    count: int = 2,
) -> NDArray[np.float64]:
    """Lowest eigenvalues of -d^2/dx^2 + omega - Q(x) on [-length, length].

    Second-order differences with Dirichlet ends give a tridiagonal matrix.

    Args:
        p: Nonlinearity power.
        omega: Frequency.
        length: Half-width of the interval.
        m: Number of interior grid points.
        count: Number of eigenvalues returned.

    Returns:
        The lowest count eigenvalues, approximating lambda0 and the translation zero.
    """
    x: NDArray[np.float64] = np.linspace(-length, length, m + 2)[1:-1]
    h: float = float(x[1] - x[0])
    diag: NDArray[np.float64] = 2.0 / h**2 + omega - potential(p, omega, x)
    off: NDArray[np.float64] = np.full(m - 1, -1.0 / h**2)
    return linalg.eigh_tridiagonal(  # pyright: ignore[reportReturnType]
        diag,
        off,
        eigvals_only=True,
        select="i",
        select_range=(0, count - 1),
    )
