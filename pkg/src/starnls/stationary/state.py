"""Closed-form stationary states on the star graph."""

from collections.abc import Sequence
from dataclasses import dataclass, replace
from enum import Enum
from math import atanh, sqrt

import numpy as np
from numpy.typing import ArrayLike, NDArray

from starnls.graph import BranchParams, GraphConfig, omega_threshold, validate

EDGE_DECAY_LENGTHS: float = 40.0


def sech(y: ArrayLike) -> NDArray[np.float64]:
    """Hyperbolic secant that does not overflow for large arguments.

    Args:
        y: Argument(s).

    Returns:
        sech(y) elementwise.
    """
    z: NDArray[np.float64] = np.exp(-np.abs(np.asarray(y, dtype=np.float64)))
    return 2.0 * z / (1.0 + z * z)


def soliton_profile(p: float, omega: float, x: ArrayLike) -> NDArray[np.float64]:
    """Whole-line soliton omega^(1/2p) sech^(1/p)(p sqrt(omega) x).

    Args:
        p: Nonlinearity power.
        omega: Frequency.
        x: Position(s).

    Returns:
        Profile value(s); even in x and strictly decreasing in |x|.
    """
    y: NDArray[np.float64] = p * sqrt(omega) * np.asarray(x, dtype=np.float64)
    return omega ** (0.5 / p) * sech(y) ** (1.0 / p)


def soliton_derivative(p: float, omega: float, x: ArrayLike) -> NDArray[np.float64]:
    """First derivative of the soliton profile.

    Args:
        p: Nonlinearity power.
        omega: Frequency.
        x: Position(s).

    Returns:
        -sqrt(omega) phi(x) tanh(p sqrt(omega) x).
    """
    y: NDArray[np.float64] = p * sqrt(omega) * np.asarray(x, dtype=np.float64)
    return -sqrt(omega) * soliton_profile(p, omega, x) * np.tanh(y)


def soliton_second_derivative(
    p: float,
    omega: float,
    x: ArrayLike,
) -> NDArray[np.float64]:
    """Second derivative of the soliton profile.

    Args:
        p: Nonlinearity power.
        omega: Frequency.
        x: Position(s).

    Returns:
        omega phi(x) (tanh^2 - p sech^2)(p sqrt(omega) x).
    """
    y: NDArray[np.float64] = p * sqrt(omega) * np.asarray(x, dtype=np.float64)
    return omega * soliton_profile(p, omega, x) * (np.tanh(y) ** 2 - p * sech(y) ** 2)


def shift(config: GraphConfig, branch: BranchParams) -> float:
    """Edge shift a_K of the branch.

    Args:
        config: Star graph.
        branch: Frequency and branch index.

    Returns:
        arctanh(alpha / ((N - 2K) sqrt(omega))) / (p sqrt(omega)); same sign as alpha.
    """
    root: float = sqrt(branch.omega)
    return atanh(config.alpha / ((config.n - 2 * branch.k) * root)) / (config.p * root)


class EdgeKind(Enum):
    """Shape of a stationary profile on one edge."""

    BUMP = "bump"
    TAIL = "tail"


@dataclass(frozen=True)
class StationaryState:
    """A stationary state with profile phi(x - c_j) on edge j.

    Attributes:
        config: Star graph.
        branch: Frequency and branch index.
        a_k: Edge shift of the branch.
        centers: Per-edge center c_j; -a_K on the first K edges, +a_K on the rest.
        amplitude: Peak value, omega^(1/2p) for an exact state.
    """

    config: GraphConfig
    branch: BranchParams
    a_k: float
    centers: tuple[float, ...]
    amplitude: float

    @property
    def edge_kind(self) -> tuple[EdgeKind, ...]:
        """Bump or tail tag per edge, read off from where the peak sits."""
        return tuple(EdgeKind.BUMP if c > 0 else EdgeKind.TAIL for c in self.centers)

    @property
    def omega(self) -> float:
        """Frequency of the state."""
        return self.branch.omega

    @property
    def width(self) -> float:
        """Decay length 1 / (p sqrt(omega)) of the profile."""
        return 1.0 / (self.config.p * sqrt(self.branch.omega))

    @property
    def edge_length(self) -> float:
        """Truncation of each half-line beyond which the profile is negligible.

        The tail decays like exp(-sqrt(omega) x) for every p, so the margin is
        the larger of the core width and 1 / sqrt(omega).
        """
        return abs(self.a_k) + EDGE_DECAY_LENGTHS * max(
            self.width,
            1.0 / sqrt(self.branch.omega),
        )

    def _scale(self) -> float:
        return self.amplitude / self.branch.omega ** (0.5 / self.config.p)

    def _offsets(self, x: ArrayLike) -> NDArray[np.float64]:
        grid: NDArray[np.float64] = np.asarray(x, dtype=np.float64)
        return grid[np.newaxis, ...] - np.asarray(self.centers)[
            (slice(None),) + (np.newaxis,) * grid.ndim
        ]

    def values(self, x: ArrayLike) -> NDArray[np.float64]:
        """Evaluate every edge profile.

        Args:
            x: Position(s) on the half-line.

        Returns:
            Array of shape (N, *x.shape).
        """
        return self._scale() * soliton_profile(
            self.config.p,
            self.branch.omega,
            self._offsets(x),
        )

    def derivatives(self, x: ArrayLike) -> NDArray[np.float64]:
        """Evaluate every edge profile's first derivative.

        Args:
            x: Position(s) on the half-line.

        Returns:
            Array of shape (N, *x.shape).
        """
        return self._scale() * soliton_derivative(
            self.config.p,
            self.branch.omega,
            self._offsets(x),
        )

    def second_derivatives(self, x: ArrayLike) -> NDArray[np.float64]:
        """Evaluate every edge profile's second derivative.

        Args:
            x: Position(s) on the half-line.

        Returns:
            Array of shape (N, *x.shape).
        """
        return self._scale() * soliton_second_derivative(
            self.config.p,
            self.branch.omega,
            self._offsets(x),
        )

    def vertex_value(self) -> float:
        """Common value of the edge profiles at the vertex."""
        return float(self.values(0.0)[0])

    def vertex_flux_residual(self) -> float:
        """Relative defect of the delta condition sum_j phi_j'(0) = alpha phi(0).

        Returns:
            |sum of derivatives - alpha * vertex value| / |alpha * vertex value|.
        """
        target: float = self.config.alpha * self.vertex_value()
        flux: float = float(np.sum(self.derivatives(0.0)))
        return abs(flux - target) / abs(target)

    def grid(self, points: int, length: float | None = None) -> NDArray[np.float64]:
        """Uniform grid on the truncated half-line, vertex included.

        Args:
            points: Number of grid points.
            length: Truncation length; defaults to edge_length.

        Returns:
            Grid from 0 to length.
        """
        return np.linspace(0.0, self.edge_length if length is None else length, points)

    def permuted(self, order: Sequence[int]) -> "StationaryState":
        """Relabel the edges.

        Args:
            order: New edge j carries the profile of old edge order[j].

        Returns:
            State with permuted centers.
        """
        return replace(self, centers=tuple(self.centers[i] for i in order))

    def scaled(self, factor: float) -> "StationaryState":
        """Multiply the amplitude, giving a non-stationary field.

        Args:
            factor: Amplitude multiplier.

        Returns:
            State with amplitude * factor.
        """
        return replace(self, amplitude=self.amplitude * factor)


def build_state(config: GraphConfig, branch: BranchParams) -> StationaryState:
    """Construct the stationary state of a branch.

    Edges 1..K carry phi(x + a_K) and edges K+1..N carry phi(x - a_K).

    Args:
        config: Star graph.
        branch: Frequency and branch index.

    Returns:
        The stationary state.
    """
    validate(config, branch)

    a_k: float = shift(config, branch)
    centers: tuple[float, ...] = tuple(
        -a_k if j < branch.k else a_k for j in range(config.n)
    )
    return StationaryState(
        config=config,
        branch=branch,
        a_k=a_k,
        centers=centers,
        amplitude=branch.omega ** (0.5 / config.p),
    )


def available_branches(config: GraphConfig, omega: float) -> list[int]:
    """Branch indices whose existence threshold lies below omega.

    Args:
        config: Star graph.
        omega: Frequency.

    Returns:
        Every admissible K with omega > alpha^2 / (N - 2K)^2, in increasing order.
    """
    return [
        k for k in range(config.max_branch + 1) if omega > omega_threshold(config, k)
    ]


def residual_stationary(state: StationaryState, grid: ArrayLike) -> float:
    """Largest defect of the stationary equation on a grid.

    Args:
        state: State to check.
        grid: Points on the open half-line.

    Returns:
        max |-phi'' + omega phi - (p + 1) phi^(2p + 1)| over edges and points.
    """
    p: float = state.config.p
    phi: NDArray[np.float64] = state.values(grid)
    defect: NDArray[np.float64] = (
        -state.second_derivatives(grid)
        + state.branch.omega * phi
        - (p + 1.0) * phi ** (2.0 * p + 1.0)
    )
    return float(np.max(np.abs(defect)))


def profile_table(
    state: StationaryState,
    grid: ArrayLike,
) -> list[tuple[int, float, float]]:
    """Rows (edge_index, x, value) of every edge profile.

    Args:
        state: State to tabulate.
        grid: Points on the half-line.

    Returns:
        Rows with 1-based edge indices.
    """
    x: NDArray[np.float64] = np.asarray(grid, dtype=np.float64)
    values: NDArray[np.float64] = state.values(x)
    return [
        (j + 1, float(x[i]), float(values[j, i]))
        for j in range(state.config.n)
        for i in range(x.size)
    ]
