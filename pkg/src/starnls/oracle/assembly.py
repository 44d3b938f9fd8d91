"""Piecewise-linear finite elements on the truncated star graph.

Every edge [0, L] carries the nodes x_i = i L / M, i = 0..M. The vertex node
x_0 is a single unknown shared by all edges and the last node x_M is removed by
the Dirichlet truncation, so a matrix on the star is N tridiagonal edge blocks
of size M - 1 coupled through one vertex row.
"""

from collections.abc import Sequence
from dataclasses import dataclass, replace
from enum import Enum
from logging import Logger, getLogger
from math import sqrt

import numpy as np
from numpy.typing import NDArray
from scipy import sparse

from starnls.common.errors import DomainTooShort
from starnls.graph import BranchParams, GraphConfig, validate
from starnls.stationary import StationaryState, build_state

logger: Logger = getLogger(__name__)

MIN_NODES: int = 200
DECAY_MARGIN: float = 20.0

# three-point Gauss rule on [0, 1]
_GAUSS_POINTS: NDArray[np.float64] = 0.5 + 0.5 * np.sqrt(0.6) * np.array([-1.0, 0.0, 1.0])
_GAUSS_WEIGHTS: NDArray[np.float64] = np.array([5.0, 8.0, 5.0]) / 18.0


class Operator(Enum):
    """Which linearized operator is discretized."""

    LPLUS = "Lplus"
    LMINUS = "Lminus"

    def coefficient(self, p: float) -> float:
        """Factor c in the potential c * Phi^(2p).

        Args:
            p: Nonlinearity power.

        Returns:
            (2p + 1)(p + 1) for L+, (p + 1) for L-.
        """
        if self is Operator.LPLUS:
            return (2.0 * p + 1.0) * (p + 1.0)
        return p + 1.0


@dataclass(frozen=True)
class StarMatrix:
    """Symmetric matrix on the truncated star.

    Attributes:
        vertex: Diagonal entry of the shared vertex unknown.
        diag: Diagonal entries of edge nodes 1..M-1, shape (N, M - 1).
        off: off[:, 0] couples the vertex to node 1 and off[:, i] couples node i
            to node i + 1, shape (N, M - 1).
    """

    vertex: float
    diag: NDArray[np.float64]
    off: NDArray[np.float64]

    @property
    def edges(self) -> int:
        """Number of edge blocks."""
        return int(self.diag.shape[0])

    @property
    def size(self) -> int:
        """Number of unknowns, vertex included."""
        return 1 + int(self.diag.size)

    def combine(self, other: "StarMatrix", factor: float) -> "StarMatrix":
        """Return self + factor * other."""
        return StarMatrix(
            self.vertex + factor * other.vertex,
            self.diag + factor * other.diag,
            self.off + factor * other.off,
        )

    def with_vertex(self, extra: float) -> "StarMatrix":
        """Return the matrix with extra added to the vertex entry."""
        return replace(self, vertex=self.vertex + extra)

    def permuted(self, order: Sequence[int]) -> "StarMatrix":
        """Relabel the edge blocks.

        Args:
            order: New block j is old block order[j].

        Returns:
            The permuted matrix.
        """
        index: list[int] = list(order)
        return StarMatrix(self.vertex, self.diag[index], self.off[index])

    def to_sparse(self) -> sparse.csc_matrix:
        """Assemble the matrix in global numbering.

        Unknown 0 is the vertex and edge j node i is unknown 1 + j (M - 1) + (i - 1).

        Returns:
            Sparse symmetric matrix.
        """
        n: int = self.edges
        inner: int = int(self.diag.shape[1])
        base: NDArray[np.int64] = 1 + inner * np.arange(n)[:, np.newaxis]
        nodes: NDArray[np.int64] = base + np.arange(inner)[np.newaxis, :]

        rows: list[NDArray[np.int64]] = [np.array([0]), nodes.ravel()]
        cols: list[NDArray[np.int64]] = [np.array([0]), nodes.ravel()]
        data: list[NDArray[np.float64]] = [np.array([self.vertex]), self.diag.ravel()]

        first: NDArray[np.int64] = nodes[:, 0]
        rows += [np.zeros(n, dtype=np.int64), first]
        cols += [first, np.zeros(n, dtype=np.int64)]
        data += [self.off[:, 0], self.off[:, 0]]

        left: NDArray[np.int64] = nodes[:, :-1].ravel()
        right: NDArray[np.int64] = nodes[:, 1:].ravel()
        couplings: NDArray[np.float64] = self.off[:, 1:].ravel()
        rows += [left, right]
        cols += [right, left]
        data += [couplings, couplings]

        return sparse.coo_matrix(
            (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
            shape=(self.size, self.size),
        ).tocsc()

    def gershgorin_definite(self) -> bool:
        """Whether every row is strictly diagonally dominant with a positive diagonal."""
        off_abs: NDArray[np.float64] = np.abs(self.off)
        row_sum: NDArray[np.float64] = off_abs.copy()
        row_sum[:, :-1] += off_abs[:, 1:]
        vertex_ok: bool = self.vertex > float(np.sum(off_abs[:, 0]))
        return vertex_ok and bool(np.all(self.diag > row_sum))


def _element_arrays(
    n: int,
    m: int,
    local: tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]],
) -> StarMatrix:
    """Sum element matrices (entries 00, 01, 11 per edge and element) into a StarMatrix."""
    a00: NDArray[np.float64]
    a01: NDArray[np.float64]
    a11: NDArray[np.float64]
    a00, a01, a11 = (np.broadcast_to(a, (n, m)) for a in local)
    diag: NDArray[np.float64] = a11[:, :-1] + a00[:, 1:]
    return StarMatrix(float(np.sum(a00[:, 0])), diag, a01[:, :-1].copy())


def stiffness_matrix(n: int, length: float, m: int) -> StarMatrix:
    """Gradient form sum_j int u_j' v_j' dx.

    Args:
        n: Number of edges.
        length: Edge length L.
        m: Elements per edge.

    Returns:
        The stiffness matrix without vertex term.
    """
    h: float = length / m
    one: NDArray[np.float64] = np.full((n, m), 1.0 / h)
    return _element_arrays(n, m, (one, -one, one))


def mass_matrix(n: int, length: float, m: int) -> StarMatrix:
    """Consistent mass sum_j int u_j v_j dx.

    Args:
        n: Number of edges.
        length: Edge length L.
        m: Elements per edge.

    Returns:
        The mass matrix.
    """
    h: float = length / m
    diagonal: NDArray[np.float64] = np.full((n, m), h / 3.0)
    coupling: NDArray[np.float64] = np.full((n, m), h / 6.0)
    return _element_arrays(n, m, (diagonal, coupling, diagonal))


def lumped_mass_matrix(n: int, length: float, m: int) -> StarMatrix:
    """Row-summed mass: h on edge nodes and N h / 2 at the vertex.

    Args:
        n: Number of edges.
        length: Edge length L.
        m: Elements per edge.

    Returns:
        Diagonal mass matrix.
    """
    h: float = length / m
    return StarMatrix(0.5 * n * h, np.full((n, m - 1), h), np.zeros((n, m - 1)))


def potential_matrix(
    values: NDArray[np.float64],
    length: float,
    m: int,
) -> StarMatrix:
    """Weighted mass sum_j int V_j u_j v_j dx by three-point Gauss quadrature.

    Args:
        values: V_j at the Gauss points, shape (N, M, 3).
        length: Edge length L.
        m: Elements per edge.

    Returns:
        The potential matrix.
    """
    h: float = length / m
    left: NDArray[np.float64] = 1.0 - _GAUSS_POINTS
    right: NDArray[np.float64] = _GAUSS_POINTS
    weighted: NDArray[np.float64] = h * values * _GAUSS_WEIGHTS
    a00: NDArray[np.float64] = weighted @ (left * left)
    a01: NDArray[np.float64] = weighted @ (left * right)
    a11: NDArray[np.float64] = weighted @ (right * right)
    return _element_arrays(values.shape[0], m, (a00, a01, a11))


def gauss_points(length: float, m: int) -> NDArray[np.float64]:
    """Quadrature points of every element, shape (M, 3)."""
    h: float = length / m
    return h * (np.arange(m)[:, np.newaxis] + _GAUSS_POINTS[np.newaxis, :])


def minimum_length(config: GraphConfig, branch: BranchParams) -> float:
    """Shortest admissible edge |a_K| + 20 / (p sqrt(omega))."""
    state: StationaryState = build_state(config, branch)
    return abs(state.a_k) + DECAY_MARGIN / (config.p * sqrt(branch.omega))


@dataclass(frozen=True)
class DiscreteOperator:
    """Finite-element pencil (stiffness, mass) of L+ or L- on the truncated star.

    Attributes:
        config: Star graph.
        branch: Frequency and branch index.
        which: Operator discretized.
        edge_length: Truncation length L of every edge.
        nodes_per_edge: Elements M per edge; nodes x_1..x_M besides the vertex.
        stiffness: Quadratic form int u'v' + (omega - V) u v + alpha u(0) v(0).
        mass: Consistent mass matrix.
    """

    config: GraphConfig
    branch: BranchParams
    which: Operator
    edge_length: float
    nodes_per_edge: int
    stiffness: StarMatrix
    mass: StarMatrix

    @property
    def h(self) -> float:
        """Mesh width."""
        return self.edge_length / self.nodes_per_edge

    @property
    def size(self) -> int:
        """Number of unknowns."""
        return self.stiffness.size

    def grid(self) -> NDArray[np.float64]:
        """Nodes x_0..x_M of one edge."""
        return np.linspace(0.0, self.edge_length, self.nodes_per_edge + 1)

    def edge_values(self, vector: NDArray[np.float64]) -> NDArray[np.float64]:
        """Unpack a global vector into edge samples including vertex and Dirichlet node.

        Args:
            vector: Values in global numbering.

        Returns:
            Array of shape (N, M + 1).
        """
        n: int = self.config.n
        inner: NDArray[np.float64] = np.reshape(vector[1:], (n, self.nodes_per_edge - 1))
        out: NDArray[np.float64] = np.zeros((n, self.nodes_per_edge + 1), dtype=vector.dtype)
        out[:, 0] = vector[0]
        out[:, 1:-1] = inner
        return out

    def permuted(self, order: Sequence[int]) -> "DiscreteOperator":
        """Relabel the edges of the discretization.

        Args:
            order: New edge j is old edge order[j].

        Returns:
            The permuted operator.
        """
        return replace(
            self,
            stiffness=self.stiffness.permuted(order),
            mass=self.mass.permuted(order),
        )


def assemble(
    config: GraphConfig,
    branch: BranchParams,
    which: Operator,
    length: float,
    m: int,
    *,
    free: bool = False,
) -> DiscreteOperator:
    """Discretize L+ or L- of a stationary state.

    Args:
        config: Star graph.
        branch: Frequency and branch index.
        which: Operator to discretize.
        length: Edge length L, at least |a_K| + 20 / (p sqrt(omega)).
        m: Elements per edge, at least 200.
        free: Drop the potential and the vertex term, leaving the free operator
            -d^2/dx^2 + omega with Kirchhoff coupling.

    Returns:
        The discrete operator.

    Raises:
        DomainTooShort: The edge is too short or the grid too coarse.
    """
    validate(config, branch)

    shortest: float = minimum_length(config, branch)
    if length < shortest:
        msg: str = f"edge length {length} is below the decay margin {shortest:.6g}"
        raise DomainTooShort(msg)
    if m < MIN_NODES:
        msg = f"{m} elements per edge is below the minimum of {MIN_NODES}"
        raise DomainTooShort(msg)

    n: int = config.n
    mass: StarMatrix = mass_matrix(n, length, m)
    stiffness: StarMatrix = stiffness_matrix(n, length, m).combine(mass, branch.omega)

    if not free:
        state: StationaryState = build_state(config, branch)
        profile: NDArray[np.float64] = state.values(gauss_points(length, m))
        potential: NDArray[np.float64] = which.coefficient(config.p) * profile ** (
            2.0 * config.p
        )
        stiffness = stiffness.combine(potential_matrix(potential, length, m), -1.0)
        stiffness = stiffness.with_vertex(config.alpha)

    logger.debug(
        "assembled %s on N=%d edges, L=%.6g, M=%d (%d unknowns)",
        which.value,
        n,
        length,
        m,
        stiffness.size,
    )
    return DiscreteOperator(config, branch, which, length, m, stiffness, mass)
