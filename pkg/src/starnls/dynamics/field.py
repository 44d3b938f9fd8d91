"""Complex fields sampled on the truncated star graph."""

from dataclasses import dataclass, replace

import numpy as np
from numpy.typing import ArrayLike, NDArray

from starnls.stationary import StationaryState, check_vertex


@dataclass(frozen=True)
class StarGrid:
    """Uniform nodes x_i = i L / M on every edge with one shared vertex unknown.

    The Dirichlet node x_M is not stored, so a field has 1 + N (M - 1) unknowns,
    numbered like the oracle matrices.

    Attributes:
        n: Number of edges.
        length: Edge length L.
        m: Elements per edge.
    """

    n: int
    length: float
    m: int

    @property
    def h(self) -> float:
        """Mesh width."""
        return self.length / self.m

    @property
    def size(self) -> int:
        """Number of unknowns."""
        return 1 + self.n * (self.m - 1)

    def x(self) -> NDArray[np.float64]:
        """Nodes x_0..x_M of one edge."""
        return np.linspace(0.0, self.length, self.m + 1)

    def pack(self, values: ArrayLike) -> NDArray[np.complex128]:
        """Global vector of edge samples.

        Args:
            values: Samples of shape (N, M + 1) that agree at the vertex.

        Returns:
            Vector of the shared vertex value followed by interior nodes edge by edge.

        Raises:
            VertexMismatch: Edge values disagree at the vertex.
        """
        samples: NDArray[np.complex128] = np.asarray(values, dtype=np.complex128)
        vertex: complex = check_vertex(samples)
        return np.concatenate(([vertex], samples[:, 1:-1].ravel()))

    def unpack(self, vector: NDArray[np.complex128]) -> NDArray[np.complex128]:
        """Edge samples of shape (N, M + 1), zero at the Dirichlet node."""
        out: NDArray[np.complex128] = np.zeros((self.n, self.m + 1), dtype=np.complex128)
        out[:, 0] = vector[0]
        out[:, 1:-1] = np.reshape(vector[1:], (self.n, self.m - 1))
        return out

    def sample(self, state: StationaryState) -> NDArray[np.complex128]:
        """Global vector of a stationary state's nodal values."""
        values: NDArray[np.float64] = state.values(self.x())
        values[:, -1] = 0.0
        return self.pack(values)

    def boundary_amplitude(self, vector: NDArray[np.complex128]) -> float:
        """Largest modulus at the last stored node of any edge."""
        last: NDArray[np.complex128] = np.reshape(vector[1:], (self.n, self.m - 1))[:, -1]
        return float(np.max(np.abs(last)))


@dataclass(frozen=True)
class Field:
    """A field on the star at time t.

    Attributes:
        grid: Layout of the unknowns.
        vector: Nodal values in global numbering.
        t: Time.
    """

    grid: StarGrid
    vector: NDArray[np.complex128]
    t: float = 0.0

    @classmethod
    def from_state(cls, state: StationaryState, grid: StarGrid) -> "Field":
        """Field equal to a stationary profile at t = 0."""
        return cls(grid, grid.sample(state))

    def edges(self) -> NDArray[np.complex128]:
        """Edge samples of shape (N, M + 1)."""
        return self.grid.unpack(self.vector)

    def rotated(self, theta: float) -> "Field":
        """Field multiplied by exp(i theta)."""
        return replace(self, vector=np.exp(1j * theta) * self.vector)

    def peak(self) -> float:
        """Largest modulus over all nodes."""
        return float(np.max(np.abs(self.vector)))
