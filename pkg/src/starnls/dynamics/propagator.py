"""Strang-split Crank-Nicolson stepping of the NLS equation on the star graph.

    i psi_t = -psi'' - (p + 1) |psi|^(2p) psi  on each edge,
    continuity and sum_j psi_j'(0) = alpha psi(0) at the vertex.

The linear part uses the potential-free finite-element stiffness with the
vertex term and a lumped mass, so the Cayley step is unitary in the discrete
mass and the nonlinear phase rotation leaves every nodal modulus unchanged.
"""

from dataclasses import dataclass, field, replace
from logging import Logger, getLogger

import numpy as np
from numpy.typing import NDArray
from scipy import sparse
from scipy.sparse.linalg import SuperLU, splu

from starnls.common.errors import SolverFailure
from starnls.dynamics.field import Field, StarGrid
from starnls.graph import GraphConfig
from starnls.oracle import lumped_mass_matrix, stiffness_matrix
from starnls.stationary import StationaryState

logger: Logger = getLogger(__name__)

SOLVE_RTOL: float = 1e-12
NEWTON_ITERATIONS: int = 25
NEWTON_RTOL: float = 1e-13
NEWTON_ACCEPT: float = 1e-9


@dataclass
class Propagator:
    """Discrete evolution operator for one graph and grid.

    Attributes:
        config: Star graph supplying alpha and p.
        grid: Layout of the unknowns.
    """

    config: GraphConfig
    grid: StarGrid
    gradient: sparse.csc_matrix = field(init=False)
    hamiltonian: sparse.csc_matrix = field(init=False)
    weights: NDArray[np.float64] = field(init=False)
    _factors: dict[float, tuple[SuperLU, sparse.csc_matrix, sparse.csc_matrix]] = field(
        init=False,
        default_factory=dict,
    )

    def __post_init__(self) -> None:
        """Assemble the gradient form, the Hamiltonian and the lumped mass."""
        n: int = self.grid.n
        self.gradient = stiffness_matrix(n, self.grid.length, self.grid.m).to_sparse()
        vertex: sparse.csc_matrix = sparse.csc_matrix(
            ([self.config.alpha], ([0], [0])),
            shape=(self.grid.size, self.grid.size),
        )
        self.hamiltonian = (self.gradient + vertex).tocsc()
        lumped = lumped_mass_matrix(n, self.grid.length, self.grid.m)
        self.weights = np.concatenate(([lumped.vertex], lumped.diag.ravel()))

    def _factor(self, dt: float) -> tuple[SuperLU, sparse.csc_matrix, sparse.csc_matrix]:
        if dt not in self._factors:
            mass: sparse.csc_matrix = sparse.diags(self.weights).tocsc()
            implicit: sparse.csc_matrix = (mass + 0.5j * dt * self.hamiltonian).tocsc()
            explicit: sparse.csc_matrix = (mass - 0.5j * dt * self.hamiltonian).tocsc()
            self._factors[dt] = (splu(implicit), implicit, explicit)
            logger.debug("factorized Crank-Nicolson system for dt=%.6g", dt)
        return self._factors[dt]

    def _rotate(self, vector: NDArray[np.complex128], tau: float) -> NDArray[np.complex128]:
        p: float = self.config.p
        phase: NDArray[np.float64] = (p + 1.0) * np.abs(vector) ** (2.0 * p) * tau
        return vector * np.exp(1j * phase)

    def step(self, psi: Field, dt: float) -> Field:
        """Advance a field by dt; negative dt steps backward.

        Args:
            psi: Current field.
            dt: Time step.

        Returns:
            The field at t + dt.

        Raises:
            SolverFailure: The linear solve residual exceeds 1e-12 relative.
        """
        lu: SuperLU
        implicit: sparse.csc_matrix
        explicit: sparse.csc_matrix
        lu, implicit, explicit = self._factor(dt)

        half: NDArray[np.complex128] = self._rotate(psi.vector, 0.5 * dt)
        rhs: NDArray[np.complex128] = np.asarray(explicit @ half)
        linear: NDArray[np.complex128] = lu.solve(rhs)
        residual: float = float(
            np.linalg.norm(implicit @ linear - rhs) / max(np.linalg.norm(rhs), 1e-300),
        )
        if residual > SOLVE_RTOL:
            msg: str = f"Crank-Nicolson residual {residual:.3e} at t={psi.t:.6g}"
            raise SolverFailure(msg)

        return replace(psi, vector=self._rotate(linear, 0.5 * dt), t=psi.t + dt)

    def standing_wave(self, state: StationaryState, dt: float) -> Field:
        """Real profile that one step maps onto itself times exp(i omega dt).

        The sampled state is only an O(h^2 + dt^2) approximation of a relative
        equilibrium of the discrete step. Writing tau = dt/2, V = (p + 1)|z|^(2p)
        and phi = tau (V - omega) nodewise, the step of a real z equals
        exp(i omega dt) z exactly when

            tau H (cos phi z) - W (sin phi z) = 0,

        which is solved by Newton iteration from the sampled state.

        Args:
            state: Stationary state supplying omega and the initial guess.
            dt: Time step the profile is stationary for.

        Returns:
            The discrete standing wave at t = 0.

        Raises:
            SolverFailure: Newton iteration did not converge.
        """
        p: float = self.config.p
        tau: float = 0.5 * dt
        z: NDArray[np.float64] = np.real(self.grid.sample(state))
        scale: float = float(np.max(np.abs(z)))
        update: float = float("inf")
        iteration: int
        for iteration in range(1, NEWTON_ITERATIONS + 1):
            potential: NDArray[np.float64] = (p + 1.0) * np.abs(z) ** (2.0 * p)
            phi: NDArray[np.float64] = tau * (potential - state.omega)
            cos: NDArray[np.float64] = np.cos(phi)
            sin: NDArray[np.float64] = np.sin(phi)
            residual: NDArray[np.float64] = (
                tau * np.asarray(self.hamiltonian @ (cos * z)) - self.weights * sin * z
            )
            slope: NDArray[np.float64] = 2.0 * p * tau * potential
            jacobian: sparse.csc_matrix = (
                tau * self.hamiltonian @ sparse.diags(cos - slope * sin)
                - sparse.diags(self.weights * (sin + slope * cos))
            ).tocsc()
            delta: NDArray[np.float64] = np.asarray(splu(jacobian).solve(residual))  # pyright: ignore[reportUnknownMemberType, reportUnknownArgumentType]
            z = z - delta
            update = float(np.max(np.abs(delta)))
            if update <= NEWTON_RTOL * scale:
                logger.debug("standing wave converged after %d Newton steps", iteration)
                return Field(self.grid, z.astype(np.complex128))

        if update > NEWTON_ACCEPT * scale:
            msg: str = f"standing wave Newton update {update:.3e} after {NEWTON_ITERATIONS} steps"
            raise SolverFailure(msg)
        logger.debug("standing wave stalled at update %.3e", update)
        return Field(self.grid, z.astype(np.complex128))

    def mass(self, psi: Field) -> float:
        """Discrete mass sum_i w_i |psi_i|^2 with the lumped weights."""
        return float(np.sum(self.weights * np.abs(psi.vector) ** 2))

    def energy(self, psi: Field) -> float:
        """Discrete energy: kinetic plus vertex term minus the lumped power integral."""
        vector: NDArray[np.complex128] = psi.vector
        quadratic: float = float(np.real(np.vdot(vector, self.hamiltonian @ vector)))
        power: float = float(
            np.sum(self.weights * np.abs(vector) ** (2.0 * self.config.p + 2.0)),
        )
        return quadratic - power

    def h1_norm(self, vector: NDArray[np.complex128]) -> float:
        """Discrete H^1 norm from the gradient form and the lumped mass."""
        gradient: float = float(np.real(np.vdot(vector, self.gradient @ vector)))
        l2: float = float(np.sum(self.weights * np.abs(vector) ** 2))
        return float(np.sqrt(max(gradient + l2, 0.0)))

    def orbital_distance(
        self,
        psi: Field,
        state: StationaryState | Field,
    ) -> tuple[float, float]:
        """Distance from psi to the orbit exp(i theta) Phi.

        A stationary state is sampled on the grid; a field is taken as Phi as is.

        theta* is the argument of the discrete inner product <Phi, psi>, which
        minimizes the L^2 distance; the reported distance is in H^1.

        Args:
            psi: Field.
            state: Stationary state or discrete standing wave spanning the orbit.

        Returns:
            Pair (distance, theta*).
        """
        phi: NDArray[np.complex128] = (
            state.vector if isinstance(state, Field) else self.grid.sample(state)
        )
        overlap: complex = complex(np.sum(self.weights * np.conj(phi) * psi.vector))
        theta: float = float(np.angle(overlap))
        return self.h1_norm(psi.vector - np.exp(1j * theta) * phi), theta


def step(propagator: Propagator, psi: Field, dt: float) -> Field:
    """Advance a field by dt with the given propagator.

    Args:
        propagator: Discrete evolution operator.
        psi: Current field.
        dt: Time step.

    Returns:
        The field at t + dt.
    """
    return propagator.step(psi, dt)


def orbital_distance(
    propagator: Propagator,
    psi: Field,
    state: StationaryState | Field,
) -> tuple[float, float]:
    """Distance from psi to the orbit of a stationary state or discrete standing wave.

    Args:
        propagator: Supplies the discrete inner products.
        psi: Field.
        state: Stationary state or standing wave field.

    Returns:
        Pair (distance, theta*).
    """
    return propagator.orbital_distance(psi, state)
