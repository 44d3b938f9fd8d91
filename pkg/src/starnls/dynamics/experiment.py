"""Perturbed standing waves and the growth of their distance to the orbit.

These runs demonstrate orbital instability or stability on a truncated star;
they do not prove it.
"""

from dataclasses import dataclass, field
from enum import Enum
from logging import Logger, getLogger
from math import ceil

import numpy as np
from numpy.typing import NDArray

from starnls.dynamics.field import Field, StarGrid
from starnls.dynamics.propagator import Propagator
from starnls.graph import DEFAULT_TOLERANCES, BranchParams, GraphConfig, ToleranceSet
from starnls.oracle import (
    DiscreteOperator,
    Operator,
    assemble,
    eigenpairs_below,
    zero_window,
)
from starnls.stationary import StationaryState, build_state

logger: Logger = getLogger(__name__)

MAX_EPS: float = 1e-2
BOUNDARY_RATIO: float = 1e-6
RANDOM_MODES: int = 4
OMEGA_STEP: float = 1e-4
MAX_RECORDS: int = 2000


class Direction(Enum):
    """Perturbation added to the standing wave."""

    KERNEL_ADJACENT = "kernel_adjacent"
    RANDOM = "random"
    UNSTABLE_MODE = "unstable_mode"


@dataclass
class EvolutionTrace:
    """Recorded diagnostics of one run.

    Attributes:
        times: Sample times.
        mass: Discrete mass at each sample.
        energy: Discrete energy at each sample.
        orbital_distance: H^1 distance to the orbit at each sample.
        theta_star: Optimal phase at each sample.
        aborted: Radiation reached the truncation boundary and the run stopped early.
    """

    times: list[float] = field(default_factory=list)
    mass: list[float] = field(default_factory=list)
    energy: list[float] = field(default_factory=list)
    orbital_distance: list[float] = field(default_factory=list)
    theta_star: list[float] = field(default_factory=list)
    aborted: bool = False

    def record(
        self,
        t: float,
        mass: float,
        energy: float,
        distance: float,
        theta: float,
    ) -> None:
        """Append one sample to every series."""
        self.times.append(t)
        self.mass.append(mass)
        self.energy.append(energy)
        self.orbital_distance.append(distance)
        self.theta_star.append(theta)

    @property
    def growth_factor(self) -> float:
        """max_t distance(t) / distance(0)."""
        if not self.orbital_distance or self.orbital_distance[0] == 0:
            return float("nan")
        return max(self.orbital_distance) / self.orbital_distance[0]

    def mass_drift(self) -> float:
        """Largest relative departure of the mass from its initial value."""
        initial: float = self.mass[0]
        return max(abs(m - initial) for m in self.mass) / initial

    def energy_drift(self) -> float:
        """Largest relative departure of the energy from its initial value."""
        initial: float = self.energy[0]
        return max(abs(e - initial) for e in self.energy) / abs(initial)

    def rows(self) -> list[tuple[float, float, float, float, float]]:
        """Rows (t, mass, energy, distance, theta_star)."""
        return list(
            zip(
                self.times,
                self.mass,
                self.energy,
                self.orbital_distance,
                self.theta_star,
                strict=True,
            ),
        )


def _unstable_mode(
    config: GraphConfig,
    branch: BranchParams,
    grid: StarGrid,
    tolerances: ToleranceSet,
) -> NDArray[np.complex128]:
    opr: DiscreteOperator = assemble(config, branch, Operator.LPLUS, grid.length, grid.m)
    pairs: list[tuple[float, NDArray[np.float64]]] = eigenpairs_below(
        opr,
        -zero_window(opr, tolerances),
        config.n + 1,
    )
    if not pairs:
        msg: str = f"L+ has no negative eigenvalue for {config}, {branch}"
        raise ValueError(msg)
    logger.info("unstable modes at lambda=%s", ", ".join(f"{lam:.10g}" for lam, _ in pairs))
    combined: NDArray[np.float64] = np.sum([vector for _, vector in pairs], axis=0)
    return combined.astype(np.complex128)


def _random_direction(
    state: StationaryState,
    grid: StarGrid,
    rng: np.random.Generator,
) -> NDArray[np.complex128]:
    x: NDArray[np.float64] = grid.x()
    phi: NDArray[np.float64] = state.values(x)
    modes: NDArray[np.float64] = np.sin(
        np.arange(1, RANDOM_MODES + 1)[:, np.newaxis] * x[np.newaxis, :] / state.width,
    )
    shape: tuple[int, int] = (grid.n, RANDOM_MODES)
    coefficients: NDArray[np.complex128] = rng.standard_normal(shape) + 1j * rng.standard_normal(
        shape,
    )
    common: complex = complex(rng.standard_normal(), rng.standard_normal())
    values: NDArray[np.complex128] = phi * (common + coefficients @ modes)
    values[:, -1] = 0.0
    return grid.pack(values)


def _kernel_adjacent(
    config: GraphConfig,
    branch: BranchParams,
    grid: StarGrid,
) -> NDArray[np.complex128]:
    up: StationaryState = build_state(
        config,
        BranchParams(branch.omega * (1.0 + OMEGA_STEP), branch.k),
    )
    down: StationaryState = build_state(
        config,
        BranchParams(branch.omega * (1.0 - OMEGA_STEP), branch.k),
    )
    return (grid.sample(up) - grid.sample(down)) / (2.0 * OMEGA_STEP * branch.omega)


def perturbation(
    config: GraphConfig,
    branch: BranchParams,
    propagator: Propagator,
    direction: Direction,
    eps: float,
    seed: int = 0,
    tolerances: ToleranceSet = DEFAULT_TOLERANCES,
    center: Field | None = None,
) -> NDArray[np.complex128]:
    """Perturbation of H^1 size eps, orthogonal to the gauge direction i Phi.

    The unstable mode direction is the sum of every mass-normalized eigenvector
    of L+ below the zero window.

    Args:
        config: Star graph.
        branch: Frequency and branch index.
        propagator: Supplies the grid and the discrete inner products.
        direction: Kind of perturbation.
        eps: H^1 size.
        seed: Seed of the random direction.
        tolerances: Tolerances providing zero_tol.
        center: Profile Phi of the gauge direction; defaults to the sampled state.

    Returns:
        Perturbation vector in global numbering; continuous at the vertex by construction.
    """
    grid: StarGrid = propagator.grid
    state: StationaryState = build_state(config, branch)
    vector: NDArray[np.complex128]
    if direction is Direction.UNSTABLE_MODE:
        vector = _unstable_mode(config, branch, grid, tolerances)
    elif direction is Direction.RANDOM:
        vector = _random_direction(state, grid, np.random.default_rng(seed))
    else:
        vector = _kernel_adjacent(config, branch, grid)

    gauge: NDArray[np.complex128] = 1j * (grid.sample(state) if center is None else center.vector)
    weights: NDArray[np.float64] = propagator.weights
    along: float = float(np.real(np.sum(weights * np.conj(gauge) * vector)))
    vector = vector - along / float(np.sum(weights * np.abs(gauge) ** 2)) * gauge

    norm: float = propagator.h1_norm(vector)
    return eps / norm * vector


def instability_experiment(  # noqa: PLR0913
    config: GraphConfig,
    branch: BranchParams,
    eps: float,
    t_final: float,
    direction: Direction,
    *,
    dt: float = 1e-3,
    m: int = 2000,
    length: float | None = None,
    seed: int = 0,
    tolerances: ToleranceSet = DEFAULT_TOLERANCES,
) -> EvolutionTrace:
    """Evolve a perturbed standing wave and record its distance to the orbit.

    The run starts from the discrete standing wave of the propagator.

    Args:
        config: Star graph.
        branch: Frequency and branch index.
        eps: H^1 size of the perturbation, in (0, 1e-2].
        t_final: Final time.
        direction: Kind of perturbation.
        dt: Time step.
        m: Elements per edge.
        length: Edge length; defaults to the state's decay length.
        seed: Seed of the random direction.
        tolerances: Tolerances providing zero_tol.

    Returns:
        The trace; growth_factor gives max distance over initial distance.

    Raises:
        ValueError: eps or dt is out of range.
        SolverFailure: The discrete standing wave or a linear solve failed.
    """
    if not 0 < eps <= MAX_EPS:
        msg: str = f"eps must lie in (0, {MAX_EPS}], got {eps}"
        raise ValueError(msg)
    if not dt > 0:
        msg = f"time step must be positive, got {dt}"
        raise ValueError(msg)

    state: StationaryState = build_state(config, branch)
    grid: StarGrid = StarGrid(
        config.n,
        state.edge_length if length is None else length,
        m,
    )
    propagator: Propagator = Propagator(config, grid)
    wave: Field = propagator.standing_wave(state, dt)
    psi: Field = Field(
        grid,
        wave.vector
        + perturbation(config, branch, propagator, direction, eps, seed, tolerances, wave),
    )

    steps: int = ceil(t_final / dt - 1e-9)
    stride: int = max(1, ceil(steps / MAX_RECORDS))
    trace: EvolutionTrace = EvolutionTrace()
    peak: float = psi.peak()

    def sample() -> None:
        distance: float
        theta: float
        distance, theta = propagator.orbital_distance(psi, wave)
        trace.record(psi.t, propagator.mass(psi), propagator.energy(psi), distance, theta)

    sample()
    logger.info(
        "evolving %s perturbation of size %.3g for %d steps (dt=%.3g, M=%d, L=%.4g)",
        direction.value,
        eps,
        steps,
        dt,
        m,
        grid.length,
    )
    index: int
    for index in range(1, steps + 1):
        psi = propagator.step(psi, dt)
        if grid.boundary_amplitude(psi.vector) > BOUNDARY_RATIO * peak:
            logger.warning("boundary amplitude exceeded at t=%.4g, stopping", psi.t)
            sample()
            trace.aborted = True
            break
        if index % stride == 0 or index == steps:
            sample()

    logger.info(
        "growth factor %.4g over t=%.4g",
        trace.growth_factor,
        trace.times[-1],
    )
    return trace
