import math

import numpy as np
import pytest
from numpy.typing import NDArray

from starnls.common.errors import VertexMismatch
from starnls.dynamics import (
    Direction,
    EvolutionTrace,
    Field,
    Propagator,
    StarGrid,
    instability_experiment,
    orbital_distance,
    perturbation,
    step,
)
from starnls.graph import BranchParams, GraphConfig
from starnls.stationary import StationaryState, build_state

type Case = tuple[GraphConfig, BranchParams]


@pytest.fixture
def setup(attractive_symmetric: Case) -> tuple[Propagator, StationaryState]:
    config: GraphConfig
    branch: BranchParams
    config, branch = attractive_symmetric
    grid: StarGrid = StarGrid(config.n, 20.0, 1000)
    return Propagator(config, grid), build_state(config, branch)


def test_grid_layout() -> None:
    grid: StarGrid = StarGrid(3, 10.0, 100)
    assert grid.size == 1 + 3 * 99
    assert grid.h == pytest.approx(0.1)
    values: NDArray[np.complex128] = np.ones((3, 101), dtype=np.complex128)
    values[:, -1] = 0.0
    vector: NDArray[np.complex128] = grid.pack(values)
    assert vector.shape == (grid.size,)
    assert np.array_equal(grid.unpack(vector), values)


def test_pack_rejects_discontinuous_samples() -> None:
    grid: StarGrid = StarGrid(3, 10.0, 100)
    values: NDArray[np.complex128] = np.ones((3, 101), dtype=np.complex128)
    values[1, 0] = 2.0
    with pytest.raises(VertexMismatch):
        _ = grid.pack(values)


def test_mass_is_conserved(setup: tuple[Propagator, StationaryState]) -> None:
    propagator: Propagator
    state: StationaryState
    propagator, state = setup
    psi: Field = Field.from_state(state.scaled(1.1), propagator.grid)
    initial: float = propagator.mass(psi)
    for _ in range(100):
        psi = step(propagator, psi, 1e-2)
    assert psi.t == pytest.approx(1.0)
    assert propagator.mass(psi) == pytest.approx(initial, rel=1e-10)


def test_energy_is_nearly_conserved(setup: tuple[Propagator, StationaryState]) -> None:
    propagator: Propagator
    state: StationaryState
    propagator, state = setup
    psi: Field = Field.from_state(state.scaled(1.05), propagator.grid)
    initial: float = propagator.energy(psi)
    for _ in range(100):
        psi = propagator.step(psi, 1e-3)
    assert propagator.energy(psi) == pytest.approx(initial, rel=1e-4)


def test_step_is_reversible(setup: tuple[Propagator, StationaryState]) -> None:
    propagator: Propagator
    state: StationaryState
    propagator, state = setup
    psi: Field = Field.from_state(state.scaled(1.2), propagator.grid)
    back: Field = propagator.step(propagator.step(psi, 1e-2), -1e-2)
    assert back.t == pytest.approx(0.0, abs=1e-15)
    assert np.allclose(back.vector, psi.vector, rtol=0.0, atol=1e-12)


def test_step_commutes_with_phase(setup: tuple[Propagator, StationaryState]) -> None:
    propagator: Propagator
    state: StationaryState
    propagator, state = setup
    psi: Field = Field.from_state(state, propagator.grid)
    rotated_first: Field = propagator.step(psi.rotated(0.7), 1e-2)
    rotated_after: Field = propagator.step(psi, 1e-2).rotated(0.7)
    assert np.allclose(rotated_first.vector, rotated_after.vector, rtol=0.0, atol=1e-12)


def test_orbital_distance_ignores_phase(setup: tuple[Propagator, StationaryState]) -> None:
    propagator: Propagator
    state: StationaryState
    propagator, state = setup
    psi: Field = Field.from_state(state, propagator.grid).rotated(0.7)
    distance: float
    theta: float
    distance, theta = orbital_distance(propagator, psi, state)
    assert distance < 1e-12
    assert theta == pytest.approx(0.7)


def test_orbital_distance_to_a_field(setup: tuple[Propagator, StationaryState]) -> None:
    propagator: Propagator
    state: StationaryState
    propagator, state = setup
    wave: Field = propagator.standing_wave(state, 1e-2)
    distance: float
    theta: float
    distance, theta = orbital_distance(propagator, wave.rotated(-0.4), wave)
    assert distance < 1e-12
    assert theta == pytest.approx(-0.4)


def test_standing_wave_is_a_relative_equilibrium(setup: tuple[Propagator, StationaryState]) -> None:
    propagator: Propagator
    state: StationaryState
    propagator, state = setup
    dt: float = 1e-2
    wave: Field = propagator.standing_wave(state, dt)
    sampled: NDArray[np.complex128] = propagator.grid.sample(state)
    assert np.all(np.isreal(wave.vector))
    assert np.max(np.abs(wave.vector - sampled)) < 1e-2 * wave.peak()
    advanced: Field = propagator.step(wave, dt)
    expected: NDArray[np.complex128] = np.exp(1j * state.omega * dt) * wave.vector
    assert np.allclose(advanced.vector, expected, rtol=0.0, atol=1e-10)


def test_standing_wave_stays_on_its_orbit(setup: tuple[Propagator, StationaryState]) -> None:
    propagator: Propagator
    state: StationaryState
    propagator, state = setup
    wave: Field = propagator.standing_wave(state, 1e-2)
    psi: Field = wave
    for _ in range(100):
        psi = propagator.step(psi, 1e-2)
    distance: float
    theta: float
    distance, theta = propagator.orbital_distance(psi, wave)
    assert distance < 1e-8
    assert math.cos(theta) == pytest.approx(math.cos(state.omega * psi.t), abs=1e-8)


@pytest.mark.slow
def test_standing_wave_on_a_fine_grid(attractive_symmetric: Case) -> None:
    state: StationaryState = build_state(*attractive_symmetric)
    propagator: Propagator = Propagator(
        state.config,
        StarGrid(state.config.n, state.edge_length, 4000),
    )
    dt: float = 1e-3
    wave: Field = propagator.standing_wave(state, dt)
    psi: Field = wave
    mass: float = propagator.mass(wave)
    energy: float = propagator.energy(wave)
    index: int
    for index in range(1, 10001):
        psi = propagator.step(psi, dt)
        if index <= 5000 and index % 500 == 0:
            assert propagator.orbital_distance(psi, wave)[0] < 1e-6
    assert psi.t == pytest.approx(10.0)
    assert propagator.energy(psi) == pytest.approx(energy, rel=1e-6)
    assert propagator.mass(psi) == pytest.approx(mass, rel=1e-10)


@pytest.mark.parametrize("direction", [Direction.RANDOM, Direction.KERNEL_ADJACENT])
def test_perturbation_size_and_gauge(
    setup: tuple[Propagator, StationaryState],
    attractive_symmetric: Case,
    direction: Direction,
) -> None:
    propagator: Propagator
    state: StationaryState
    propagator, state = setup
    vector: NDArray[np.complex128] = perturbation(
        *attractive_symmetric,
        propagator,
        direction,
        1e-3,
        seed=7,
    )
    assert propagator.h1_norm(vector) == pytest.approx(1e-3)
    gauge: NDArray[np.complex128] = 1j * propagator.grid.sample(state)
    along: float = float(np.real(np.sum(propagator.weights * np.conj(gauge) * vector)))
    assert abs(along) < 1e-12


def test_unstable_mode_of_repulsive_state(repulsive: Case) -> None:
    state: StationaryState = build_state(*repulsive)
    propagator: Propagator = Propagator(
        state.config,
        StarGrid(state.config.n, state.edge_length, 2000),
    )
    wave: Field = propagator.standing_wave(state, 1e-3)
    vector: NDArray[np.complex128] = perturbation(
        *repulsive,
        propagator,
        Direction.UNSTABLE_MODE,
        1e-3,
        center=wave,
    )
    assert propagator.h1_norm(vector) == pytest.approx(1e-3)
    edges: NDArray[np.complex128] = propagator.grid.unpack(vector)
    assert not np.allclose(edges[0], edges[1], rtol=0.0, atol=1e-6)


def test_random_perturbation_depends_on_seed(
    setup: tuple[Propagator, StationaryState],
    attractive_symmetric: Case,
) -> None:
    propagator: Propagator = setup[0]
    first: NDArray[np.complex128] = perturbation(
        *attractive_symmetric, propagator, Direction.RANDOM, 1e-3, seed=1
    )
    again: NDArray[np.complex128] = perturbation(
        *attractive_symmetric, propagator, Direction.RANDOM, 1e-3, seed=1
    )
    other: NDArray[np.complex128] = perturbation(
        *attractive_symmetric, propagator, Direction.RANDOM, 1e-3, seed=2
    )
    assert np.array_equal(first, again)
    assert not np.allclose(first, other)


def test_trace_summary() -> None:
    trace: EvolutionTrace = EvolutionTrace()
    assert math.isnan(trace.growth_factor)
    trace.record(0.0, 2.0, -1.0, 1e-3, 0.0)
    trace.record(1.0, 2.0, -1.0, 5e-3, 0.5)
    trace.record(2.0, 2.0 + 2e-12, -1.0, 2e-3, 1.0)
    assert trace.growth_factor == pytest.approx(5.0)
    assert trace.mass_drift() == pytest.approx(1e-12)
    assert trace.energy_drift() == 0.0
    assert trace.rows()[1] == (1.0, 2.0, -1.0, 5e-3, 0.5)


@pytest.mark.parametrize(("eps", "dt"), [(0.0, 1e-3), (2e-2, 1e-3), (1e-3, 0.0), (1e-3, -1e-3)])
def test_experiment_rejects_bad_arguments(attractive_symmetric: Case, eps: float, dt: float) -> None:
    with pytest.raises(ValueError, match="eps|time step"):
        _ = instability_experiment(
            *attractive_symmetric,
            eps,
            1.0,
            Direction.RANDOM,
            dt=dt,
        )


def test_short_experiment_records_samples(attractive_symmetric: Case) -> None:
    trace: EvolutionTrace = instability_experiment(
        *attractive_symmetric,
        1e-3,
        0.1,
        Direction.RANDOM,
        dt=1e-2,
        m=400,
        length=20.0,
    )
    assert len(trace.times) == 11
    assert trace.times[-1] == pytest.approx(0.1)
    assert not trace.aborted
    assert trace.orbital_distance[0] == pytest.approx(1e-3, rel=1e-6)
    assert trace.mass_drift() < 1e-10


@pytest.mark.slow
def test_attractive_bump_departs_from_orbit(attractive_bump: Case) -> None:
    trace: EvolutionTrace = instability_experiment(
        *attractive_bump,
        1e-3,
        20.0,
        Direction.UNSTABLE_MODE,
    )
    assert trace.growth_factor >= 10.0
    assert trace.mass_drift() < 1e-10


@pytest.mark.slow
def test_repulsive_state_departs_from_orbit(repulsive: Case) -> None:
    trace: EvolutionTrace = instability_experiment(
        *repulsive,
        1e-3,
        30.0,
        Direction.UNSTABLE_MODE,
    )
    assert trace.growth_factor >= 10.0
    assert trace.mass_drift() < 1e-10


@pytest.mark.slow
def test_symmetric_attractive_state_stays_close(attractive_symmetric: Case) -> None:
    eps: float = 1e-3
    trace: EvolutionTrace = instability_experiment(
        *attractive_symmetric,
        eps,
        20.0,
        Direction.RANDOM,
        seed=3,
    )
    assert max(trace.orbital_distance) < 10.0 * eps
