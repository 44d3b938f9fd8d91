import numpy as np
import pytest
from numpy.typing import NDArray
from scipy.integrate import simpson

from starnls.common.errors import LambdaAboveOmega, NoZero, ZeroDenominator
from starnls.graph import DEFAULT_TOLERANCES
from starnls.shooting import (
    ShootingSolution,
    ZeroLocation,
    far_field_start,
    figure_curves,
    find_lambda0,
    lambda0_closed_form,
    log_derivative,
    potential,
    solve_decaying,
    track_zero,
    volterra_solution,
    well_depth,
    zero_solution,
)


def test_potential_peak() -> None:
    assert potential(1.0, 4.0, 0.0) == pytest.approx(well_depth(1.0, 4.0))
    assert well_depth(1.0, 4.0) == pytest.approx(24.0)
    assert well_depth(0.5, 1.0) == pytest.approx(3.0)


def test_far_field_start_beyond_well() -> None:
    x_max: float = far_field_start(1.0, 1.0, 0.0, DEFAULT_TOLERANCES.far_field_cut)
    assert potential(1.0, 1.0, x_max) < DEFAULT_TOLERANCES.far_field_cut


@pytest.mark.parametrize("omega", [1.0, 4.0])
@pytest.mark.parametrize("p", [0.5, 1.0, 2.0, 3.0])
def test_zero_eigenvalue_matches_translation_mode(p: float, omega: float) -> None:
    width: float = 1.0 / (p * np.sqrt(omega))
    x: NDArray[np.float64] = np.linspace(-5.0 * width, 5.0 * width, 81)
    sol: ShootingSolution = solve_decaying(p, omega, 0.0, float(x[0]))
    exact: NDArray[np.float64] = zero_solution(p, omega, x)
    error: float = float(np.max(np.abs(sol.v(x) - exact)) / np.max(np.abs(exact)))
    assert error < 1e-8


def test_free_solution_is_pure_exponential() -> None:
    sol: ShootingSolution = solve_decaying(1.0, 1.0, -3.0, -2.0, well=False)
    x: NDArray[np.float64] = np.linspace(-2.0, 4.0, 13)
    assert np.allclose(sol.v(x), np.exp(-2.0 * x), rtol=1e-14)


def test_normalization_at_far_field() -> None:
    sol: ShootingSolution = solve_decaying(1.0, 1.0, -1.0, 0.0)
    assert sol.normalization_defect() < 1e-12
    assert sol.mu == pytest.approx(np.sqrt(2.0))


@pytest.mark.parametrize(("p", "omega"), [(1.0, 1.0), (2.0, 1.0), (0.5, 3.0), (3.0, 0.25)])
def test_find_lambda0_matches_closed_form(p: float, omega: float) -> None:
    assert find_lambda0(p, omega) == pytest.approx(lambda0_closed_form(p, omega), rel=1e-8)


def test_lambda0_closed_form_example() -> None:
    assert lambda0_closed_form(1.0, 1.0) == -3.0
    assert lambda0_closed_form(1.0, 4.0) == -12.0


def test_integral_equation_matches_ode() -> None:
    p: float = 1.0
    omega: float = 1.0
    lam: float = -1.5
    sol: ShootingSolution = solve_decaying(p, omega, lam, -1.0)
    grid: NDArray[np.float64] = np.linspace(-1.0, sol.x_max, 6001)
    w: NDArray[np.float64] = volterra_solution(p, omega, lam, grid)
    expected: NDArray[np.float64] = sol.w(grid)[0]
    assert np.max(np.abs(w - expected)) < 1e-4 * np.max(np.abs(expected))


def test_integral_equation_rejects_continuum() -> None:
    with pytest.raises(LambdaAboveOmega):
        _ = volterra_solution(1.0, 1.0, 1.0, np.linspace(0.0, 10.0, 11))


def test_solve_decaying_rejects_continuum() -> None:
    with pytest.raises(LambdaAboveOmega):
        _ = solve_decaying(1.0, 1.0, 1.0, 0.0)
    with pytest.raises(LambdaAboveOmega):
        _ = solve_decaying(1.0, 1.0, 2.0, 0.0)


def test_evaluation_left_of_range_is_rejected() -> None:
    sol: ShootingSolution = solve_decaying(1.0, 1.0, -1.0, 0.0)
    with pytest.raises(ValueError, match="x_start"):
        _ = sol.w(-1.0)


def test_track_zero_at_zero_eigenvalue() -> None:
    zero: ZeroLocation = track_zero(1.0, 1.0, 0.0)
    assert zero.x0 == 0.0
    assert zero.slope > 0


def test_track_zero_is_monotone() -> None:
    lam0: float = lambda0_closed_form(1.0, 1.0)
    lambdas: NDArray[np.float64] = np.linspace(lam0 + 0.05, -0.05, 9)
    zeros: list[ZeroLocation] = [track_zero(1.0, 1.0, float(lam)) for lam in lambdas]
    x0: NDArray[np.float64] = np.array([z.x0 for z in zeros])
    assert np.all(x0 < 0)
    assert np.all(np.diff(x0) > 0)
    assert all(z.slope > 0 for z in zeros)


def test_track_zero_is_a_zero() -> None:
    zero: ZeroLocation = track_zero(1.0, 1.0, -2.0)
    sol: ShootingSolution = solve_decaying(1.0, 1.0, -2.0, zero.x0 - 1.0)
    w: NDArray[np.float64] = sol.w([zero.x0 - 0.1, zero.x0 + 0.1])[0]
    assert w[0] < 0 < w[1]


def test_track_zero_below_lambda0() -> None:
    with pytest.raises(NoZero):
        _ = track_zero(1.0, 1.0, -3.0)
    with pytest.raises(NoZero):
        _ = track_zero(1.0, 1.0, -5.0)


def test_track_zero_rejects_positive_lambda() -> None:
    with pytest.raises(ValueError, match="lambda <= 0"):
        _ = track_zero(1.0, 1.0, 0.5)


def test_log_derivative_of_free_solution() -> None:
    sol: ShootingSolution = solve_decaying(1.0, 1.0, -3.0, 0.0, well=False)
    assert log_derivative(sol, 1.0) == pytest.approx(-2.0)


def test_log_derivative_at_a_zero() -> None:
    def dense(x: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.array([np.zeros_like(x), np.ones_like(x)])

    sol: ShootingSolution = ShootingSolution(
        p=1.0,
        omega=1.0,
        lam=0.0,
        mu=1.0,
        x_start=-1.0,
        x_max=1.0,
        dense=dense,  # pyright: ignore[reportArgumentType]
    )
    with pytest.raises(ZeroDenominator):
        _ = log_derivative(sol, 0.0)


def test_figure_curves_rows() -> None:
    rows: list[tuple[float, float, float]] = figure_curves(1.0, 1.0, [-2.0, 0.0], [0.0, 1.0, 2.0])
    assert len(rows) == 6
    assert rows[3][:2] == (0.0, 0.0)
    assert rows[3][2] == pytest.approx(0.0, abs=1e-9)


def test_zero_moves_at_the_rate_of_the_tail_mass() -> None:
    lam: float = -1.5
    delta: float = 1e-4
    x1: float = track_zero(1.0, 1.0, lam).x0
    rate: float = (track_zero(1.0, 1.0, lam + delta).x0 - track_zero(1.0, 1.0, lam - delta).x0) / (
        2.0 * delta
    )
    sol: ShootingSolution = solve_decaying(1.0, 1.0, lam, x1)
    grid: NDArray[np.float64] = np.linspace(x1, sol.x_max, 8001)
    slope: float = float(sol.values(x1)[1])
    tail_mass: float = float(simpson(sol.v(grid) ** 2, x=grid))
    assert slope**2 * rate == pytest.approx(tail_mass, rel=1e-2)


def test_deep_lambda_flattens_the_well() -> None:
    sol: ShootingSolution = solve_decaying(1.0, 1.0, -1e4, 0.0)
    assert abs(float(sol.w(0.0)[0]) - 1.0) < 0.05


def test_log_derivative_diverges_for_deep_lambda() -> None:
    sol: ShootingSolution = solve_decaying(1.0, 1.0, -1e6, 0.0)
    assert log_derivative(sol, 0.0) < -990.0


def test_log_derivative_is_increasing_in_lambda() -> None:
    lambdas: NDArray[np.float64] = np.linspace(-2.9, -0.1, 8)
    values: list[float] = [
        log_derivative(solve_decaying(1.0, 1.0, float(lam), 1.0), 1.0) for lam in lambdas
    ]
    assert np.all(np.diff(values) > 0)
