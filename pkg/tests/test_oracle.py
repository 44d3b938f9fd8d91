from math import sqrt

import numpy as np
import pytest
from numpy.typing import NDArray

from starnls.common.errors import DomainTooShort, MaxCountExceeded
from starnls.graph import BranchParams, GraphConfig
from starnls.oracle import (
    DiscreteOperator,
    Operator,
    OracleCounts,
    OracleReport,
    assemble,
    count_below,
    eigenpairs_below,
    eigenvalues_below,
    lumped_mass_matrix,
    mass_matrix,
    match_tolerance,
    minimum_length,
    oracle_counts,
    run_oracle,
    whole_line_eigenvalues,
    zero_window,
)
from starnls.spectrum import SpectralReport, assemble_report, expected_morse_index, sweep_grid
from starnls.stationary import EdgeKind, StationaryState, build_state

type Case = tuple[GraphConfig, BranchParams]

GRID_M: int = 2000
BUMPS_TWO: Case = (GraphConfig(n=5, alpha=-1.0, p=1.0), BranchParams(omega=4.0, k=2))


def _length(config: GraphConfig, branch: BranchParams) -> float:
    return abs(build_state(config, branch).a_k) + 25.0 / (config.p * sqrt(branch.omega))


def _operator(case: Case, which: Operator, m: int = GRID_M) -> DiscreteOperator:
    return assemble(*case, which, _length(*case), m)


def test_free_operator_lies_above_continuum_edge(attractive_bump: Case) -> None:
    opr: DiscreteOperator = assemble(
        *attractive_bump,
        Operator.LPLUS,
        _length(*attractive_bump),
        400,
        free=True,
    )
    assert count_below(opr, attractive_bump[1].omega) == 0


def test_lminus_has_one_dimensional_kernel(attractive_bump: Case) -> None:
    counts: OracleCounts = oracle_counts(_operator(attractive_bump, Operator.LMINUS))
    assert (counts.n, counts.z) == (0, 1)


def test_lplus_counts_attractive_bump(attractive_bump: Case) -> None:
    counts: OracleCounts = oracle_counts(_operator(attractive_bump, Operator.LPLUS))
    assert (counts.n, counts.z) == (2, 0)


def test_lplus_counts_repulsive(repulsive: Case) -> None:
    counts: OracleCounts = oracle_counts(_operator(repulsive, Operator.LPLUS))
    assert (counts.n, counts.z) == (3, 0)


def test_counts_do_not_depend_on_edge_labels(attractive_bump: Case) -> None:
    opr: DiscreteOperator = _operator(attractive_bump, Operator.LPLUS, 400)
    shifts: list[float] = [-10.0, -2.0, -0.5, 0.5]
    assert [count_below(opr.permuted([2, 0, 1]), s) for s in shifts] == [
        count_below(opr, s) for s in shifts
    ]


def test_count_is_nondecreasing_in_shift(attractive_bump: Case) -> None:
    opr: DiscreteOperator = _operator(attractive_bump, Operator.LPLUS, 400)
    counts: list[int] = [count_below(opr, s) for s in np.linspace(-30.0, 4.0, 18)]
    assert counts[0] == 0
    assert all(a <= b for a, b in zip(counts, counts[1:], strict=False))


def test_eigenvalues_match_index_count(attractive_bump: Case) -> None:
    opr: DiscreteOperator = _operator(attractive_bump, Operator.LPLUS)
    analytic: SpectralReport = assemble_report(*attractive_bump)
    discrete: list[float] = eigenvalues_below(opr, -zero_window(opr), 8)
    assert discrete == pytest.approx(analytic.eigenvalues(), abs=match_tolerance(opr))


def test_tail_zero_multiplicity_shows_as_cluster() -> None:
    case: Case = (GraphConfig(5, 1.0, 1.0), BranchParams(4.0, 1))
    opr: DiscreteOperator = _operator(case, Operator.LPLUS)
    analytic: SpectralReport = assemble_report(*case)
    assert analytic.lambda_star is not None
    discrete: list[float] = eigenvalues_below(opr, -zero_window(opr), 8)
    assert len(discrete) == 4
    near: list[float] = [
        lam for lam in discrete if abs(lam - analytic.lambda_star) <= match_tolerance(opr)
    ]
    assert len(near) == 3


def test_eigenvalue_search_limit(attractive_bump: Case) -> None:
    opr: DiscreteOperator = _operator(attractive_bump, Operator.LPLUS, 400)
    with pytest.raises(MaxCountExceeded):
        _ = eigenvalues_below(opr, 0.0, 1)


def test_lminus_kernel_is_the_state(attractive_bump: Case) -> None:
    report: OracleReport = run_oracle(*attractive_bump, Operator.LMINUS, _length(*attractive_bump), GRID_M)
    assert len(report.pairs) == 1
    opr: DiscreteOperator = report.operator
    vector: NDArray[np.float64] = opr.edge_values(report.pairs[0][1])
    state: StationaryState = build_state(*attractive_bump)
    profile: NDArray[np.float64] = state.values(opr.grid())
    factor: float = float(np.sum(vector * profile) / np.sum(profile * profile))
    error: float = float(np.linalg.norm(vector - factor * profile) / np.linalg.norm(factor * profile))
    assert factor > 0
    assert error < 1e-3


def test_oracle_report_rows(attractive_symmetric: Case) -> None:
    length: float = _length(*attractive_symmetric)
    report: OracleReport = run_oracle(*attractive_symmetric, Operator.LPLUS, length, 400)
    document: dict[str, object] = report.to_dict()
    assert document["which"] == "Lplus"
    assert document["counts"] == {"n": 1, "z": 0}
    rows: list[tuple[int, int, float, float]] = report.eigenvector_rows()
    assert len(rows) == 3 * 401
    assert rows[-1][:2] == (1, 3)
    assert rows[-1][3] == 0.0


def test_assemble_rejects_short_domain(attractive_bump: Case) -> None:
    shortest: float = minimum_length(*attractive_bump)
    with pytest.raises(DomainTooShort):
        _ = assemble(*attractive_bump, Operator.LPLUS, 0.5 * shortest, GRID_M)
    with pytest.raises(DomainTooShort):
        _ = assemble(*attractive_bump, Operator.LPLUS, 2.0 * shortest, 100)


def test_mass_matrix_is_diagonally_dominant() -> None:
    assert mass_matrix(4, 10.0, 200).gershgorin_definite()


def test_lumped_mass_is_row_sum_of_consistent_mass() -> None:
    n: int = 3
    m: int = 200
    rows: NDArray[np.float64] = np.asarray(mass_matrix(n, 10.0, m).to_sparse().sum(axis=1)).ravel()
    lumped = lumped_mass_matrix(n, 10.0, m)
    expected: NDArray[np.float64] = np.concatenate([[lumped.vertex], lumped.diag.ravel()])
    interior: NDArray[np.bool_] = np.ones(rows.size, dtype=bool)
    interior[(m - 1) * np.arange(1, n + 1)] = False
    assert np.allclose(rows[interior], expected[interior], rtol=1e-12)


def test_sparse_form_is_symmetric(attractive_bump: Case) -> None:
    opr: DiscreteOperator = _operator(attractive_bump, Operator.LPLUS, 300)
    matrix = opr.stiffness.to_sparse()
    assert matrix.shape == (opr.size, opr.size)
    assert abs(matrix - matrix.T).max() == 0.0


def test_whole_line_spectrum() -> None:
    values: NDArray[np.float64] = whole_line_eigenvalues(1.0, 1.0, 20.0, 4000)
    assert values[0] == pytest.approx(-3.0, abs=1e-2)
    assert values[1] == pytest.approx(0.0, abs=1e-2)


def test_repulsive_eigenvalues_include_repeated_tail_value(repulsive: Case) -> None:
    length: float = build_state(*repulsive).edge_length
    opr: DiscreteOperator = assemble(*repulsive, Operator.LPLUS, length, GRID_M)
    tolerance: float = match_tolerance(opr)
    discrete: list[float] = eigenvalues_below(opr, -zero_window(opr), 8)
    assert len(discrete) == 3
    assert discrete[2] - discrete[1] <= tolerance
    assert discrete == pytest.approx(assemble_report(*repulsive).eigenvalues(), abs=tolerance)


def test_repulsive_oracle_with_vectors(repulsive: Case) -> None:
    length: float = build_state(*repulsive).edge_length
    report: OracleReport = run_oracle(*repulsive, Operator.LPLUS, length, GRID_M)
    assert (report.counts.n, report.counts.z) == (3, 0)
    assert len(report.pairs) == 3
    vector: NDArray[np.float64]
    for _, vector in report.pairs[1:]:
        assert abs(vector[0]) <= 1e-6 * np.max(np.abs(vector))


def test_lambda_star_count_jump() -> None:
    opr: DiscreteOperator = _operator(BUMPS_TWO, Operator.LPLUS)
    analytic: SpectralReport = assemble_report(*BUMPS_TWO)
    assert analytic.lambda_star is not None
    gap: float = 2.0 * match_tolerance(opr)
    above: int = count_below(opr, analytic.lambda_star + gap)
    below: int = count_below(opr, analytic.lambda_star - gap)
    assert above - below == BUMPS_TWO[1].k - 1


def test_lambda_star_eigenvector_vanishes_at_vertex() -> None:
    opr: DiscreteOperator = _operator(BUMPS_TWO, Operator.LPLUS)
    analytic: SpectralReport = assemble_report(*BUMPS_TWO)
    assert analytic.lambda_star is not None
    pairs: list[tuple[float, NDArray[np.float64]]] = eigenpairs_below(opr, -zero_window(opr), 8)
    near: list[NDArray[np.float64]] = [
        vector for lam, vector in pairs if abs(lam - analytic.lambda_star) <= match_tolerance(opr)
    ]
    assert len(near) == 1
    assert abs(near[0][0]) <= 1e-4 * np.max(np.abs(near[0]))


@pytest.mark.parametrize(
    "chosen",
    [(GraphConfig(n=3, alpha=-1.0, p=1.0), BranchParams(omega=4.0, k=1)), BUMPS_TWO],
)
def test_ground_eigenvector_is_equal_within_edge_classes(chosen: Case) -> None:
    opr: DiscreteOperator = _operator(chosen, Operator.LPLUS)
    pairs: list[tuple[float, NDArray[np.float64]]] = eigenpairs_below(opr, -zero_window(opr), 8)
    edges: NDArray[np.float64] = opr.edge_values(pairs[0][1])
    kinds: tuple[EdgeKind, ...] = build_state(*chosen).edge_kind
    scale: float = float(np.max(np.abs(edges)))
    kind: EdgeKind
    for kind in EdgeKind:
        members: list[int] = [j for j, tag in enumerate(kinds) if tag is kind]
        j: int
        for j in members[1:]:
            assert np.allclose(edges[j], edges[members[0]], rtol=0.0, atol=1e-6 * scale)


@pytest.mark.slow
@pytest.mark.parametrize(("config", "branch"), list(sweep_grid()))
def test_oracle_agrees_with_analytic_spectrum(config: GraphConfig, branch: BranchParams) -> None:
    length: float = _length(config, branch)
    plus: DiscreteOperator = assemble(config, branch, Operator.LPLUS, length, GRID_M)
    analytic: SpectralReport = assemble_report(config, branch)
    counts: OracleCounts = oracle_counts(plus)
    assert counts.n == expected_morse_index(config, branch) == analytic.n_lplus
    assert counts.z == analytic.z_lplus == 0
    tolerance: float = match_tolerance(plus)
    discrete: list[float] = eigenvalues_below(
        plus,
        -counts.window,
        config.n + 1,
        tol=0.1 * tolerance,
    )
    assert discrete == pytest.approx(analytic.eigenvalues(), abs=tolerance)

    minus: OracleCounts = oracle_counts(assemble(config, branch, Operator.LMINUS, length, GRID_M))
    assert (minus.n, minus.z) == (analytic.n_lminus, analytic.z_lminus) == (0, 1)
