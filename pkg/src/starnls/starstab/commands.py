"""Implementation of the starstab subcommands."""

from concurrent.futures import ProcessPoolExecutor
from logging import Logger, getLogger
from math import isfinite, sqrt
from pathlib import Path
from typing import Any

import numpy as np
from numpy.typing import NDArray

from starnls.dynamics import EvolutionTrace, instability_experiment
from starnls.graph import BranchParams, GraphConfig, ToleranceSet
from starnls.oracle import (
    DiscreteOperator,
    Operator,
    OracleCounts,
    OracleReport,
    assemble,
    oracle_counts,
    run_oracle,
)
from starnls.shooting import figure_curves, lambda0_closed_form
from starnls.spectrum import (
    F_curve,
    SpectralReport,
    assemble_report,
    expected_morse_index,
)
from starnls.starstab.emit import write_csv, write_json
from starnls.starstab.run import RunConfig
from starnls.stationary import (
    StationaryState,
    available_branches,
    build_state,
    energy,
    mass,
    profile_table,
    residual_stationary,
    state_mass,
)

logger: Logger = getLogger(__name__)

PROFILE_POINTS: int = 401
CURVE_POINTS: int = 401
CURVE_WIDTHS: float = 5.0
CURVE_DEPTH: float = 1.5

SWEEP_HEADER: tuple[str, ...] = (
    "n",
    "k",
    "alpha",
    "omega",
    "p",
    "n_Lplus_analytic",
    "n_Lplus_oracle",
    "z_Lplus",
    "n_Lminus",
    "z_Lminus",
    "verdict",
)


def _graph_document(config: GraphConfig, branch: BranchParams) -> dict[str, Any]:  # pyright: ignore[reportExplicitAny]
    return {
        "config": {"n": config.n, "alpha": config.alpha, "p": config.p},
        "branch": {"omega": branch.omega, "k": branch.k},
    }


def states(run: RunConfig) -> int:
    """Emit the profile table and a summary of the stationary state.

    Args:
        run: Resolved run.

    Returns:
        Exit status.
    """
    state: StationaryState = build_state(run.graph, run.branch)
    x: NDArray[np.float64] = state.grid(PROFILE_POINTS)
    values: NDArray[np.float64] = state.values(x)

    write_csv(
        run.out / "profile.csv",
        ("edge_index", "x", "value"),
        profile_table(state, x),
    )

    document: dict[str, Any] = _graph_document(state.config, state.branch)  # pyright: ignore[reportExplicitAny]
    document.update(
        {
            "a_k": state.a_k,
            "centers": list(state.centers),
            "edge_kind": [kind.value for kind in state.edge_kind],
            "amplitude": state.amplitude,
            "vertex_value": state.vertex_value(),
            "vertex_flux_residual": state.vertex_flux_residual(),
            "residual": residual_stationary(state, x[1:]),
            "mass": mass(values, x),
            "mass_closed_form": state_mass(state),
            "energy": energy(values, x, state.config),
            "available_branches": available_branches(state.config, state.omega),
            "edge_length": state.edge_length,
        },
    )
    write_json(run.out / "state.json", document)
    return 0


def spectrum(run: RunConfig) -> int:
    """Emit the spectral report, the F curve and decaying solutions.

    Args:
        run: Resolved run.

    Returns:
        Exit status.
    """
    config: GraphConfig = run.graph
    branch: BranchParams = run.branch
    tolerances: ToleranceSet = run.tolerances
    report: SpectralReport = assemble_report(config, branch, tolerances)
    write_json(run.out / "spectrum.json", report.to_dict())

    lowest: float = min(r.lam for r in report.records)
    lambdas: NDArray[np.float64] = np.linspace(CURVE_DEPTH * lowest, 0.0, CURVE_POINTS)
    write_csv(run.out / "F_curve.csv", ("lambda", "F"), F_curve(config, branch, lambdas, tolerances))

    width: float = 1.0 / (config.p * sqrt(branch.omega))
    x: NDArray[np.float64] = np.linspace(-CURVE_WIDTHS * width, CURVE_WIDTHS * width, CURVE_POINTS)
    marks: list[float] = sorted(
        {0.5 * lambda0_closed_form(config.p, branch.omega), *report.eigenvalues(), 0.0},
    )
    write_csv(
        run.out / "v_curves.csv",
        ("lambda", "x", "v"),
        figure_curves(config.p, branch.omega, marks, x, tolerances),
    )
    return 0


def oracle(run: RunConfig) -> int:
    """Emit oracle reports for L+ and L-, optionally comparing with the analytic count.

    Args:
        run: Resolved run.

    Returns:
        1 if --compare finds a disagreement, else 0.
    """
    config: GraphConfig = run.graph
    branch: BranchParams = run.branch
    length: float = run.length()

    reports: dict[Operator, OracleReport] = {}
    which: Operator
    for which in Operator:
        report: OracleReport = run_oracle(
            config,
            branch,
            which,
            length,
            run.grid_m,
            run.tolerances,
        )
        reports[which] = report
        document: dict[str, Any] = report.to_dict()  # pyright: ignore[reportExplicitAny]
        document["provenance"] = run.provenance()
        write_json(run.out / f"oracle_{which.value}.json", document)
        write_csv(
            run.out / f"eigenvectors_{which.value}.csv",
            ("mode", "edge_index", "x", "value"),
            report.eigenvector_rows(),
        )

    if not run.compare:
        return 0

    analytic: SpectralReport = assemble_report(config, branch, run.tolerances)
    problems: list[str] = count_disagreements(
        analytic,
        reports[Operator.LPLUS].counts,
        reports[Operator.LMINUS].counts,
    )
    problem: str
    for problem in problems:
        logger.error("counts differ: %s", problem)
    if problems:
        return 1
    logger.info("oracle counts agree with the analytic report")
    return 0


def evolve(run: RunConfig) -> int:
    """Emit the trace of a perturbed standing wave.

    Args:
        run: Resolved run.

    Returns:
        Exit status.
    """
    trace: EvolutionTrace = instability_experiment(
        run.graph,
        run.branch,
        run.eps,
        run.t_final,
        run.direction,
        dt=run.dt,
        m=run.grid_m,
        length=run.length(),
        seed=run.seed,
        tolerances=run.tolerances,
    )
    write_csv(
        run.out / "trace.csv",
        ("t", "mass", "energy", "distance", "theta_star"),
        trace.rows(),
    )
    document: dict[str, Any] = _graph_document(run.graph, run.branch)  # pyright: ignore[reportExplicitAny]
    document.update(
        {
            "provenance": run.provenance(),
            "growth_factor": trace.growth_factor if isfinite(trace.growth_factor) else None,
            "aborted": trace.aborted,
            "mass_drift": trace.mass_drift(),
            "energy_drift": trace.energy_drift(),
        },
    )
    write_json(run.out / "evolve.json", document)
    return 0


def count_disagreements(
    report: SpectralReport,
    plus: OracleCounts,
    minus: OracleCounts,
) -> list[str]:
    """Operators whose oracle counts differ from the analytic report.

    Args:
        report: Analytic spectral report.
        plus: Oracle counts of L+.
        minus: Oracle counts of L-.

    Returns:
        One description per disagreeing operator; empty when both agree.
    """
    expected: dict[Operator, tuple[int, int]] = {
        Operator.LPLUS: (report.n_lplus, report.z_lplus),
        Operator.LMINUS: (report.n_lminus, report.z_lminus),
    }
    found: dict[Operator, tuple[int, int]] = {
        Operator.LPLUS: (plus.n, plus.z),
        Operator.LMINUS: (minus.n, minus.z),
    }
    return [
        f"{which.value} analytic n={expected[which][0]} z={expected[which][1]}, "
        f"oracle n={found[which][0]} z={found[which][1]}"
        for which in Operator
        if expected[which] != found[which]
    ]


def sweep_row(
    config: GraphConfig,
    branch: BranchParams,
    grid_m: int,
    edge_margin: float,
    tolerances: ToleranceSet,
) -> tuple[tuple[object, ...], list[str]]:
    """Analytic and oracle counts of one grid configuration.

    Args:
        config: Star graph.
        branch: Frequency and branch index.
        grid_m: Elements per edge of the oracle.
        edge_margin: Decay lengths beyond |a_K| of the oracle edge.
        tolerances: Solver tolerances.

    Returns:
        One row in SWEEP_HEADER order, with the oracle counts in the z and L-
        columns, and the disagreements between analytic and oracle counts.
    """
    report: SpectralReport = assemble_report(config, branch, tolerances)
    state: StationaryState = build_state(config, branch)
    length: float = abs(state.a_k) + edge_margin * state.width

    plus: DiscreteOperator = assemble(config, branch, Operator.LPLUS, length, grid_m)
    minus: DiscreteOperator = assemble(config, branch, Operator.LMINUS, length, grid_m)
    plus_counts: OracleCounts = oracle_counts(plus, tolerances)
    minus_counts: OracleCounts = oracle_counts(minus, tolerances)

    if report.n_lplus != expected_morse_index(config, branch):
        logger.warning("analytic count deviates from the closed form for %s, %s", config, branch)

    row: tuple[object, ...] = (
        config.n,
        branch.k,
        config.alpha,
        branch.omega,
        config.p,
        report.n_lplus,
        plus_counts.n,
        plus_counts.z,
        minus_counts.n,
        minus_counts.z,
        report.verdict.value,
    )
    return row, count_disagreements(report, plus_counts, minus_counts)


def sweep(run: RunConfig) -> int:
    """Emit analytic and oracle counts over the parameter grid.

    Args:
        run: Resolved run; N, K, alpha and p restrict the grid when set.

    Returns:
        1 if --compare finds a disagreement, else 0.
    """
    grid: list[tuple[GraphConfig, BranchParams]] = run.sweep_configurations()
    logger.info("sweeping %d configurations with %d workers", len(grid), run.workers)

    with ProcessPoolExecutor(max_workers=run.workers) as pool:
        results: list[tuple[tuple[object, ...], list[str]]] = list(
            pool.map(
                sweep_row,
                [config for config, _ in grid],
                [branch for _, branch in grid],
                [run.grid_m] * len(grid),
                [run.edge_margin] * len(grid),
                [run.tolerances] * len(grid),
            ),
        )

    path: Path = run.out / "sweep.csv"
    write_csv(path, SWEEP_HEADER, [row for row, _ in results])

    mismatches: int = 0
    row: tuple[object, ...]
    problems: list[str]
    for row, problems in results:
        if problems:
            mismatches += 1
            logger.error("counts differ at %s: %s", row[:5], "; ".join(problems))
    if mismatches:
        logger.error("%d configurations where analytic and oracle counts differ", mismatches)
        return 1 if run.compare else 0
    return 0
