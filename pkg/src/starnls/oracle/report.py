"""Oracle runs: counts, eigenvalues and eigenvectors of one discrete operator."""

from dataclasses import dataclass
from logging import Logger, getLogger
from typing import Any

import numpy as np
from numpy.typing import NDArray

from starnls.graph import DEFAULT_TOLERANCES, BranchParams, GraphConfig, ToleranceSet
from starnls.oracle.assembly import DiscreteOperator, Operator, assemble
from starnls.oracle.inertia import OracleCounts, eigenpairs_below, oracle_counts

logger: Logger = getLogger(__name__)

MAX_EIGENPAIRS: int = 16


@dataclass(frozen=True)
class OracleReport:
    """Result of one oracle run.

    Attributes:
        operator: The discretization.
        counts: Negative and zero counts.
        pairs: Eigenpairs up to the top of the zero window.
    """

    operator: DiscreteOperator
    counts: OracleCounts
    pairs: tuple[tuple[float, NDArray[np.float64]], ...]

    @property
    def eigenvalues(self) -> list[float]:
        """Eigenvalues of the returned pairs."""
        return [lam for lam, _ in self.pairs]

    def to_dict(self) -> dict[str, Any]:  # pyright: ignore[reportExplicitAny]
        """Serializable form following the oracle report schema."""
        opr: DiscreteOperator = self.operator
        return {
            "config": {"n": opr.config.n, "alpha": opr.config.alpha, "p": opr.config.p},
            "branch": {"omega": opr.branch.omega, "k": opr.branch.k},
            "which": opr.which.value,
            "L": opr.edge_length,
            "M": opr.nodes_per_edge,
            "counts": {"n": self.counts.n, "z": self.counts.z},
            "zero_window": self.counts.window,
            "eigenvalues": self.eigenvalues,
        }

    def eigenvector_rows(self) -> list[tuple[int, int, float, float]]:
        """Rows (mode, edge_index, x, value) of every eigenvector, 1-based indices."""
        opr: DiscreteOperator = self.operator
        grid: NDArray[np.float64] = opr.grid()
        rows: list[tuple[int, int, float, float]] = []
        mode: int
        for mode, (_, vector) in enumerate(self.pairs, start=1):
            values: NDArray[np.float64] = opr.edge_values(vector)
            rows.extend(
                (mode, j + 1, float(grid[i]), float(values[j, i]))
                for j in range(opr.config.n)
                for i in range(grid.size)
            )
        return rows


def run_oracle(
    config: GraphConfig,
    branch: BranchParams,
    which: Operator,
    length: float,
    m: int,
    tolerances: ToleranceSet = DEFAULT_TOLERANCES,
    *,
    with_vectors: bool = True,
) -> OracleReport:
    """Assemble an operator and collect its nonpositive spectrum.

    Args:
        config: Star graph.
        branch: Frequency and branch index.
        which: Operator to discretize.
        length: Edge length L.
        m: Elements per edge.
        tolerances: Tolerances providing zero_tol.
        with_vectors: Also compute eigenpairs up to the zero window.

    Returns:
        The oracle report.
    """
    opr: DiscreteOperator = assemble(config, branch, which, length, m)
    counts: OracleCounts = oracle_counts(opr, tolerances)
    logger.info(
        "%s oracle for %s, %s: n=%d z=%d",
        which.value,
        config,
        branch,
        counts.n,
        counts.z,
    )
    pairs: list[tuple[float, NDArray[np.float64]]] = []
    if with_vectors:
        pairs = eigenpairs_below(opr, counts.window, MAX_EIGENPAIRS)
    return OracleReport(opr, counts, tuple(pairs))
