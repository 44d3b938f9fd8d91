"""Parameter grid over which the index count is checked."""

from collections.abc import Iterator, Sequence

from starnls.graph import BranchParams, GraphConfig, omega_threshold

EDGE_COUNTS: tuple[int, ...] = (3, 4, 5, 6)
ALPHAS: tuple[float, ...] = (-2.0, -1.0, 1.0, 2.0)
POWERS: tuple[float, ...] = (0.5, 1.0, 2.0, 3.0)
THRESHOLD_FACTORS: tuple[float, ...] = (1.5, 4.0, 16.0)


def sweep_grid(
    edge_counts: Sequence[int] = EDGE_COUNTS,
    alphas: Sequence[float] = ALPHAS,
    powers: Sequence[float] = POWERS,
    threshold_factors: Sequence[float] = THRESHOLD_FACTORS,
) -> Iterator[tuple[GraphConfig, BranchParams]]:
    """Every valid (N, K, alpha, omega, p) combination of the grid.

    Frequencies are multiples of each branch's existence threshold.

    Args:
        edge_counts: Values of N.
        alphas: Vertex strengths.
        powers: Nonlinearity powers.
        threshold_factors: Multiples of alpha^2 / (N - 2K)^2 used as omega.

    Yields:
        Graph and branch of each configuration, in a deterministic order.
    """
    n: int
    alpha: float
    p: float
    for n in edge_counts:
        for alpha in alphas:
            for p in powers:
                config: GraphConfig = GraphConfig(n=n, alpha=alpha, p=p)
                for k in range(config.max_branch + 1):
                    threshold: float = omega_threshold(config, k)
                    for factor in threshold_factors:
                        yield config, BranchParams(omega=factor * threshold, k=k)
