"""Star graph parameters, branch parameters and their validation."""

from configparser import SectionProxy
from dataclasses import dataclass, replace
from math import isfinite

from starnls.common.errors import (
    BelowThreshold,
    BranchOutOfRange,
    InvalidGraph,
    InvalidScale,
    ZeroAlpha,
)

MIN_EDGES: int = 2


@dataclass(frozen=True)
class GraphConfig:
    """A star graph of half-lines glued at a delta vertex.

    Attributes:
        n: Number of half-line edges.
        alpha: Strength of the vertex interaction (negative is attractive).
        p: Power of the nonlinearity.
    """

    n: int
    alpha: float
    p: float

    @property
    def max_branch(self) -> int:
        """Largest admissible branch index floor((N - 1) / 2)."""
        return (self.n - 1) // 2


@dataclass(frozen=True)
class BranchParams:
    """Frequency and branch index of a stationary state.

    Attributes:
        omega: Frequency of the standing wave.
        k: Number of edges carrying the shifted-left profile.
    """

    omega: float
    k: int


@dataclass(frozen=True)
class ToleranceSet:
    """Numerical tolerances shared by the solvers.

    Attributes:
        root_tol: Relative tolerance of bracketed root finding.
        ode_rel_tol: Relative tolerance of the shooting integrator.
        zero_tol: Eigenvalues with magnitude below zero_tol * omega count as zero.
        far_field_cut: Potential-to-decay ratio below which the tail is a pure exponential.
    """

    root_tol: float = 1e-10
    ode_rel_tol: float = 1e-11
    zero_tol: float = 1e-9
    far_field_cut: float = 1e-14

    def __post_init__(self) -> None:
        """Reject nonpositive tolerances.

        Raises:
            ValueError: A tolerance is not strictly positive.
        """
        for name in ("root_tol", "ode_rel_tol", "zero_tol", "far_field_cut"):
            value: float = getattr(self, name)
            if not value > 0:
                msg: str = f"{name} must be positive, got {value}"
                raise ValueError(msg)

    def zero_threshold(self, omega: float) -> float:
        """Absolute threshold for classifying an eigenvalue as zero.

        Args:
            omega: Frequency setting the spectral scale.

        Returns:
            zero_tol scaled by omega.
        """
        return self.zero_tol * omega

    @classmethod
    def from_config(cls, section: SectionProxy) -> "ToleranceSet":
        """Build tolerances from a config section.

        Args:
            section: The [tolerances] section of the tool config.

        Returns:
            Tolerances with any missing keys left at their defaults.
        """
        defaults: ToleranceSet = cls()
        return cls(
            root_tol=section.getfloat("root_tol", defaults.root_tol),
            ode_rel_tol=section.getfloat("ode_rel_tol", defaults.ode_rel_tol),
            zero_tol=section.getfloat("zero_tol", defaults.zero_tol),
            far_field_cut=section.getfloat("far_field_cut", defaults.far_field_cut),
        )


DEFAULT_TOLERANCES: ToleranceSet = ToleranceSet()


def omega_threshold(config: GraphConfig, k: int) -> float:
    """Smallest frequency (exclusive) at which branch k exists.

    Args:
        config: Star graph.
        k: Branch index.

    Returns:
        alpha^2 / (N - 2K)^2.
    """
    return config.alpha**2 / (config.n - 2 * k) ** 2


def validate_graph(config: GraphConfig) -> None:
    """Check the graph alone.

    Args:
        config: Star graph to check.

    Raises:
        InvalidGraph: Fewer than two edges or nonpositive power.
        ZeroAlpha: Kirchhoff vertex.
    """
    if config.n < MIN_EDGES:
        msg: str = f"star graph needs at least {MIN_EDGES} edges, got N={config.n}"
        raise InvalidGraph(msg)
    if not (config.p > 0 and isfinite(config.p)):
        msg = f"nonlinearity power must be positive, got p={config.p}"
        raise InvalidGraph(msg)
    if config.alpha == 0 or not isfinite(config.alpha):
        msg = "alpha = 0 (Kirchhoff vertex) is not supported"
        raise ZeroAlpha(msg)


def validate(config: GraphConfig, branch: BranchParams) -> None:
    """Check that a stationary state exists for the given parameters.

    Depends only on (N, alpha, p, omega, K), never on edge labels.

    Args:
        config: Star graph.
        branch: Frequency and branch index.

    Raises:
        BranchOutOfRange: K is negative or above floor((N - 1) / 2).
        BelowThreshold: omega does not exceed alpha^2 / (N - 2K)^2.
    """
    validate_graph(config)

    if not 0 <= branch.k <= config.max_branch:
        msg: str = (
            f"branch K={branch.k} outside 0..{config.max_branch} for N={config.n}"
        )
        raise BranchOutOfRange(msg)

    threshold: float = omega_threshold(config, branch.k)
    if not branch.omega > threshold:
        msg = f"omega={branch.omega} does not exceed threshold {threshold} for K={branch.k}"
        raise BelowThreshold(msg)


def rescale(
    config: GraphConfig,
    branch: BranchParams,
    t: float,
) -> tuple[GraphConfig, BranchParams]:
    """Apply the scaling covariance x -> x / t.

    Eigenvalues of the linearized operators scale by t^2 and the edge shift by 1 / t.

    Args:
        config: Star graph.
        branch: Frequency and branch index.
        t: Scaling factor.

    Returns:
        Graph with alpha * t and branch with omega * t^2.

    Raises:
        InvalidScale: t is not strictly positive.
    """
    if not (t > 0 and isfinite(t)):
        msg: str = f"scale factor must be positive, got {t}"
        raise InvalidScale(msg)

    validate(config, branch)

    return replace(config, alpha=config.alpha * t), replace(
        branch,
        omega=branch.omega * t * t,
    )
