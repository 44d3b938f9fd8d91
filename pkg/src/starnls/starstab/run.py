"""Resolved settings of one starstab invocation."""

from argparse import Namespace
from configparser import ConfigParser
from dataclasses import dataclass, field, replace
from enum import Enum
from logging import Logger, getLogger
from math import sqrt
from pathlib import Path
from typing import Any

from starnls.common.config import load_run_file
from starnls.common.errors import ValidationError
from starnls.dynamics import Direction
from starnls.graph import BranchParams, GraphConfig, ToleranceSet, validate
from starnls.spectrum import sweep_grid
from starnls.stationary import shift

logger: Logger = getLogger(__name__)

MAX_SEED: int = 2**64


class Command(Enum):
    """Subcommands of starstab."""

    STATES = "states"
    SPECTRUM = "spectrum"
    ORACLE = "oracle"
    EVOLVE = "evolve"
    SWEEP = "sweep"


@dataclass(frozen=True)
class RunConfig:
    """Settings of one run after merging flags, run file and config file.

    Attributes:
        command: Subcommand to run.
        out: Output directory.
        n: Number of edges.
        k: Branch index.
        alpha: Vertex strength.
        omega: Frequency.
        p: Nonlinearity power.
        seed: Seed of random perturbation directions.
        tolerances: Solver tolerances.
        grid_m: Elements per edge.
        edge_length: Edge length; None picks the default margin.
        edge_margin: Decay lengths beyond |a_K| when edge_length is None.
        compare: Fail when oracle and analytic counts disagree.
        dt: Time step.
        t_final: Final time.
        eps: Perturbation size.
        direction: Perturbation direction.
        workers: Worker processes of a sweep.
    """

    command: Command
    out: Path
    n: int | None = None
    k: int | None = None
    alpha: float | None = None
    omega: float | None = None
    p: float | None = None
    seed: int = 0
    tolerances: ToleranceSet = field(default_factory=ToleranceSet)
    grid_m: int = 2000
    edge_length: float | None = None
    edge_margin: float = 25.0
    compare: bool = False
    dt: float = 1e-3
    t_final: float = 20.0
    eps: float = 1e-3
    direction: Direction = Direction.UNSTABLE_MODE
    workers: int = 4

    @property
    def graph(self) -> GraphConfig:
        """Star graph of the run.

        Raises:
            ValidationError: N, alpha or p is missing.
        """
        if self.n is None or self.alpha is None or self.p is None:
            msg: str = f"{self.command.value} needs --n, --alpha and --p"
            raise ValidationError(msg)
        return GraphConfig(n=self.n, alpha=self.alpha, p=self.p)

    @property
    def branch(self) -> BranchParams:
        """Frequency and branch index of the run.

        Raises:
            ValidationError: omega is missing.
        """
        if self.omega is None:
            msg: str = f"{self.command.value} needs --omega"
            raise ValidationError(msg)
        return BranchParams(omega=self.omega, k=0 if self.k is None else self.k)

    def length(self) -> float:
        """Edge length, explicit or |a_K| plus edge_margin decay lengths.

        The decay length is 1 / (p sqrt(omega)); evolution runs use at least
        1 / sqrt(omega), the decay rate of the profile tail.
        """
        if self.edge_length is not None:
            return self.edge_length
        graph: GraphConfig = self.graph
        branch: BranchParams = self.branch
        decay: float = 1.0 / (graph.p * sqrt(branch.omega))
        if self.command is Command.EVOLVE:
            decay = max(decay, 1.0 / sqrt(branch.omega))
        return abs(shift(graph, branch)) + self.edge_margin * decay

    def sweep_configurations(self) -> list[tuple[GraphConfig, BranchParams]]:
        """Grid configurations matching the N, K, alpha and p of the run.

        Unset parameters match every value of the grid.

        Raises:
            ValidationError: omega is set or no grid configuration matches.
        """
        if self.omega is not None:
            msg: str = "sweep frequencies are multiples of each branch threshold, drop --omega"
            raise ValidationError(msg)
        chosen: list[tuple[GraphConfig, BranchParams]] = [
            (graph, branch)
            for graph, branch in sweep_grid()
            if (self.n is None or graph.n == self.n)
            and (self.k is None or branch.k == self.k)
            and (self.alpha is None or graph.alpha == self.alpha)
            and (self.p is None or graph.p == self.p)
        ]
        if not chosen:
            msg = f"no sweep configuration has n={self.n}, k={self.k}, alpha={self.alpha}, p={self.p}"
            raise ValidationError(msg)
        return chosen

    def provenance(self) -> dict[str, Any]:  # pyright: ignore[reportExplicitAny]
        """Settings recorded next to the outputs."""
        return {
            "command": self.command.value,
            "seed": self.seed,
            "grid_m": self.grid_m,
            "dt": self.dt,
            "t_final": self.t_final,
            "eps": self.eps,
            "direction": self.direction.value,
        }


_FLOATS: tuple[str, ...] = ("alpha", "omega", "p", "edge_length", "dt", "t_final", "eps")
_INTS: tuple[str, ...] = ("n", "k", "seed", "grid_m", "workers")


def _coerce(key: str, value: Any) -> Any:  # pyright: ignore[reportAny, reportExplicitAny]
    if value is None:
        return None
    if key in _FLOATS:
        return float(value)  # pyright: ignore[reportAny]
    if key in _INTS:
        return int(value)  # pyright: ignore[reportAny]
    if key == "direction":
        return Direction(value)
    if key == "compare":
        return bool(value)  # pyright: ignore[reportAny]
    return value


def _section_defaults(ini: ConfigParser, command: Command) -> dict[str, Any]:  # pyright: ignore[reportExplicitAny]
    defaults: dict[str, Any] = {"workers": ini.getint("sweep", "workers")}  # pyright: ignore[reportExplicitAny]
    section: str = "evolve" if command is Command.EVOLVE else "oracle"
    defaults["grid_m"] = ini.getint(section, "grid_m")
    defaults["edge_margin"] = ini.getfloat(section, "edge_margin")
    if command is Command.EVOLVE:
        defaults["dt"] = ini.getfloat("evolve", "dt")
        defaults["t_final"] = ini.getfloat("evolve", "t_final")
        defaults["eps"] = ini.getfloat("evolve", "eps")
    return defaults


def resolve_run(args: Namespace, ini: ConfigParser) -> RunConfig:
    """Merge command-line flags over the run file over the config file.

    Args:
        args: Parsed command line; None marks an unset flag.
        ini: Tool config file.

    Returns:
        The resolved run.

    Raises:
        ValidationError: The seed is out of range, the parameters describe no state
            or a sweep selects nothing.
    """
    command: Command = Command(args.command)
    merged: dict[str, Any] = _section_defaults(ini, command)  # pyright: ignore[reportExplicitAny]

    if args.config is not None:
        document: dict[str, Any] = load_run_file(args.config)  # pyright: ignore[reportExplicitAny]
        _ = document.pop("command", None)
        merged.update({key: _coerce(key, value) for key, value in document.items()})  # pyright: ignore[reportAny]

    flags: dict[str, Any] = {  # pyright: ignore[reportExplicitAny]
        key: _coerce(key, value)  # pyright: ignore[reportAny]
        for key, value in vars(args).items()  # pyright: ignore[reportAny]
        if key not in {"command", "config", "verbose"} and value is not None
    }
    merged.update(flags)

    tolerances: ToleranceSet = ToleranceSet.from_config(ini["tolerances"])
    overrides: object = merged.pop("tolerances", None)
    if isinstance(overrides, dict):
        tolerances = replace(
            tolerances,
            **{str(key): float(value) for key, value in overrides.items()},  # pyright: ignore[reportUnknownVariableType, reportUnknownArgumentType]
        )
    out: Path = Path(merged.pop("out", "."))
    known: set[str] = set(RunConfig.__dataclass_fields__) - {"command", "out", "tolerances"}
    unknown: set[str] = set(merged) - known
    if unknown:
        logger.warning("ignoring unknown settings: %s", ", ".join(sorted(unknown)))

    run: RunConfig = RunConfig(
        command=command,
        out=out,
        tolerances=tolerances,
        **{key: value for key, value in merged.items() if key in known},  # pyright: ignore[reportAny]
    )

    if not 0 <= run.seed < MAX_SEED:
        msg: str = f"seed must be an unsigned 64-bit integer, got {run.seed}"
        raise ValidationError(msg)
    if command is Command.SWEEP:
        _ = run.sweep_configurations()
    else:
        validate(run.graph, run.branch)

    return run
