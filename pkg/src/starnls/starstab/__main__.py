"""Batch front end for stationary states, index counts, the oracle and evolution runs."""

import logging
import sys
from argparse import ArgumentParser, Namespace
from collections.abc import Callable, Sequence
from logging import Logger, getLogger

from starnls.common.errors import StarNLSError
from starnls.common.logging import config_logging
from starnls.dynamics import Direction
from starnls.starstab import commands
from starnls.starstab._config import config
from starnls.starstab.run import Command, RunConfig, resolve_run

logger: Logger = getLogger(__name__)

EXIT_INVALID: int = 2

HANDLERS: dict[Command, Callable[[RunConfig], int]] = {
    Command.STATES: commands.states,
    Command.SPECTRUM: commands.spectrum,
    Command.ORACLE: commands.oracle,
    Command.EVOLVE: commands.evolve,
    Command.SWEEP: commands.sweep,
}


def _add_common(parser: ArgumentParser) -> None:
    parser.add_argument("--n", type=int, help="number of edges")
    parser.add_argument("--k", type=int, help="branch index K")
    parser.add_argument("--alpha", type=float, help="vertex strength")
    parser.add_argument("--omega", type=float, help="frequency")
    parser.add_argument("--p", type=float, help="nonlinearity power")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--config", help="JSON run file")
    parser.add_argument("--seed", type=int, help="seed of random directions (unsigned 64-bit)")
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")


def build_parser() -> ArgumentParser:
    """Build the argument parser.

    Returns:
        Parser with one subparser per command.
    """
    parser: ArgumentParser = ArgumentParser(
        prog="starstab",
        description="Stability indices of NLS standing waves on a star graph.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    command: Command
    for command in Command:
        sub: ArgumentParser = subparsers.add_parser(command.value)
        _add_common(sub)
        if command in {Command.ORACLE, Command.EVOLVE, Command.SWEEP}:
            sub.add_argument("--grid-m", dest="grid_m", type=int, help="elements per edge")
        if command in {Command.ORACLE, Command.EVOLVE}:
            sub.add_argument("--edge-length", dest="edge_length", type=float, help="edge length")
        if command in {Command.ORACLE, Command.SWEEP}:
            sub.add_argument(
                "--compare",
                action="store_true",
                default=None,
                help="exit 1 when oracle and analytic counts disagree",
            )
        if command is Command.EVOLVE:
            sub.add_argument("--dt", type=float, help="time step")
            sub.add_argument("--t-final", dest="t_final", type=float, help="final time")
            sub.add_argument("--eps", type=float, help="perturbation size")
            sub.add_argument(
                "--direction",
                choices=[d.value for d in Direction],
                help="perturbation direction",
            )
        if command is Command.SWEEP:
            sub.add_argument("--workers", type=int, help="worker processes")

    return parser


def main(argv: Sequence[str] | None = None) -> None:
    """Main function for running starstab.

    Args:
        argv: Command line without the program name; defaults to sys.argv.
    """
    args: Namespace = build_parser().parse_args(argv)
    config_logging("starstab", logging.DEBUG if args.verbose else logging.INFO)

    try:
        run: RunConfig = resolve_run(args, config)
        status: int = HANDLERS[run.command](run)
    except (StarNLSError, ValueError, OSError) as e:
        logger.error("%s: %s", type(e).__name__, e)  # noqa: TRY400
        sys.exit(EXIT_INVALID)

    sys.exit(status)


if __name__ == "__main__":
    main()
