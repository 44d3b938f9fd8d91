"""Common utilities shared between starnls tools for handling logging."""

import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from types import TracebackType


def get_state_path(appname: str) -> Path:
    """Get the per-user state directory for a tool.

    Args:
        appname: Name of tool being run.

    Returns:
        Directory holding the tool's log files.
    """
    if "APPDATA" in os.environ:
        statehome: Path = Path(os.environ["APPDATA"])
    elif "XDG_STATE_HOME" in os.environ:
        statehome = Path(os.environ["XDG_STATE_HOME"])
    else:
        statehome = Path(os.environ["HOME"]) / ".local/state"

    path: Path = statehome / appname
    path.mkdir(parents=True, exist_ok=True)

    return path


def config_logging(appname: str, level: int = logging.INFO) -> None:
    """Configure the logging system.

    Records go to a rotating log file in the user's state directory and to stderr.

    Args:
        appname: Name of tool being run.
        level: Minimum level of records to emit.
    """
    stream: logging.Handler = logging.StreamHandler(sys.stderr)
    stream.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))

    logging.basicConfig(
        handlers=[
            RotatingFileHandler(
                get_state_path(appname) / f"{appname}.log",
                delay=True,
                maxBytes=100000,
                backupCount=5,
            ),
            stream,
        ],
        format="%(asctime)s %(name)s:%(funcName)s:%(lineno)d\n%(levelname)s %(message)s\n",
        level=level,
        force=True,
    )

    sys.excepthook = handle_exception


def handle_exception(
    exception_type: type[BaseException],
    value: BaseException,
    tb: TracebackType | None,
) -> None:
    """Handle an exception by logging it.

    Args:
        exception_type: Type of exception.
        value: Exception.
        tb: Traceback.
    """
    if issubclass(exception_type, KeyboardInterrupt):
        sys.__excepthook__(exception_type, value, tb)
        return

    logging.error("Uncaught exception", exc_info=(exception_type, value, tb))
