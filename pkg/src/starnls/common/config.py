"""Common utilities shared between starnls tools for handling configuration."""

import json
import os
from configparser import ConfigParser
from pathlib import Path
from typing import Any


def save(config: ConfigParser, path: Path) -> None:
    """Save config file.

    Args:
        config: ConfigParser containing config values to save.
        path: File to save to.
    """
    with path.open("w", encoding="utf-8") as file:
        config.write(file)


def load(
    path: Path,
    defaults: dict[str, dict[str, str]],
) -> ConfigParser:
    """Load config file, writing the defaults to it on first use.

    Sections and keys missing from an existing file fall back to the defaults.

    Args:
        path: File to load from.
        defaults: Dictionary of default config values.

    Returns:
        ConfigParser with loaded config values.
    """
    config: ConfigParser = ConfigParser()
    config.read_dict(defaults)

    if path.exists():
        _ = config.read(path)
        return config

    save(config, path)

    return config


def get_path(appname: str) -> Path:
    """Get path to config file.

    Args:
        appname: Name of tool being run.

    Returns:
        Path to config file.
    """
    if "APPDATA" in os.environ:
        confighome: Path = Path(os.environ["APPDATA"])
    elif "XDG_CONFIG_HOME" in os.environ:
        confighome = Path(os.environ["XDG_CONFIG_HOME"])
    else:
        confighome = Path(os.environ["HOME"]) / ".config"

    path: Path = confighome / appname / "config.ini"
    path.parent.mkdir(parents=True, exist_ok=True)

    return path


def load_run_file(path: Path | str) -> dict[str, Any]:  # pyright: ignore[reportExplicitAny]
    """Load a JSON run file.

    Args:
        path: File to load from.

    Returns:
        Mapping of option names to values. Dashes in keys are normalized to underscores.

    Raises:
        ValueError: The document is not a JSON object.
    """
    if isinstance(path, str):
        path = Path(path)

    with path.open(encoding="utf-8") as file:
        document: object = json.load(file)

    if not isinstance(document, dict):
        msg: str = f"run file {path.name} must contain a JSON object"
        raise ValueError(msg)

    return {str(key).replace("-", "_"): value for key, value in document.items()}  # pyright: ignore[reportUnknownVariableType, reportUnknownArgumentType]
