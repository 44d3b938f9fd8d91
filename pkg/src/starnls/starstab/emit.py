"""Deterministic CSV and JSON output."""

import csv
import json
from collections.abc import Iterable, Sequence
from logging import Logger, getLogger
from pathlib import Path
from typing import Any

logger: Logger = getLogger(__name__)


def _cell(value: object) -> object:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return value


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[object]]) -> None:
    """Write a CSV file with a header row.

    Floats are written with repr so identical runs give identical bytes; None
    becomes an empty cell.

    Args:
        path: File to write.
        header: Column names.
        rows: Data rows.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as file:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(header)
        count: int = 0
        row: Sequence[object]
        for row in rows:
            writer.writerow([_cell(value) for value in row])
            count += 1
    logger.info("wrote %d rows to %s", count, path)


def write_json(path: Path, document: dict[str, Any]) -> None:  # pyright: ignore[reportExplicitAny]
    """Write a JSON document with sorted keys.

    Args:
        path: File to write.
        document: Serializable mapping.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as file:
        json.dump(document, file, indent=2, sort_keys=True, allow_nan=False)
        _ = file.write("\n")
    logger.info("wrote %s", path)
