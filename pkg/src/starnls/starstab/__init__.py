"""Command-line tool for star-graph standing-wave stability."""

from .__main__ import main

__all__ = [
    "main",
]
