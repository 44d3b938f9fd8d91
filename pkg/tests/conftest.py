import os
import tempfile
from pathlib import Path

_home: Path = Path(tempfile.mkdtemp(prefix="starnls-tests-"))
_ = os.environ.pop("APPDATA", None)
os.environ["XDG_CONFIG_HOME"] = str(_home / "config")
os.environ["XDG_STATE_HOME"] = str(_home / "state")

import pytest  # noqa: E402

from starnls.graph import BranchParams, GraphConfig  # noqa: E402

type Case = tuple[GraphConfig, BranchParams]


@pytest.fixture
def attractive_bump() -> Case:
    """Attractive vertex, one bump: the first unstable example."""
    return GraphConfig(n=3, alpha=-1.0, p=1.0), BranchParams(omega=4.0, k=1)


@pytest.fixture
def attractive_symmetric() -> Case:
    """Attractive vertex, no bumps: the stable candidate."""
    return GraphConfig(n=3, alpha=-1.0, p=1.0), BranchParams(omega=1.0, k=0)


@pytest.fixture
def repulsive() -> Case:
    """Repulsive vertex, three bumps."""
    return GraphConfig(n=3, alpha=1.0, p=1.0), BranchParams(omega=4.0, k=0)
