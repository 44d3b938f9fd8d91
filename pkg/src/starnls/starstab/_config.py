from configparser import ConfigParser
from pathlib import Path

from starnls.common.config import get_path, load, save


def save_config() -> None:
    """Save config file."""
    save(config, _path)


_path: Path = get_path("starstab")
config: ConfigParser = load(
    _path,
    {
        "tolerances": {
            "root_tol": "1e-10",
            "ode_rel_tol": "1e-11",
            "zero_tol": "1e-9",
            "far_field_cut": "1e-14",
        },
        "oracle": {
            "grid_m": "2000",
            "edge_margin": "25",
        },
        "evolve": {
            "dt": "1e-3",
            "t_final": "20",
            "eps": "1e-3",
            "grid_m": "2000",
            "edge_margin": "40",
        },
        "sweep": {
            "workers": "4",
        },
    },
)
