from configparser import ConfigParser

import pytest

from starnls.common.errors import (
    BelowThreshold,
    BranchOutOfRange,
    InvalidGraph,
    InvalidScale,
    ValidationError,
    ZeroAlpha,
)
from starnls.graph import (
    BranchParams,
    GraphConfig,
    ToleranceSet,
    omega_threshold,
    rescale,
    validate,
)
from starnls.stationary import shift


def test_validate_accepts_state_above_threshold() -> None:
    validate(GraphConfig(3, -1.0, 1.0), BranchParams(4.0, 1))


def test_validate_rejects_frequency_below_threshold() -> None:
    with pytest.raises(BelowThreshold):
        validate(GraphConfig(3, -1.0, 1.0), BranchParams(0.1, 0))


def test_validate_rejects_frequency_at_threshold() -> None:
    config: GraphConfig = GraphConfig(3, -1.0, 1.0)
    with pytest.raises(BelowThreshold):
        validate(config, BranchParams(omega_threshold(config, 1), 1))


def test_validate_rejects_branch_out_of_range() -> None:
    with pytest.raises(BranchOutOfRange):
        validate(GraphConfig(3, -1.0, 1.0), BranchParams(4.0, 2))
    with pytest.raises(BranchOutOfRange):
        validate(GraphConfig(3, -1.0, 1.0), BranchParams(4.0, -1))


def test_validate_rejects_kirchhoff_vertex() -> None:
    with pytest.raises(ZeroAlpha):
        validate(GraphConfig(3, 0.0, 1.0), BranchParams(4.0, 0))


@pytest.mark.parametrize(("n", "p"), [(1, 1.0), (3, 0.0), (3, -1.0)])
def test_validate_rejects_bad_graph(n: int, p: float) -> None:
    with pytest.raises(InvalidGraph):
        validate(GraphConfig(n, -1.0, p), BranchParams(4.0, 0))


def test_validation_errors_share_base() -> None:
    with pytest.raises(ValidationError):
        validate(GraphConfig(3, -1.0, 1.0), BranchParams(0.1, 0))
    with pytest.raises(ValueError, match="threshold"):
        validate(GraphConfig(3, -1.0, 1.0), BranchParams(0.1, 0))


def test_threshold_formula() -> None:
    config: GraphConfig = GraphConfig(5, 2.0, 1.0)
    assert omega_threshold(config, 0) == pytest.approx(4.0 / 25.0)
    assert omega_threshold(config, 2) == pytest.approx(4.0)


def test_rescale_example() -> None:
    config: GraphConfig
    branch: BranchParams
    config, branch = rescale(GraphConfig(3, -1.0, 1.0), BranchParams(4.0, 1), 2.0)
    assert config.alpha == -2.0
    assert branch.omega == 16.0
    assert (config.n, config.p, branch.k) == (3, 1.0, 1)


def test_rescale_shift_scales_inversely() -> None:
    config: GraphConfig = GraphConfig(3, -1.0, 1.0)
    branch: BranchParams = BranchParams(4.0, 1)
    scaled: tuple[GraphConfig, BranchParams] = rescale(config, branch, 2.0)
    assert shift(*scaled) == pytest.approx(shift(config, branch) / 2.0, rel=1e-14)


def test_rescale_round_trip() -> None:
    config: GraphConfig = GraphConfig(4, 1.3, 0.7)
    branch: BranchParams = BranchParams(2.9, 1)
    back: tuple[GraphConfig, BranchParams] = rescale(*rescale(config, branch, 3.7), 1.0 / 3.7)
    assert back[0].alpha == pytest.approx(config.alpha, rel=1e-14)
    assert back[1].omega == pytest.approx(branch.omega, rel=1e-14)


@pytest.mark.parametrize("t", [0.0, -1.0])
def test_rescale_rejects_nonpositive_factor(t: float) -> None:
    with pytest.raises(InvalidScale):
        _ = rescale(GraphConfig(3, -1.0, 1.0), BranchParams(4.0, 1), t)


def test_tolerances_reject_nonpositive() -> None:
    with pytest.raises(ValueError, match="root_tol"):
        _ = ToleranceSet(root_tol=0.0)


def test_tolerances_from_config_section() -> None:
    parser: ConfigParser = ConfigParser()
    parser.read_dict({"tolerances": {"root_tol": "1e-9"}})
    tolerances: ToleranceSet = ToleranceSet.from_config(parser["tolerances"])
    assert tolerances.root_tol == 1e-9
    assert tolerances.zero_tol == ToleranceSet().zero_tol
    assert tolerances.zero_threshold(4.0) == pytest.approx(4.0 * tolerances.zero_tol)
