"""Counting the negative and zero eigenvalues of the linearized operators."""

from .counts import (
    DeterminantFactors,
    EigenvalueRecord,
    F,
    F_curve,
    F_zero_closed_form,
    RecordKind,
    SpectralReport,
    Verdict,
    assemble_report,
    det_M_condition,
    expected_morse_index,
    find_lambda_star,
    has_pole,
    positive_side_holds,
    solve_F_equals_alpha,
)
from .grid import sweep_grid

__all__ = [
    "DeterminantFactors",
    "EigenvalueRecord",
    "F",
    "F_curve",
    "F_zero_closed_form",
    "RecordKind",
    "SpectralReport",
    "Verdict",
    "assemble_report",
    "det_M_condition",
    "expected_morse_index",
    "find_lambda_star",
    "has_pole",
    "positive_side_holds",
    "solve_F_equals_alpha",
    "sweep_grid",
]
