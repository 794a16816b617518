"""
Closed-form predictions and the field facts they rest on.
"""

from .fibers import (
    expected_boomerang_uniformity,
    expected_locally_apn,
    odd_fiber_linkage_check,
    predicted_special_boomerang_values,
    predicted_unit_fiber,
    predicted_zero_fiber,
)
from .quadratic import (
    QuadraticCharacter,
    QuadSurveyReport,
    QuadUnitCircleReport,
    cube_root_exclusion_condition,
    cube_root_exclusion_mask,
    minus_three_character,
    minus_three_field_check,
    minus_three_is_square,
    unit_quadratic_solve,
    unit_quadratic_survey,
)
from .predictions import (
    PredictedSpectra,
    SpectrumBranch,
    moment_identity_check,
    predict_boomerang_spectrum,
    predict_differential_spectrum,
    predict_spectra,
    spectrum_branch,
)

__all__ = [
    "PredictedSpectra",
    "QuadSurveyReport",
    "QuadUnitCircleReport",
    "QuadraticCharacter",
    "SpectrumBranch",
    "cube_root_exclusion_condition",
    "cube_root_exclusion_mask",
    "expected_boomerang_uniformity",
    "expected_locally_apn",
    "minus_three_character",
    "minus_three_field_check",
    "minus_three_is_square",
    "moment_identity_check",
    "odd_fiber_linkage_check",
    "predict_boomerang_spectrum",
    "predict_differential_spectrum",
    "predict_spectra",
    "predicted_special_boomerang_values",
    "predicted_unit_fiber",
    "predicted_zero_fiber",
    "spectrum_branch",
    "unit_quadratic_solve",
    "unit_quadratic_survey",
]
