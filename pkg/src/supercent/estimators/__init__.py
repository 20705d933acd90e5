"""Two-stage and SuperCENT estimators, tuning and their large-sample theory."""

from .results import FitResult, FitResultRecord, align_signs, orient_to_reference
from .solver import fit_supercent, fit_supercent_symmetric, supercent_objective
from .theory import (
    RateOracle,
    attenuation_factor,
    delta_ts_sc,
    noise_to_signal,
    plim_bias,
    supercent_rate_at_oracle,
    supercent_rate_oracle,
    two_stage_rate_oracle,
    two_stage_sigma_y_plim,
)
from .tuning import (
    CrossSectionSplit,
    LambdaSelection,
    cross_validate_lambda,
    default_grid,
    lambda_oracle,
    lambda_plugin,
    select_lambda,
)
from .two_stage import fit_two_stage

__all__ = [
    "CrossSectionSplit",
    "FitResult",
    "FitResultRecord",
    "LambdaSelection",
    "RateOracle",
    "align_signs",
    "attenuation_factor",
    "cross_validate_lambda",
    "default_grid",
    "delta_ts_sc",
    "fit_supercent",
    "fit_supercent_symmetric",
    "fit_two_stage",
    "lambda_oracle",
    "lambda_plugin",
    "noise_to_signal",
    "orient_to_reference",
    "plim_bias",
    "select_lambda",
    "supercent_objective",
    "supercent_rate_at_oracle",
    "supercent_rate_oracle",
    "two_stage_rate_oracle",
    "two_stage_sigma_y_plim",
]
