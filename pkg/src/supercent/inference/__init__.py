"""Closed-form asymptotic inference and confidence intervals."""

from .closed_form import (
    BetaStandardErrors,
    se_beta_closed_form,
    se_centrality_entries,
    se_network_entries_supercent,
    se_network_entries_two_stage,
)
from .intervals import (
    VARIANTS,
    CoefficientInference,
    EntryIntervals,
    ci_beta,
    ci_centrality_entries,
    ci_network_entries,
    inference_report,
    z_quantile,
)

__all__ = [
    "VARIANTS",
    "BetaStandardErrors",
    "CoefficientInference",
    "EntryIntervals",
    "ci_beta",
    "ci_centrality_entries",
    "ci_network_entries",
    "inference_report",
    "se_beta_closed_form",
    "se_centrality_entries",
    "se_network_entries_supercent",
    "se_network_entries_two_stage",
    "z_quantile",
]
