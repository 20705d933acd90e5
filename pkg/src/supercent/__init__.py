"""supercent - supervised network centrality estimation and inference."""

__version__ = "0.1.0"
__author__ = "Alan Redmond"

from . import backtest, core, estimators, inference, model, predict, simulation, storage, utils
from .errors import SupercentError
from .estimators import FitResult, fit_supercent, fit_two_stage
from .model import Dataset, UnifiedModelParams

__all__ = [
    "Dataset",
    "FitResult",
    "SupercentError",
    "UnifiedModelParams",
    "backtest",
    "core",
    "estimators",
    "fit_supercent",
    "fit_two_stage",
    "inference",
    "model",
    "predict",
    "simulation",
    "storage",
    "utils",
]
