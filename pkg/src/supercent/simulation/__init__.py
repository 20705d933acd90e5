"""Monte Carlo panels: losses, the panel runner and aggregated tables."""

from .aggregate import MetricsTable
from .harness import PanelRunner, run_panel, run_replication, toy_experiment
from .metrics import loss_coef, loss_network, loss_prediction, loss_subspace
from .spec import ESTIMATORS, ExperimentSpec, PanelBuilder, preset_spec

__all__ = [
    "ESTIMATORS",
    "ExperimentSpec",
    "MetricsTable",
    "PanelBuilder",
    "PanelRunner",
    "loss_coef",
    "loss_network",
    "loss_prediction",
    "loss_subspace",
    "preset_spec",
    "run_panel",
    "run_replication",
    "toy_experiment",
]
