"""Plain SVG charts of a MetricsTable (needs the ``plot`` extra)."""

import logging
from pathlib import Path
from typing import Union

import numpy as np

from ..errors import InputError
from .aggregate import MetricsTable

logger = logging.getLogger(__name__)


def _pyplot():
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError as e:
        raise InputError("Plotting needs matplotlib: pip install 'supercent[plot]'") from e
    return plt


def plot_metric_lines(
    table: MetricsTable,
    metric: str,
    path: Union[str, Path],
    x: str = "sigma_a",
    stat: str = "mean",
    log_x: bool = True,
) -> Path:
    """One line per estimator of ``stat`` against a swept parameter; theory overlays
    are drawn as markers."""
    plt = _pyplot()
    rows = table.select(metric=metric)
    if rows.empty:
        raise InputError(f"No rows for metric {metric!r}")
    fig, ax = plt.subplots(figsize=(6, 4))
    for estimator, group in rows.groupby("estimator", sort=False):
        group = group.groupby(x, sort=True)[stat].mean()
        style = "x" if str(estimator).startswith("theory") else "o-"
        ax.plot(group.index, group.to_numpy(), style, label=estimator)
    if log_x:
        ax.set_xscale("log", base=2)
    ax.set_xlabel(x)
    ax.set_ylabel(f"{metric} ({stat})")
    ax.legend(fontsize="small")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg")
    plt.close(fig)
    logger.info(f"Wrote {path}")
    return path


def plot_metric_boxes(
    table: MetricsTable,
    metric: str,
    path: Union[str, Path],
    x: str = "sigma_a",
) -> Path:
    """Box plot of per-replication values, grouped by swept value and estimator."""
    plt = _pyplot()
    raw = table.records[table.records["metric"] == metric]
    if raw.empty:
        raise InputError(f"No replication values for metric {metric!r}")
    data, labels = [], []
    for (level, estimator), group in raw.groupby([x, "estimator"], sort=True):
        values = group["value"].to_numpy(dtype=float)
        data.append(values[np.isfinite(values)])
        labels.append(f"{estimator}\n{x}={level:g}")
    fig, ax = plt.subplots(figsize=(max(6, 0.8 * len(data)), 4))
    ax.boxplot(data)
    ax.set_xticks(range(1, len(labels) + 1), labels, rotation=90, fontsize="x-small")
    ax.set_ylabel(metric)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg")
    plt.close(fig)
    logger.info(f"Wrote {path}")
    return path
