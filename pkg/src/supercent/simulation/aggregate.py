"""Aggregation of replication records into a MetricsTable."""

import logging
from pathlib import Path
from typing import TYPE_CHECKING, Union

import numpy as np
import pandas as pd

from ..errors import DegenerateInputError, InputError
from ..estimators.theory import supercent_rate_oracle, two_stage_rate_oracle
from ..estimators.tuning import lambda_oracle

if TYPE_CHECKING:
    from .spec import ExperimentSpec

logger = logging.getLogger(__name__)

KEY_COLUMNS = ["sigma_a", "sigma_y", "beta_u", "estimator", "metric"]
STAT_COLUMNS = ["mean", "median", "sd", "q05", "q95", "n_ok", "n_fail", "mc_se"]
COLUMNS = KEY_COLUMNS + STAT_COLUMNS


def _theory_rows(spec: "ExperimentSpec") -> list[dict]:
    rows = []
    for config in spec.configs():
        overlays = {"theory-ts": two_stage_rate_oracle(config)}
        try:
            overlays["theory-sc"] = supercent_rate_oracle(config, lambda_oracle(config))
        except DegenerateInputError:
            pass
        for name, rates in overlays.items():
            for metric, value in (
                ("loss_u", rates.mse_u),
                ("loss_v", rates.mse_v),
                ("loss_A", rates.mse_A_rel),
            ):
                rows.append(
                    {
                        "sigma_a": config.sigma_a,
                        "sigma_y": config.sigma_y,
                        "beta_u": config.beta_u,
                        "estimator": name,
                        "metric": metric,
                        "mean": value,
                        "median": value,
                        "sd": np.nan,
                        "q05": np.nan,
                        "q95": np.nan,
                        "n_ok": 0,
                        "n_fail": 0,
                        "mc_se": np.nan,
                    }
                )
    return rows


class MetricsTable:
    """Replication statistics per (design, estimator or interval variant, metric).

    ``frame`` holds the aggregated rows; ``records`` the raw per-replication values
    (needed for box plots); ``failures`` one row per failed estimator run.
    """

    def __init__(self, frame: pd.DataFrame, records: pd.DataFrame, failures: pd.DataFrame):
        self.frame = frame
        self.records = records
        self.failures = failures

    @classmethod
    def from_records(
        cls,
        spec: "ExperimentSpec",
        records: list[dict],
        failures: list[dict],
    ) -> "MetricsTable":
        """Aggregate in a fixed order: configs by index, then labels and metrics in the
        order they first appear."""
        configs = spec.configs()
        design = pd.DataFrame(
            {
                "config_index": range(len(configs)),
                "sigma_a": [c.sigma_a for c in configs],
                "sigma_y": [c.sigma_y for c in configs],
                "beta_u": [c.beta_u for c in configs],
            }
        )
        raw = pd.DataFrame(
            records, columns=["config_index", "replication", "estimator", "metric", "value"]
        )
        fails = pd.DataFrame(
            failures, columns=["config_index", "replication", "estimator", "reason"]
        )
        # Estimator and interval variant may share a label; count a replication once.
        fail_counts = (
            fails.drop_duplicates(["config_index", "replication", "estimator"])
            .groupby(["config_index", "estimator"])
            .size()
        )

        rows = []
        grouped = raw.sort_values(["config_index", "replication"], kind="stable").groupby(
            ["config_index", "estimator", "metric"], sort=False
        )
        for (c, label, metric), group in grouped:
            values = group["value"].astype(float)
            values = values[np.isfinite(values)]
            mean = float(values.mean()) if len(values) else np.nan
            mc_se = np.nan
            if metric.startswith("cover_") and len(values):
                mc_se = float(np.sqrt(max(mean * (1.0 - mean), 0.0) / len(values)))
            config = configs[c]
            rows.append(
                {
                    "config_index": c,
                    "sigma_a": config.sigma_a,
                    "sigma_y": config.sigma_y,
                    "beta_u": config.beta_u,
                    "estimator": label,
                    "metric": metric,
                    "mean": mean,
                    "median": float(values.median()) if len(values) else np.nan,
                    "sd": float(values.std()) if len(values) > 1 else np.nan,
                    "q05": float(values.quantile(0.05)) if len(values) else np.nan,
                    "q95": float(values.quantile(0.95)) if len(values) else np.nan,
                    "n_ok": int(len(values)),
                    "n_fail": int(fail_counts.get((c, label), 0)),
                    "mc_se": mc_se,
                }
            )
        frame = pd.DataFrame(rows, columns=["config_index", *COLUMNS])
        frame = frame.sort_values("config_index", kind="stable").drop(columns="config_index")
        frame = pd.concat([frame, pd.DataFrame(_theory_rows(spec), columns=COLUMNS)])
        frame = frame.reset_index(drop=True)
        raw = raw.merge(design, on="config_index", how="left")
        return cls(frame=frame, records=raw, failures=fails)

    def value(
        self,
        estimator: str,
        metric: str,
        stat: str = "mean",
        sigma_a: float | None = None,
        sigma_y: float | None = None,
        beta_u: float | None = None,
    ) -> float:
        """Single statistic; design filters may be omitted when the panel has one value.

        Raises:
            InputError: If the selection is not exactly one row
        """
        rows = self.select(estimator, metric, sigma_a, sigma_y, beta_u)
        if len(rows) != 1:
            raise InputError(
                f"Expected one row for {estimator}/{metric}, found {len(rows)}"
            )
        return float(rows.iloc[0][stat])

    def select(
        self,
        estimator: str | None = None,
        metric: str | None = None,
        sigma_a: float | None = None,
        sigma_y: float | None = None,
        beta_u: float | None = None,
    ) -> pd.DataFrame:
        """Aggregated rows matching every given filter."""
        mask = pd.Series(True, index=self.frame.index)
        for column, wanted in (
            ("estimator", estimator),
            ("metric", metric),
            ("sigma_a", sigma_a),
            ("sigma_y", sigma_y),
            ("beta_u", beta_u),
        ):
            if wanted is not None:
                if column in ("sigma_a", "sigma_y", "beta_u"):
                    mask &= np.isclose(self.frame[column], wanted, rtol=1e-12, atol=0.0)
                else:
                    mask &= self.frame[column] == wanted
        return self.frame[mask]

    def raw_values(self, estimator: str, metric: str, **design: float) -> np.ndarray:
        """Per-replication values for one estimator and metric."""
        mask = (self.records["estimator"] == estimator) & (self.records["metric"] == metric)
        for column, wanted in design.items():
            mask &= np.isclose(self.records[column], wanted, rtol=1e-12, atol=0.0)
        return self.records.loc[mask, "value"].to_numpy(dtype=float)

    def to_csv(self, path: Union[str, Path]) -> Path:
        """Write the aggregated rows with full float precision."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.frame.to_csv(path, index=False, columns=COLUMNS, float_format="%.17g")
        logger.info(f"Wrote {len(self.frame)} metric rows to {path}")
        return path

    def __len__(self) -> int:
        return len(self.frame)
