"""Long-short portfolios sorted on a per-period centrality score."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import pandas as pd

from ..errors import InputError, ParseError

logger = logging.getLogger(__name__)

INPUT_COLUMNS = ["period", "asset", "score", "next_return"]


@dataclass(frozen=True)
class BacktestInput:
    """Scores and next-period returns in long format, one row per (period, asset).

    Every period must list the same assets, and 1 <= k <= assets / 2.
    """

    panel: pd.DataFrame
    k: int = 3

    def __post_init__(self) -> None:
        missing = [c for c in INPUT_COLUMNS if c not in self.panel.columns]
        if missing:
            raise InputError(f"Backtest input lacks columns: {', '.join(missing)}")
        panel = self.panel[INPUT_COLUMNS].copy()
        panel["asset"] = panel["asset"].astype(str)
        if panel[["score", "next_return"]].isna().any().any():
            raise InputError("Backtest input has missing scores or returns")
        if panel.duplicated(["period", "asset"]).any():
            raise InputError("Backtest input repeats an (period, asset) pair")
        assets = panel.groupby("period", sort=False)["asset"].apply(frozenset)
        if assets.nunique() != 1:
            raise InputError("Every period must carry the same asset set")
        n_assets = len(assets.iloc[0])
        if self.k < 1 or 2 * self.k > n_assets:
            raise InputError(f"k={self.k} needs 1 <= k <= {n_assets // 2} for {n_assets} assets")
        object.__setattr__(self, "panel", panel)

    @classmethod
    def from_csv(cls, path: Union[str, Path], k: int = 3) -> "BacktestInput":
        path = Path(path)
        try:
            frame = pd.read_csv(path, dtype={"period": str, "asset": str})
        except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            raise ParseError(f"{path.name}: {e}", path=str(path))
        for column in ("score", "next_return"):
            if column in frame.columns:
                numeric = pd.to_numeric(frame[column], errors="coerce")
                bad = numeric.isna() & frame[column].notna()
                if bad.any():
                    row = int(bad.to_numpy().nonzero()[0][0]) + 2
                    raise ParseError(
                        f"{path.name}: non-numeric {column} at row {row}",
                        path=str(path),
                        row=row,
                        column=frame.columns.get_loc(column) + 1,
                    )
                frame[column] = numeric
        return cls(panel=frame, k=k)


@dataclass(frozen=True)
class BacktestResult:
    periods: pd.DataFrame
    k: int

    @property
    def mean_return(self) -> float:
        return float(self.periods["return"].mean())

    def summary(self) -> dict:
        return {"mean_return": self.mean_return, "n_periods": len(self.periods), "k": self.k}


def long_short_returns(data: BacktestInput) -> BacktestResult:
    """Equal-weight long the k lowest scores and short the k highest, per period.

    Periods keep their order of first appearance. Both legs come from one ranking by
    (score, asset), so ties are broken by asset identifier, the legs never share an
    asset and the result does not depend on row order within a period.

    Example:
        >>> frame = pd.DataFrame({"period": ["t"] * 4, "asset": list("abcd"),
        ...                       "score": [1, 2, 3, 4], "next_return": [0.1, 0, 0, -0.02]})
        >>> round(long_short_returns(BacktestInput(frame, k=1)).mean_return, 10)
        0.12
    """
    rows = []
    k = data.k
    for period, group in data.panel.groupby("period", sort=False):
        ranked = group.sort_values(["score", "asset"], kind="stable")
        low, high = ranked.head(k), ranked.tail(k)
        rows.append(
            {
                "period": period,
                "long_assets": ";".join(low["asset"]),
                "short_assets": ";".join(high["asset"]),
                "return": float(low["next_return"].mean() - high["next_return"].mean()),
            }
        )
    periods = pd.DataFrame(rows, columns=["period", "long_assets", "short_assets", "return"])
    logger.info(f"Backtest over {len(periods)} periods, k={k}")
    return BacktestResult(periods=periods, k=k)
