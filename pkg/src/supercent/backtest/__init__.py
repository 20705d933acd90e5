"""Long-short portfolio backtest on centrality scores."""

from .long_short import BacktestInput, BacktestResult, long_short_returns

__all__ = ["BacktestInput", "BacktestResult", "long_short_returns"]
