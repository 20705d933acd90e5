"""Tests for the long-short backtest."""

import numpy as np
import pandas as pd
import pytest

from supercent.backtest import BacktestInput, long_short_returns
from supercent.errors import InputError, ParseError


@pytest.fixture
def panel(rng):
    """Two periods of six assets with random scores and returns."""
    rows = []
    for period in ("2020-02", "2020-01"):
        for asset in "abcdef":
            rows.append(
                {
                    "period": period,
                    "asset": asset,
                    "score": float(rng.standard_normal()),
                    "next_return": float(rng.normal(0.0, 0.05)),
                }
            )
    return pd.DataFrame(rows)


def test_single_period_example():
    """Test long the lowest score and short the highest."""
    frame = pd.DataFrame(
        {
            "period": ["t"] * 4,
            "asset": list("abcd"),
            "score": [1, 2, 3, 4],
            "next_return": [0.1, 0.0, 0.0, -0.02],
        }
    )
    result = long_short_returns(BacktestInput(frame, k=1))
    assert result.mean_return == pytest.approx(0.12)
    assert result.periods.loc[0, "long_assets"] == "a"
    assert result.periods.loc[0, "short_assets"] == "d"
    assert result.summary() == {"mean_return": result.mean_return, "n_periods": 1, "k": 1}


def test_equal_returns_give_zero(panel):
    panel["next_return"] = 0.03
    result = long_short_returns(BacktestInput(panel, k=2))
    assert np.allclose(result.periods["return"], 0.0)


def test_period_order_and_row_permutation(panel):
    """Test first-appearance period order and invariance to row order within periods."""
    result = long_short_returns(BacktestInput(panel, k=2))
    assert result.periods["period"].tolist() == ["2020-02", "2020-01"]
    shuffled = pd.concat(
        [g.sample(frac=1.0, random_state=3) for _, g in panel.groupby("period", sort=False)]
    )
    again = long_short_returns(BacktestInput(shuffled, k=2))
    pd.testing.assert_frame_equal(result.periods, again.periods)


def test_ties_broken_by_asset():
    frame = pd.DataFrame(
        {"period": ["t"] * 4, "asset": list("dcba"), "score": [1.0] * 4, "next_return": [0.0] * 4}
    )
    result = long_short_returns(BacktestInput(frame, k=1))
    assert result.periods.loc[0, "long_assets"] == "a"
    assert result.periods.loc[0, "short_assets"] == "d"


def test_tied_scores_at_the_cut_keep_legs_disjoint():
    """Test that a tie across the cut-off never puts one asset in both legs."""
    frame = pd.DataFrame(
        {
            "period": ["t"] * 4,
            "asset": list("abcd"),
            "score": [1.0, 2.0, 2.0, 3.0],
            "next_return": [0.04, 0.01, -0.01, -0.03],
        }
    )
    row = long_short_returns(BacktestInput(frame, k=2)).periods.loc[0]
    long_leg = set(row["long_assets"].split(";"))
    short_leg = set(row["short_assets"].split(";"))
    assert long_leg == {"a", "b"}
    assert short_leg == {"c", "d"}
    assert row["return"] == pytest.approx((0.04 + 0.01) / 2 - (-0.01 - 0.03) / 2)


def test_input_validation(panel):
    with pytest.raises(InputError):
        BacktestInput(panel, k=4)
    with pytest.raises(InputError):
        BacktestInput(panel, k=0)
    with pytest.raises(InputError):
        BacktestInput(panel.drop(columns="score"))
    with pytest.raises(InputError):
        BacktestInput(panel.iloc[1:], k=1)
    with pytest.raises(InputError):
        BacktestInput(pd.concat([panel, panel.iloc[:1]]), k=1)


def test_from_csv(tmp_path, panel):
    """Test reading a CSV and locating a non-numeric score."""
    path = tmp_path / "scores.csv"
    panel.to_csv(path, index=False)
    assert long_short_returns(BacktestInput.from_csv(path, k=2)).periods.shape[0] == 2

    path.write_text("period,asset,score,next_return\nt,a,1,0.1\nt,b,oops,0.2\n")
    with pytest.raises(ParseError) as info:
        BacktestInput.from_csv(path, k=1)
    assert (info.value.row, info.value.column) == (3, 3)
