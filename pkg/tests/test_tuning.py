"""Tests for tuning-parameter selection."""

import numpy as np
import pytest
from pydantic import ValidationError

from supercent.errors import DegenerateInputError, InfiniteLambdaError, InputError
from supercent.estimators import (
    CrossSectionSplit,
    LambdaSelection,
    cross_validate_lambda,
    default_grid,
    fit_two_stage,
    lambda_oracle,
    lambda_plugin,
    select_lambda,
)
from supercent.estimators.tuning import summarize_cv
from supercent.model import rng_stream, toy_config
from supercent.utils.config import CvSettings


def test_lambda_oracle_example():
    """Test n sigma_y^2 / sigma_a^2 on the toy design."""
    assert lambda_oracle(toy_config(sigma_a=2.0)) == pytest.approx(4.0)
    assert lambda_oracle(toy_config(sigma_a=4.0)) == pytest.approx(1.0)


def test_lambda_oracle_without_network_noise():
    with pytest.raises(InfiniteLambdaError):
        lambda_oracle(toy_config(sigma_a=0.0))


def test_lambda_plugin(noisy, noiseless):
    """Test the plug-in formula and the noiseless failure."""
    _, data = noisy
    ts = fit_two_stage(data)
    assert lambda_plugin(ts) == pytest.approx(data.n * ts.sigma_y_hat_sq / ts.sigma_a_hat_sq)
    with pytest.raises(DegenerateInputError):
        lambda_plugin(fit_two_stage(noiseless[1]))


def test_default_grid():
    """Test the log-uniform grid around its anchor."""
    grid = default_grid(3.0)
    assert len(grid) == 21
    assert grid[15] == pytest.approx(3.0)
    assert grid[0] == pytest.approx(3.0 / 2**15)
    assert grid[-1] == pytest.approx(3.0 * 32)
    assert np.allclose(np.diff(np.log2(grid)), 1.0)
    symmetric = default_grid(3.0, points=21, low_log2=-5.0, high_log2=5.0)
    assert symmetric[10] == pytest.approx(3.0)
    assert np.allclose(np.diff(np.log2(symmetric)), 0.5)
    assert default_grid(2.0, points=1) == [2.0]
    with pytest.raises(InputError):
        default_grid(0.0)


def test_selection_grid_validation():
    with pytest.raises(ValidationError):
        LambdaSelection(grid=[2.0, 1.0])
    with pytest.raises(ValidationError):
        LambdaSelection(grid=[0.0, 1.0])
    with pytest.raises(ValidationError):
        LambdaSelection(grid=[1.0], k_folds=1)


def test_cross_section_split_sizes():
    """Test that fold sizes differ by at most one."""
    split = CrossSectionSplit.random(23, 5, rng_stream(0))
    sizes = np.bincount(split.fold_assignments)
    assert split.k_folds == 5
    assert sizes.sum() == 23
    assert sizes.max() - sizes.min() <= 1
    seen = np.concatenate([val for _, _, val in split.folds()])
    assert sorted(seen.tolist()) == list(range(23))


def test_cross_section_split_rejections():
    with pytest.raises(InputError):
        CrossSectionSplit.random(4, 5, rng_stream(0))
    with pytest.raises(InputError):
        CrossSectionSplit.random(8, 2, rng_stream(0), p=3)


def test_cross_validation_table(noisy):
    """Test table layout and that the winner minimizes the total SSE."""
    _, data = noisy
    selection = LambdaSelection(grid=[0.25, 1.0, 4.0], k_folds=4)
    lam, table = cross_validate_lambda(data, selection, rng=rng_stream(1))
    assert list(table.columns) == ["lambda", "fold", "sse", "status", "converged"]
    assert len(table) == 12
    assert (table["status"] == "ok").all()
    totals = dict(summarize_cv(table))
    assert lam == min(totals, key=totals.get)


def test_singleton_grid_is_selected(noisy):
    _, data = noisy
    lam, table = cross_validate_lambda(
        data, LambdaSelection(grid=[2.0], k_folds=3), rng=rng_stream(2)
    )
    assert lam == 2.0
    assert len(table) == 3


def test_cross_validation_is_deterministic(noisy):
    """Test that a fixed stream and one or two workers agree exactly."""
    _, data = noisy
    selection = LambdaSelection(grid=[0.5, 2.0], k_folds=3)
    lam1, table1 = cross_validate_lambda(data, selection, rng=rng_stream(3), jobs=1)
    lam2, table2 = cross_validate_lambda(data, selection, rng=rng_stream(3), jobs=2)
    assert lam1 == lam2
    assert table1["sse"].tolist() == table2["sse"].tolist()


def test_select_lambda_paths(noisy):
    """Test the fixed, oracle, plug-in and CV routes."""
    params, data = noisy
    assert select_lambda(data, "fixed", value=3.0).selected == 3.0
    with pytest.raises(InputError):
        select_lambda(data, "fixed")
    with pytest.raises(InputError):
        select_lambda(data, "oracle")
    assert select_lambda(data, "oracle", params=params).selected == pytest.approx(
        lambda_oracle(params)
    )
    ts = fit_two_stage(data)
    plugin = select_lambda(data, "plugin", ts_fit=ts)
    assert plugin.selected == pytest.approx(lambda_plugin(ts))

    cv = CvSettings(k_folds=3, grid_points=3, grid_log2_low=-2.0, grid_log2_high=2.0)
    chosen = select_lambda(data, "cv", ts_fit=ts, cv=cv, rng=rng_stream(4))
    assert chosen.method == "cv"
    assert len(chosen.grid) == 3
    assert chosen.grid[1] == pytest.approx(plugin.selected)
    assert chosen.selected in chosen.grid
    assert len(chosen.cv_table) == 3
