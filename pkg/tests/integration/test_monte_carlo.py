"""Monte Carlo checks of the large-sample theory."""

import numpy as np
import pytest

from supercent.estimators import (
    LambdaSelection,
    cross_validate_lambda,
    default_grid,
    delta_ts_sc,
    fit_two_stage,
    lambda_oracle,
    lambda_plugin,
    plim_bias,
)
from supercent.model import panel_base, rng_stream, simulate, toy_config
from supercent.simulation import PanelBuilder, run_panel, toy_experiment

pytestmark = pytest.mark.slow

RHO = 0.5 / np.sqrt(1.25)


def _panel(sigma_a, sigma_y, beta_u, estimators, variants, reps, seed):
    spec = (
        PanelBuilder()
        .with_base(panel_base())
        .with_sigma_a(sigma_a)
        .with_sigma_y(sigma_y)
        .with_beta_u(beta_u)
        .with_estimators(estimators)
        .with_ci_variants(variants)
        .with_replications(reps)
        .with_seed(seed)
        .with_parallelism(2)
        .build()
    )
    return run_panel(spec)


def test_two_stage_rates_consistent_regime():
    """Test centrality and network losses against the two-stage rate overlay."""
    table = _panel([2.0**-4, 2.0**-2], [0.25], [4.0], ["two-stage"], [], 200, 101)
    for sigma_a in (2.0**-4, 2.0**-2):
        for metric in ("loss_u", "loss_v", "loss_A"):
            observed = table.value("two-stage", metric, sigma_a=sigma_a)
            expected = table.value("theory-ts", metric, sigma_a=sigma_a)
            assert observed == pytest.approx(expected, rel=0.10)
        assert table.value("two-stage", "loss_u", "n_fail", sigma_a=sigma_a) == 0


def test_attenuation_bias_inconsistent_regime():
    """Test the two-stage beta_u against its probability limit at kappa = 1/16."""
    table = _panel([4.0], [0.25], [16.0], ["two-stage"], ["ts-adhoc"], 200, 202)
    plim_bu, _ = plim_bias(16.0, 1.0, RHO, 4.0**2 / 256)
    mean_bu = 16.0 + table.value("two-stage", "bias_bu")
    assert mean_bu == pytest.approx(plim_bu, rel=0.05)
    assert table.value("two-stage", "sigma_y_hat_sq") > 0.25**2
    assert table.value("ts-adhoc", "cover_bu") < 0.90


def test_oracle_coverage_consistent_regime():
    """Test nominal coverage of the oracle beta_u intervals."""
    estimators = ["two-stage", "sc-oracle"]
    variants = ["ts-oracle", "sc-oracle"]
    table = _panel([2.0**-2], [2.0**-2], [4.0], estimators, variants, 400, 303)
    for variant in ("ts-oracle", "sc-oracle"):
        coverage = table.value(variant, "cover_bu")
        assert 0.92 <= coverage <= 0.98
        assert table.value(variant, "cover_bu", "mc_se") < 0.02


def test_supercent_improvement_matches_delta():
    """Test the centrality gain at the oracle lambda against beta_u^2 delta (n - p - 2) / n."""
    sigma_a, sigma_y, beta_u = 2.0**-2, 2.0**-4, 16.0
    table = _panel([sigma_a], [sigma_y], [beta_u], ["two-stage", "sc-oracle"], [], 100, 404)
    config = panel_base().with_(sigma_a=sigma_a, sigma_y=sigma_y, beta_u=beta_u)
    delta = delta_ts_sc(config, lambda_oracle(config))
    expected = beta_u**2 * delta * (config.n - config.p - 2) / config.n
    gain = table.value("two-stage", "loss_u") - table.value("sc-oracle", "loss_u")
    assert gain == pytest.approx(expected, rel=0.20)


def test_network_entry_coverage_consistent_regime():
    """Test entrywise A_0 coverage and the narrower SuperCENT entry intervals."""
    estimators = ["two-stage", "sc-oracle"]
    variants = ["ts-oracle", "sc-oracle"]
    table = _panel([2.0**-2], [2.0**-2], [4.0], estimators, variants, 200, 505)
    for variant in variants:
        assert 0.92 <= table.value(variant, "cover_A") <= 0.98
    assert table.value("sc-oracle", "width_A") < table.value("ts-oracle", "width_A")


def test_cv_supercent_removes_attenuation():
    """Test CV-tuned SuperCENT against two-stage on the toy design at sigma_a = 4."""
    table = toy_experiment(sigma_a_grid=[4.0], replications=100, seed=606, parallelism=4)
    assert table.value("sc-cv", "bias_bu", "n_ok") >= 95
    ts_bias = table.value("two-stage", "bias_bu")
    assert abs(table.value("sc-cv", "bias_bu")) <= 0.5 * abs(ts_bias)
    assert table.value("sc-cv", "loss_u", "median") < table.value("two-stage", "loss_u", "median")

    assert table.value("ts-adhoc", "cover_bu") < 0.90
    assert table.value("sc-cv", "cover_bu") >= 0.90
    assert table.value("sc-cv", "width_bu", "median") < table.value("ts", "width_bu", "median")


def test_toy_experiment_sweep():
    """Test the sigma_a sweep of the toy experiment."""
    table = toy_experiment(sigma_a_grid=[2.0, 8.0], replications=10, seed=707, parallelism=2)
    for sigma_a in (2.0, 8.0):
        for label, metric in [
            ("two-stage", "sin_u"),
            ("sc-cv", "sin_u"),
            ("sc-cv", "bias_bu"),
            ("ts-adhoc", "cover_bu"),
            ("ts", "width_bu"),
            ("sc-cv", "width_bu"),
        ]:
            row = table.select(label, metric, sigma_a=sigma_a).iloc[0]
            assert row["n_ok"] + row["n_fail"] == 10
    assert table.value("two-stage", "sin_u", sigma_a=8.0) > table.value(
        "two-stage", "sin_u", sigma_a=2.0
    )
    assert table.value("two-stage", "bias_bu", sigma_a=8.0) < table.value(
        "two-stage", "bias_bu", sigma_a=2.0
    )
    assert table.value("sc-cv", "sin_u", "median", sigma_a=8.0) < table.value(
        "two-stage", "sin_u", "median", sigma_a=8.0
    )


def test_cross_validation_locates_oracle_lambda():
    """Test that CV over lambda_0 * 2^[-5, 5] lands within 2^1.5 of lambda_0."""
    config = toy_config(sigma_a=4.0)
    lam0 = lambda_oracle(config)
    selection = LambdaSelection(method="cv", grid=default_grid(lam0, 21, -5.0, 5.0), k_folds=5)
    hits = 0
    for r in range(100):
        _, data = simulate(config, rng_stream(808, r))
        lam, _ = cross_validate_lambda(data, selection, rng=rng_stream(808, r, 1))
        hits += abs(np.log2(lam / lam0)) <= 1.5 + 1e-9
    assert hits >= 70


def _plugin_log_ratios(config, seed: int, reps: int) -> np.ndarray:
    lam0 = lambda_oracle(config)
    ratios = []
    for r in range(reps):
        _, data = simulate(config, rng_stream(seed, r))
        ratios.append(lambda_plugin(fit_two_stage(data)) / lam0)
    return np.abs(np.log2(ratios))


def test_plugin_lambda_calibration():
    """Test the plug-in lambda near lambda_0 when consistent and off target otherwise."""
    consistent = _plugin_log_ratios(panel_base().with_(sigma_a=0.25, sigma_y=0.25), 909, 500)
    inconsistent = _plugin_log_ratios(toy_config(sigma_a=4.0), 910, 200)
    assert np.mean(consistent <= 1.0) >= 0.90
    assert np.median(inconsistent) > np.median(consistent)
