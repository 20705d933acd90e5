"""Tests for closed-form standard errors and confidence intervals."""

import numpy as np
import pytest

from supercent.errors import InputError
from supercent.estimators import fit_supercent, fit_two_stage
from supercent.inference import (
    ci_beta,
    ci_centrality_entries,
    ci_network_entries,
    inference_report,
    se_beta_closed_form,
    se_centrality_entries,
    se_network_entries_supercent,
    se_network_entries_two_stage,
    z_quantile,
)
from supercent.model import rescale_to_sqrt_n
from supercent.utils.config import SolverSettings


@pytest.fixture
def centralities(rng):
    n = 12
    u = rescale_to_sqrt_n(rng.standard_normal(n))
    v = rescale_to_sqrt_n(0.5 * u + rng.standard_normal(n))
    X = np.column_stack([np.ones(n), rng.standard_normal(n)])
    return u, v, X


def test_z_quantile():
    assert z_quantile(0.05) == pytest.approx(1.959964, abs=1e-6)
    assert z_quantile(0.1) == pytest.approx(1.644854, abs=1e-6)
    with pytest.raises(InputError):
        z_quantile(1.0)


def test_two_stage_entry_variances(centralities):
    """Test the entry variance total and the Kronecker diagonal."""
    u, v, _ = centralities
    n = u.shape[0]
    se = se_network_entries_two_stage(u, v, 0.5)
    assert np.sum(se**2) == pytest.approx(0.5 * (2 * n - 1))

    Pu = np.outer(u, u) / n
    Pv = np.outer(v, v) / n
    full = 0.5 * (np.eye(n * n) - np.kron(np.eye(n) - Pv, np.eye(n) - Pu))
    expected = np.diag(full).reshape((n, n), order="F")
    np.testing.assert_allclose(se**2, expected, atol=1e-12)


def test_supercent_entries_reduce_to_two_stage(centralities):
    """Test zero coefficients and a dominant lambda."""
    u, v, X = centralities
    ts = se_network_entries_two_stage(u, v, 0.5)
    args = dict(u=u, v=v, X=X, d=1.0, sigma_y_sq=0.1, sigma_a_sq=0.5)
    sc = se_network_entries_supercent(beta_u=0.0, beta_v=0.0, lam=2.0, **args)
    np.testing.assert_allclose(sc, ts, atol=1e-14)
    sc = se_network_entries_supercent(beta_u=4.0, beta_v=1.0, lam=1e12, **args)
    np.testing.assert_allclose(sc, ts, atol=1e-6)


def test_supercent_entries_not_above_two_stage_at_oracle(centralities):
    u, v, X = centralities
    n = u.shape[0]
    sigma_y_sq, sigma_a_sq = 0.1, 0.5
    lam0 = n * sigma_y_sq / sigma_a_sq
    sc = se_network_entries_supercent(u, v, X, 1.0, 4.0, 1.0, lam0, sigma_y_sq, sigma_a_sq)
    ts = se_network_entries_two_stage(u, v, sigma_a_sq)
    assert np.sum(sc**2) < np.sum(ts**2)


def test_beta_se_without_network_noise(centralities):
    """Test that sigma_a = 0 leaves the OLS variance."""
    u, v, X = centralities
    se = se_beta_closed_form(u, v, X, 4.0, 1.0, 1.0, sigma_y_sq=0.3, sigma_a_sq=0.0)
    W = np.column_stack([X, u, v])
    cov = 0.3 * np.linalg.inv(W.T @ W)
    assert se.se_bu == pytest.approx(np.sqrt(cov[2, 2]))
    assert se.se_bv == pytest.approx(np.sqrt(cov[3, 3]))
    np.testing.assert_allclose(se.cov_bx, cov[:2, :2], atol=1e-12)


def test_beta_se_swap_symmetry(centralities):
    u, v, X = centralities
    a = se_beta_closed_form(u, v, X, 4.0, 1.0, 1.0, 0.1, 0.5)
    b = se_beta_closed_form(v, u, X, 1.0, 4.0, 1.0, 0.1, 0.5)
    assert a.se_bu == pytest.approx(b.se_bv)
    assert a.se_bv == pytest.approx(b.se_bu)


def test_beta_se_grows_with_network_noise(centralities):
    u, v, X = centralities
    quiet = se_beta_closed_form(u, v, X, 4.0, 1.0, 1.0, 0.1, 0.1)
    loud = se_beta_closed_form(u, v, X, 4.0, 1.0, 1.0, 0.1, 1.0)
    assert loud.se_bu > quiet.se_bu
    assert np.all(loud.se_bx >= quiet.se_bx)


def test_centrality_variance_trace(centralities):
    """Test that two-stage centrality variances sum to kappa (n - 1)."""
    u, v, _ = centralities
    n = u.shape[0]
    se_u, se_v = se_centrality_entries(u, v, 2.0, 0.5)
    kappa_n = 0.5 / (4.0 * n)
    assert np.sum(se_u**2) == pytest.approx(kappa_n * (n - 1))
    assert np.sum(se_v**2) == pytest.approx(kappa_n * (n - 1))


def test_centrality_point_mass():
    """Test a node holding all the mass has zero error."""
    n = 5
    u = np.zeros(n)
    u[0] = np.sqrt(n)
    v = np.full(n, 1.0)
    se_u, _ = se_centrality_entries(u, v, 1.0, 1.0)
    assert se_u[0] == pytest.approx(0.0, abs=1e-12)


def test_centrality_supercent_needs_inputs(centralities):
    u, v, _ = centralities
    with pytest.raises(InputError):
        se_centrality_entries(u, v, 1.0, 1.0, method="supercent")
    with pytest.raises(InputError):
        se_centrality_entries(u, v, 1.0, 1.0, method="bogus")


def test_adhoc_noiseless_width(noiseless):
    """Test that a noiseless fit gives degenerate ad hoc intervals."""
    _, data = noiseless
    rows = ci_beta(data, "ts-adhoc", ts_fit=fit_two_stage(data))
    assert [row.name for row in rows] == ["beta_x_0", "beta_x_1", "beta_x_2", "beta_u", "beta_v"]
    assert max(row.width for row in rows) < 1e-8


def test_interval_width_is_two_z_se(noisy):
    params, data = noisy
    ts = fit_two_stage(data)
    for variant in ("ts-adhoc", "ts", "ts-oracle"):
        for row in ci_beta(data, variant, alpha=0.1, ts_fit=ts, truth=params):
            assert row.width == pytest.approx(2 * z_quantile(0.1) * row.se)
            assert row.covers(row.estimate)


def test_oracle_variants_need_truth(noisy):
    _, data = noisy
    ts = fit_two_stage(data)
    with pytest.raises(InputError):
        ci_beta(data, "ts-oracle", ts_fit=ts)
    with pytest.raises(InputError):
        ci_beta(data, "sc-cv", ts_fit=ts)
    with pytest.raises(InputError):
        ci_network_entries(data, "ts-adhoc", ts_fit=ts)


def test_entry_intervals(noisy):
    """Test network and centrality intervals under each variant."""
    params, data = noisy
    ts = fit_two_stage(data)
    sc = fit_supercent(data, SolverSettings(**{"lambda": 4.0}))
    network = ci_network_entries(data, "sc-oracle", sc_fit=sc, truth=params)
    assert network.se.shape == (data.n, data.n)
    assert network.coverage(params.A0) > 0.5
    assert network.mean_width() == pytest.approx(np.mean(network.upper - network.lower))

    u_int, v_int = ci_centrality_entries(data, "ts-oracle", ts_fit=ts, truth=params)
    assert u_int.coverage(params.u) > 0.5
    assert v_int.se.shape == (data.n,)
    u_sc, _ = ci_centrality_entries(data, "sc-cv", sc_fit=sc)
    assert np.all(u_sc.se >= 0)


def test_inference_report(noisy):
    params, data = noisy
    ts = fit_two_stage(data)
    sc = fit_supercent(data, SolverSettings(**{"lambda": 4.0}))
    report = inference_report(data, ["ts-adhoc", "ts", "sc-cv"], ts_fit=ts, sc_fit=sc)
    assert report["n"] == data.n and report["alpha"] == 0.05
    assert set(report["variants"]) == {"ts-adhoc", "ts", "sc-cv"}
    assert "network_mean_se" not in report["variants"]["ts-adhoc"]
    assert report["variants"]["sc-cv"]["network_mean_se"] > 0
    assert len(report["variants"]["ts"]["coefficients"]) == data.p + 2
