"""Tests for model types and data generation."""

import numpy as np
import pytest

from supercent.core.linalg import ols_fit
from supercent.errors import DegenerateInputError, InputError, SingularDesignError
from supercent.model import (
    Dataset,
    SimulationConfig,
    UnifiedModelParams,
    generate_dataset,
    make_centrality_pair,
    panel_base,
    rescale_to_sqrt_n,
    rng_stream,
    simulate,
    toy_config,
)


def test_rescale_examples():
    """Test rescaling to norm sqrt(n)."""
    np.testing.assert_allclose(rescale_to_sqrt_n([1.0, 1.0, 1.0, 1.0]), [1.0, 1.0, 1.0, 1.0])
    np.testing.assert_allclose(rescale_to_sqrt_n([2.0, 0.0]), [np.sqrt(2.0), 0.0])
    z = rescale_to_sqrt_n(np.arange(1.0, 10.0))
    assert np.linalg.norm(z) == pytest.approx(3.0, abs=1e-12)


def test_rescale_zero_vector():
    with pytest.raises(DegenerateInputError):
        rescale_to_sqrt_n(np.zeros(3))


def test_centrality_pair_norms_and_correlation():
    """Test the sqrt(n) scale and the mixing correlation."""
    u, v = make_centrality_pair(4096, 0.5, rng_stream(3))
    assert np.linalg.norm(u) == pytest.approx(64.0, abs=1e-10)
    assert np.linalg.norm(v) == pytest.approx(64.0, abs=1e-10)
    assert np.corrcoef(u, v)[0, 1] == pytest.approx(0.5 / np.sqrt(1.25), abs=0.05)

    u, v = make_centrality_pair(4096, 0.0, rng_stream(4))
    assert abs(np.corrcoef(u, v)[0, 1]) < 0.1


def test_centrality_pair_needs_two_nodes():
    with pytest.raises(InputError):
        make_centrality_pair(1, 0.5, rng_stream(0))


def test_noiseless_generation(noiseless):
    """Test that zero noise reproduces the mean model exactly."""
    params, data = noiseless
    np.testing.assert_array_equal(data.A, params.A0)
    mean = data.X @ params.beta_x + params.u * params.beta_u + params.v * params.beta_v
    np.testing.assert_allclose(data.y, mean, atol=1e-12)
    np.testing.assert_array_equal(data.X[:, 0], np.ones(data.n))
    W = np.column_stack([data.X, params.u, params.v])
    resid = data.y - W @ ols_fit(W, data.y)
    assert np.max(np.abs(resid)) < 1e-10


def test_network_noise_moments():
    """Test the sample moments of A - d u v' for sigma_a = 1."""
    config = toy_config(sigma_a=1.0)
    params, data = simulate(config, rng_stream(11))
    noise = data.A - params.A0
    assert abs(noise.mean()) < 3.0 / config.n
    assert noise.var() == pytest.approx(1.0, rel=0.05)


def test_generation_is_deterministic(small_config):
    """Test that the same stream gives bit-identical data."""
    _, first = simulate(small_config, rng_stream(5, 0, 1))
    _, second = simulate(small_config, rng_stream(5, 0, 1))
    np.testing.assert_array_equal(first.A, second.A)
    np.testing.assert_array_equal(first.y, second.y)
    _, other = simulate(small_config, rng_stream(5, 0, 2))
    assert not np.array_equal(first.y, other.y)


def test_toy_config_values():
    """Test the toy design constants."""
    config = toy_config()
    assert config.n == 256 and config.p == 3 and config.d == 1.0
    assert config.beta_x == (1.0, 3.0, 5.0)
    assert (config.beta_u, config.beta_v) == (16.0, 1.0)
    assert config.sigma_y**2 == pytest.approx(2.0**-4)
    assert config.v_mixing == 0.5


def test_panel_base_values():
    config = panel_base()
    assert (config.n, config.d, config.beta_v) == (256, 1.0, 1.0)


def test_simulation_config_validation():
    """Test dimension and noise validation."""
    with pytest.raises(ValueError):
        SimulationConfig(p=2, beta_x=(1.0, 2.0, 3.0))
    with pytest.raises(ValueError):
        SimulationConfig(n=5, p=3)
    with pytest.raises(ValueError):
        SimulationConfig(sigma_a=-1.0)


def test_params_require_sqrt_n_scale():
    """Test the identifiability scale of the true centralities."""
    u = np.ones(6)
    with pytest.raises(InputError):
        UnifiedModelParams(
            d=1.0,
            u=2 * u,
            v=u,
            beta_x=[1.0],
            beta_u=1.0,
            beta_v=1.0,
            sigma_a=0.0,
            sigma_y=0.0,
        )


def test_params_dict_round_trip(noisy):
    params, _ = noisy
    again = UnifiedModelParams.from_dict(params.to_dict())
    np.testing.assert_array_equal(again.u, params.u)
    assert again.kappa == params.kappa


def test_dataset_rejects_collinear_covariates():
    """Test that X'X must be invertible."""
    X = np.column_stack([np.ones(6), np.ones(6)])
    with pytest.raises(SingularDesignError):
        Dataset(A=np.eye(6), X=X, y=np.zeros(6))


def test_dataset_dimension_mismatch():
    with pytest.raises(InputError):
        Dataset(A=np.eye(5), X=np.ones((6, 1)), y=np.zeros(6))


def test_dataset_subset(noisy):
    """Test the induced subnetwork."""
    _, data = noisy
    sub = data.subset([0, 3, 5, 7, 9, 11])
    assert sub.n == 6
    assert sub.A[1, 2] == data.A[3, 5]


def test_generate_dataset_shapes(noisy):
    params, _ = noisy
    data = generate_dataset(params, rng_stream(1))
    assert data.A.shape == (params.n, params.n)
    assert data.X.shape == (params.n, params.p)
