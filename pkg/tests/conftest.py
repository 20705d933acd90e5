"""Pytest configuration and fixtures."""

import numpy as np
import pytest

from supercent.model import SimulationConfig, rng_stream, simulate
from supercent.storage import DatasetStore


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Keep tests away from the user's config file and environment overrides."""
    monkeypatch.setenv("SUPERCENT_CONFIG", str(tmp_path / "no-config.yaml"))
    for name in ("SUPERCENT_LOG_LEVEL", "SUPERCENT_JOBS", "SUPERCENT_SEED"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def rng():
    """Fixture providing a seeded generator."""
    return np.random.default_rng(12345)


@pytest.fixture
def small_config():
    """Small design that fits in milliseconds."""
    return SimulationConfig(
        n=40,
        p=3,
        d=1.0,
        beta_x=(1.0, 3.0, 5.0),
        beta_u=4.0,
        beta_v=1.0,
        sigma_a=0.1,
        sigma_y=0.1,
        v_mixing=0.5,
        seed=7,
    )


@pytest.fixture
def noiseless(small_config):
    """(params, data) with sigma_a = sigma_y = 0."""
    return simulate(small_config.with_(sigma_a=0.0, sigma_y=0.0), rng_stream(7))


@pytest.fixture
def noisy(small_config):
    """(params, data) in the consistent regime."""
    return simulate(small_config, rng_stream(8))


@pytest.fixture
def dataset_dir(tmp_path, noisy):
    """Dataset directory written by DatasetStore, truth included."""
    params, data = noisy
    return DatasetStore(tmp_path / "data").save(data, params, seed=8)
