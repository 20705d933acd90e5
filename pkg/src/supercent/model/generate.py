"""Synthetic data generation for the unified framework.

Every function takes an explicit ``numpy.random.Generator``. Streams are PCG64
generators seeded by ``SeedSequence(seed, spawn_key=keys)``, so a replication can be
regenerated from (seed, config index, replication index) alone.
"""

import logging

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.linalg import as_vector
from ..errors import DegenerateInputError, InputError
from .params import Dataset, SimulationConfig, UnifiedModelParams

logger = logging.getLogger(__name__)


def rng_stream(seed: int, *keys: int) -> np.random.Generator:
    """Independent PCG64 stream identified by a seed and a tuple of integer keys.

    Example:
        >>> a = rng_stream(7, 0, 3).normal()
        >>> b = rng_stream(7, 0, 3).normal()
        >>> a == b
        True
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=keys)))


def rescale_to_sqrt_n(z: ArrayLike) -> NDArray[np.float64]:
    """Return z * sqrt(n) / |z|.

    Raises:
        DegenerateInputError: If z is the zero vector
    """
    x = as_vector(z, "z")
    norm = np.linalg.norm(x)
    if norm == 0.0:
        raise DegenerateInputError("Cannot rescale the zero vector")
    return x * (np.sqrt(x.shape[0]) / norm)


def make_centrality_pair(
    n: int,
    v_mixing: float,
    rng: np.random.Generator,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Draw hub and authority centralities.

    u has i.i.d. N(0, 1) entries; v = v_mixing * u + N(0, 1) noise. Both are then
    rescaled to norm sqrt(n), so the population correlation is
    v_mixing / sqrt(1 + v_mixing^2).

    Raises:
        InputError: If n < 2
    """
    if n < 2:
        raise InputError(f"Need n >= 2 nodes, got {n}")
    u = rng.standard_normal(n)
    v = v_mixing * u + rng.standard_normal(n)
    return rescale_to_sqrt_n(u), rescale_to_sqrt_n(v)


def generate_dataset(params: UnifiedModelParams, rng: np.random.Generator) -> Dataset:
    """Draw (A, X, y) from the generative model.

    X is an intercept column followed by p - 1 i.i.d. N(0, 1) columns.

    Args:
        params: Ground truth
        rng: Generator stream

    Returns:
        Dataset
    """
    n, p = params.n, params.p
    X = np.column_stack([np.ones(n), rng.standard_normal((n, p - 1))])
    E = rng.standard_normal((n, n)) * params.sigma_a
    eps = rng.standard_normal(n) * params.sigma_y
    A = params.A0 + E
    y = X @ params.beta_x + params.u * params.beta_u + params.v * params.beta_v + eps
    return Dataset(A=A, X=X, y=y)


def draw_params(config: SimulationConfig, rng: np.random.Generator) -> UnifiedModelParams:
    """Draw centralities for a config and bundle them into ground-truth parameters."""
    u, v = make_centrality_pair(config.n, config.v_mixing, rng)
    return UnifiedModelParams(
        d=config.d,
        u=u,
        v=v,
        beta_x=np.asarray(config.beta_x, dtype=float),
        beta_u=config.beta_u,
        beta_v=config.beta_v,
        sigma_a=config.sigma_a,
        sigma_y=config.sigma_y,
    )


def simulate(
    config: SimulationConfig,
    rng: np.random.Generator | None = None,
) -> tuple[UnifiedModelParams, Dataset]:
    """Draw truth and data in one call; centralities are drawn before X.

    Args:
        config: Design
        rng: Stream; defaults to ``rng_stream(config.seed)``

    Returns:
        (params, dataset)
    """
    rng = rng if rng is not None else rng_stream(config.seed)
    params = draw_params(config, rng)
    data = generate_dataset(params, rng)
    logger.debug(f"Simulated n={config.n} p={config.p} sigma_a={config.sigma_a:g}")
    return params, data
