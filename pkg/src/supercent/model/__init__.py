"""Unified-framework types, synthetic data generation and named designs."""

from .generate import (
    draw_params,
    generate_dataset,
    make_centrality_pair,
    rescale_to_sqrt_n,
    rng_stream,
    simulate,
)
from .params import Dataset, SimulationConfig, UnifiedModelParams
from .presets import panel_base, toy_config

__all__ = [
    "Dataset",
    "SimulationConfig",
    "UnifiedModelParams",
    "draw_params",
    "generate_dataset",
    "make_centrality_pair",
    "panel_base",
    "rescale_to_sqrt_n",
    "rng_stream",
    "simulate",
    "toy_config",
]
