"""Prediction for nodes that join an already-fitted network."""

from .augmented import AugmentedNetwork, estimate_new_centralities, predict_response

__all__ = ["AugmentedNetwork", "estimate_new_centralities", "predict_response"]
