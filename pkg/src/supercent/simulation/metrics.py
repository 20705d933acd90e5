"""Loss functions used to score estimates against the truth."""

import numpy as np
from numpy.typing import ArrayLike

from ..core.linalg import as_matrix, projection_distance
from ..errors import DegenerateInputError, InputError


def loss_subspace(z_hat: ArrayLike, z: ArrayLike) -> float:
    """Squared spectral distance between rank-one projectors, sin^2 of the angle.

    Example:
        >>> loss_subspace([1.0, 0.0], [0.0, 2.0])
        1.0
    """
    return projection_distance(z_hat, z) ** 2


def loss_network(A_hat: ArrayLike, A0: ArrayLike) -> float:
    """Relative squared Frobenius loss |A_hat - A0|_F^2 / |A0|_F^2."""
    Ah = as_matrix(A_hat, "A_hat")
    A = as_matrix(A0, "A0")
    if Ah.shape != A.shape:
        raise InputError(f"Shapes differ: {Ah.shape} vs {A.shape}")
    scale = float(np.sum(A * A))
    if scale == 0.0:
        raise DegenerateInputError("Relative network loss undefined for an all-zero A0")
    return float(np.sum((Ah - A) ** 2)) / scale


def loss_coef(b_hat: float, b: float) -> float:
    """Normalized squared error (b_hat - b)^2 / b^2.

    Raises:
        DegenerateInputError: If b = 0
    """
    if b == 0:
        raise DegenerateInputError("Normalized coefficient loss undefined for b = 0")
    return (b_hat - b) ** 2 / b**2


def coef_loss_or_raw(b_hat: float, b: float) -> tuple[float, bool]:
    """loss_coef, or the raw squared error flagged True when b = 0."""
    if b == 0:
        return (b_hat - b) ** 2, True
    return loss_coef(b_hat, b), False


def loss_prediction(y_hat: ArrayLike, y_mean: ArrayLike) -> float:
    """In-sample prediction loss |y_hat - E y|^2 / n."""
    a = np.asarray(y_hat, dtype=float)
    b = np.asarray(y_mean, dtype=float)
    if a.shape != b.shape:
        raise InputError(f"Shapes differ: {a.shape} vs {b.shape}")
    return float(np.mean((a - b) ** 2))
