"""Out-of-sample centralities and responses for nodes added to a trained network."""

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.linalg import SingularTriple, as_matrix, as_vector, top_singular_triple
from ..errors import InputError, SignAmbiguityError
from ..utils.config import SvdSettings

if TYPE_CHECKING:
    from ..estimators.results import FitResult

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AugmentedNetwork:
    """Network over training nodes followed by new nodes.

    The first ``n_train`` rows and columns are the training nodes, in training order.
    """

    A_all: NDArray[np.float64]
    n_train: int

    def __post_init__(self) -> None:
        A = as_matrix(self.A_all, "A_all")
        if A.shape[0] != A.shape[1]:
            raise InputError(f"A_all must be square, got {A.shape[0]}x{A.shape[1]}")
        if not 2 <= self.n_train < A.shape[0]:
            raise InputError(
                f"n_train must lie in [2, {A.shape[0] - 1}], got {self.n_train}"
            )
        object.__setattr__(self, "A_all", A)

    @property
    def n_new(self) -> int:
        return int(self.A_all.shape[0] - self.n_train)


def _orient_and_slice(
    z_all: NDArray[np.float64],
    z_ref: NDArray[np.float64],
    n_train: int,
    name: str,
) -> NDArray[np.float64]:
    head = z_all[:n_train]
    inner = float(z_ref @ head)
    if inner == 0.0:
        raise SignAmbiguityError(f"{name} of the augmented network is orthogonal to the reference")
    if inner < 0:
        z_all = -z_all
        head = -head
    norm = np.linalg.norm(head)
    if norm == 0.0:
        raise SignAmbiguityError(f"{name} vanishes on the training nodes")
    return z_all[n_train:] * (np.sqrt(n_train) / norm)


def estimate_new_centralities(
    network: AugmentedNetwork,
    u_ref: ArrayLike,
    v_ref: ArrayLike,
    svd: Optional[SvdSettings] = None,
    triple: Optional[SingularTriple] = None,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Centralities of the new nodes from the SVD of the whole augmented network.

    The leading singular vectors of A_all are sign-matched to the training
    centralities, sliced to the new nodes and rescaled so the training slice has norm
    sqrt(n_train), putting the new entries on the trained scale.

    Args:
        network: Augmented adjacency matrix
        u_ref: Trained hub centralities (length n_train)
        v_ref: Trained authority centralities (length n_train)
        svd: SVD settings
        triple: Precomputed leading triple of ``network.A_all``

    Returns:
        (u_star, v_star) of length n_new

    Raises:
        SignAmbiguityError: If a reference is orthogonal to the training slice
    """
    u0 = as_vector(u_ref, "u_ref")
    v0 = as_vector(v_ref, "v_ref")
    n = network.n_train
    if u0.shape[0] != n or v0.shape[0] != n:
        raise InputError(f"Reference centralities must have length n_train={n}")
    if triple is None:
        svd = svd or SvdSettings()
        triple = top_singular_triple(
            network.A_all, method=svd.method, tol=svd.tol, max_iter=svd.max_iter
        )
    u_star = _orient_and_slice(triple.u, u0, n, "Left singular vector")
    v_star = _orient_and_slice(triple.v, v0, n, "Right singular vector")
    return u_star, v_star


def predict_response(
    X_star: ArrayLike,
    u_star: ArrayLike,
    v_star: ArrayLike,
    fit: "FitResult",
) -> NDArray[np.float64]:
    """y_hat = X* beta_x + u* beta_u + v* beta_v.

    Example:
        >>> u_star, v_star = estimate_new_centralities(network, fit.u_hat, fit.v_hat)
        >>> y_hat = predict_response(X_star, u_star, v_star, fit)
    """
    X = as_matrix(X_star, "X_star")
    u = as_vector(u_star, "u_star")
    v = as_vector(v_star, "v_star")
    if X.shape[1] != fit.p:
        raise InputError(f"X_star has {X.shape[1]} columns but the fit has p={fit.p}")
    if not X.shape[0] == u.shape[0] == v.shape[0]:
        raise InputError("X_star, u_star and v_star must have the same number of rows")
    return X @ fit.beta_x_hat + u * fit.beta_u_hat + v * fit.beta_v_hat
