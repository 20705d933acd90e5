"""Domain types of the unified network-regression framework.

The network follows A = d u v' + E and the response y = X beta_x + u beta_u + v beta_v
+ eps, with centralities scaled to |u| = |v| = sqrt(n).
"""

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.linalg import SINGULAR_RCOND, as_matrix, as_vector, reciprocal_condition
from ..errors import InputError, SingularDesignError

NORM_TOL = 1e-8


def _check_sqrt_n(z: NDArray[np.float64], name: str) -> None:
    n = z.shape[0]
    if abs(np.linalg.norm(z) - np.sqrt(n)) > NORM_TOL * max(1.0, np.sqrt(n)):
        raise InputError(
            f"|{name}| must equal sqrt(n)={np.sqrt(n):.6g}, got {np.linalg.norm(z):.6g}"
        )


@dataclass(frozen=True)
class UnifiedModelParams:
    """Ground-truth generative parameters.

    Attributes:
        d: Network signal strength (> 0)
        u: Hub centrality, |u| = sqrt(n)
        v: Authority centrality, |v| = sqrt(n)
        beta_x: Covariate coefficients (length p)
        beta_u: Hub coefficient
        beta_v: Authority coefficient
        sigma_a: Network noise standard deviation
        sigma_y: Regression noise standard deviation
    """

    d: float
    u: NDArray[np.float64]
    v: NDArray[np.float64]
    beta_x: NDArray[np.float64]
    beta_u: float
    beta_v: float
    sigma_a: float
    sigma_y: float

    def __post_init__(self) -> None:
        u = as_vector(self.u, "u")
        v = as_vector(self.v, "v")
        beta_x = as_vector(self.beta_x, "beta_x")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "beta_x", beta_x)
        if u.shape != v.shape:
            raise InputError(f"u and v must have equal length, got {u.shape[0]} and {v.shape[0]}")
        if self.d <= 0:
            raise InputError(f"d must be positive, got {self.d}")
        if self.sigma_a < 0 or self.sigma_y < 0:
            raise InputError("Noise standard deviations must be nonnegative")
        if self.n <= self.p + 2:
            raise InputError(f"Need n > p + 2, got n={self.n}, p={self.p}")
        _check_sqrt_n(u, "u")
        _check_sqrt_n(v, "v")

    @property
    def n(self) -> int:
        return int(self.u.shape[0])

    @property
    def p(self) -> int:
        return int(self.beta_x.shape[0])

    @property
    def A0(self) -> NDArray[np.float64]:
        """Noiseless network d u v'."""
        return self.d * np.outer(self.u, self.v)

    @property
    def kappa(self) -> float:
        """Scaled network noise-to-signal ratio sigma_a^2 / (d^2 n)."""
        return self.sigma_a**2 / (self.d**2 * self.n)

    @property
    def rho(self) -> float:
        """Sample correlation between u and v."""
        return float(np.corrcoef(self.u, self.v)[0, 1])

    def with_noise(self, sigma_a: Optional[float] = None, sigma_y: Optional[float] = None):
        """Copy with different noise levels."""
        return replace(
            self,
            sigma_a=self.sigma_a if sigma_a is None else sigma_a,
            sigma_y=self.sigma_y if sigma_y is None else sigma_y,
        )

    def to_dict(self) -> dict:
        """JSON-friendly representation."""
        return {
            "d": self.d,
            "u": self.u.tolist(),
            "v": self.v.tolist(),
            "beta_x": self.beta_x.tolist(),
            "beta_u": self.beta_u,
            "beta_v": self.beta_v,
            "sigma_a": self.sigma_a,
            "sigma_y": self.sigma_y,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "UnifiedModelParams":
        return cls(
            d=float(data["d"]),
            u=np.asarray(data["u"], dtype=float),
            v=np.asarray(data["v"], dtype=float),
            beta_x=np.asarray(data["beta_x"], dtype=float),
            beta_u=float(data["beta_u"]),
            beta_v=float(data["beta_v"]),
            sigma_a=float(data["sigma_a"]),
            sigma_y=float(data["sigma_y"]),
        )


@dataclass(frozen=True)
class Dataset:
    """Observed triple (A, X, y).

    Construction validates dimensions and rejects collinear covariates.

    Example:
        >>> data = Dataset(A=np.eye(5), X=np.ones((5, 1)), y=np.arange(5.0))
        >>> data.n, data.p
        (5, 1)
    """

    A: NDArray[np.float64]
    X: NDArray[np.float64]
    y: NDArray[np.float64]
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        A = as_matrix(self.A, "A")
        X = as_matrix(self.X, "X")
        y = as_vector(self.y, "y")
        n = y.shape[0]
        if A.shape != (n, n):
            raise InputError(f"A must be {n}x{n} to match y, got {A.shape[0]}x{A.shape[1]}")
        if X.shape[0] != n:
            raise InputError(f"X has {X.shape[0]} rows but y has length {n}")
        if X.shape[1] >= n:
            raise InputError(f"X has {X.shape[1]} columns; need fewer than n={n}")
        if reciprocal_condition(X) < SINGULAR_RCOND:
            raise SingularDesignError("X'X is not invertible (collinear covariates)")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return int(self.y.shape[0])

    @property
    def p(self) -> int:
        return int(self.X.shape[1])

    @property
    def is_symmetric(self) -> bool:
        return bool(np.max(np.abs(self.A - self.A.T)) <= 1e-10)

    def subset(self, index: ArrayLike) -> "Dataset":
        """Rows of X and y with the induced subnetwork of A on the same nodes."""
        idx = np.asarray(index, dtype=int)
        return Dataset(A=self.A[np.ix_(idx, idx)], X=self.X[idx], y=self.y[idx])


class SimulationConfig(BaseModel):
    """Scalar description of a synthetic design; centralities are drawn from it.

    Attributes:
        n: Nodes
        p: Covariates including the intercept column
        d: Network signal strength
        beta_x: Covariate coefficients (length p)
        beta_u: Hub coefficient
        beta_v: Authority coefficient
        sigma_a: Network noise sd
        sigma_y: Regression noise sd
        v_mixing: Coefficient linking v to u before rescaling
        seed: Seed of the generator stream
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(256, ge=2)
    p: int = Field(3, ge=1)
    d: float = Field(1.0, gt=0)
    beta_x: tuple[float, ...] = (1.0, 3.0, 5.0)
    beta_u: float = 16.0
    beta_v: float = 1.0
    sigma_a: float = Field(2.0, ge=0)
    sigma_y: float = Field(0.25, ge=0)
    v_mixing: float = 0.5
    seed: int = Field(0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _consistent_dims(self) -> "SimulationConfig":
        if len(self.beta_x) != self.p:
            raise ValueError(f"beta_x has length {len(self.beta_x)} but p={self.p}")
        if self.n <= self.p + 2:
            raise ValueError(f"Need n > p + 2, got n={self.n}, p={self.p}")
        return self

    def with_(self, **updates) -> "SimulationConfig":
        """Validated copy with some fields replaced."""
        return SimulationConfig.model_validate({**self.model_dump(), **updates})

    @property
    def kappa(self) -> float:
        return self.sigma_a**2 / (self.d**2 * self.n)
