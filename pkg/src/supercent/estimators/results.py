"""Fitted-model container shared by the two-stage and SuperCENT estimators."""

from dataclasses import dataclass, field, replace
from typing import Literal, Optional

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field

Method = Literal["two-stage", "supercent"]


@dataclass(frozen=True)
class FitResult:
    """Estimated (d, u, v, beta) plus noise estimates and solver diagnostics.

    Centralities are on the sqrt(n) scale. For a symmetric network ``v_hat`` aliases
    ``u_hat`` and ``beta_v_hat`` is 0.
    """

    method: Method
    d_hat: float
    u_hat: NDArray[np.float64]
    v_hat: NDArray[np.float64]
    beta_x_hat: NDArray[np.float64]
    beta_u_hat: float
    beta_v_hat: float
    sigma_y_hat_sq: float
    sigma_a_hat_sq: float
    iterations: int = 0
    converged: bool = True
    lambda_: Optional[float] = None
    symmetric: bool = False
    trace: tuple[float, ...] = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return int(self.u_hat.shape[0])

    @property
    def p(self) -> int:
        return int(self.beta_x_hat.shape[0])

    @property
    def A_hat(self) -> NDArray[np.float64]:
        """Denoised network d_hat u_hat v_hat'."""
        return self.d_hat * np.outer(self.u_hat, self.v_hat)

    @property
    def beta(self) -> NDArray[np.float64]:
        """Stacked coefficients (beta_x, beta_u, beta_v)."""
        return np.concatenate([self.beta_x_hat, [self.beta_u_hat, self.beta_v_hat]])

    def fitted(self, X: NDArray[np.float64]) -> NDArray[np.float64]:
        """In-sample fitted response."""
        return X @ self.beta_x_hat + self.u_hat * self.beta_u_hat + self.v_hat * self.beta_v_hat

    def to_record(self) -> "FitResultRecord":
        return FitResultRecord(
            method=self.method,
            d_hat=self.d_hat,
            u_hat=self.u_hat.tolist(),
            v_hat=self.v_hat.tolist(),
            beta_x_hat=self.beta_x_hat.tolist(),
            beta_u_hat=self.beta_u_hat,
            beta_v_hat=self.beta_v_hat,
            sigma_y_hat_sq=self.sigma_y_hat_sq,
            sigma_a_hat_sq=self.sigma_a_hat_sq,
            iterations=self.iterations,
            converged=self.converged,
            lambda_=self.lambda_,
            symmetric=self.symmetric,
        )

    @classmethod
    def from_record(cls, record: "FitResultRecord") -> "FitResult":
        return cls(
            method=record.method,
            d_hat=record.d_hat,
            u_hat=np.asarray(record.u_hat, dtype=float),
            v_hat=np.asarray(record.v_hat, dtype=float),
            beta_x_hat=np.asarray(record.beta_x_hat, dtype=float),
            beta_u_hat=record.beta_u_hat,
            beta_v_hat=record.beta_v_hat,
            sigma_y_hat_sq=record.sigma_y_hat_sq,
            sigma_a_hat_sq=record.sigma_a_hat_sq,
            iterations=record.iterations,
            converged=record.converged,
            lambda_=record.lambda_,
            symmetric=record.symmetric,
        )


class FitResultRecord(BaseModel):
    """JSON schema of a FitResult."""

    model_config = ConfigDict(populate_by_name=True)

    method: Method
    d_hat: float
    u_hat: list[float]
    v_hat: list[float]
    beta_x_hat: list[float]
    beta_u_hat: float
    beta_v_hat: float
    sigma_y_hat_sq: float = Field(ge=0)
    sigma_a_hat_sq: float = Field(ge=0)
    iterations: int = Field(ge=0)
    converged: bool
    lambda_: Optional[float] = Field(None, alias="lambda")
    symmetric: bool = False


def align_signs(fit: FitResult) -> FitResult:
    """Canonical sign: the largest-magnitude entry of u_hat is positive.

    (u, beta_u) and (v, beta_v) flip together so d u v', u beta_u and v beta_v are
    unchanged; a negative d_hat is then absorbed into (v, beta_v). Symmetric fits
    keep v aliased to u and leave d_hat as is.
    """
    u, v = fit.u_hat, fit.v_hat
    bu, bv, d = fit.beta_u_hat, fit.beta_v_hat, fit.d_hat
    s = -1.0 if u[int(np.argmax(np.abs(u)))] < 0 else 1.0
    u, bu = s * u, s * bu
    if fit.symmetric:
        return replace(fit, u_hat=u, v_hat=u, beta_u_hat=bu)
    v, bv = s * v, s * bv
    if d < 0:
        d, v, bv = -d, -v, -bv
    return replace(fit, d_hat=d, u_hat=u, v_hat=v, beta_u_hat=bu, beta_v_hat=bv)


def orient_to_reference(
    fit: FitResult,
    u_ref: NDArray[np.float64],
    v_ref: NDArray[np.float64],
) -> FitResult:
    """Flip (u, beta_u) and (v, beta_v) so each has a nonnegative inner product with
    its reference. d_hat absorbs the combined sign, so the fitted model is unchanged."""
    su = -1.0 if float(fit.u_hat @ u_ref) < 0 else 1.0
    if fit.symmetric:
        u = su * fit.u_hat
        return replace(fit, u_hat=u, v_hat=u, beta_u_hat=su * fit.beta_u_hat)
    sv = -1.0 if float(fit.v_hat @ v_ref) < 0 else 1.0
    return replace(
        fit,
        d_hat=su * sv * fit.d_hat,
        u_hat=su * fit.u_hat,
        v_hat=sv * fit.v_hat,
        beta_u_hat=su * fit.beta_u_hat,
        beta_v_hat=sv * fit.beta_v_hat,
    )
