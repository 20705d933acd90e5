"""Closed-form large-sample behaviour of the two estimators.

Oracle rates are expressed relative to the scale of the target: centrality errors as
E|u_hat - u|^2 / n and network errors as E|A_hat - A0|_F^2 / |A0|_F^2.
"""

from dataclasses import dataclass
from typing import Optional, Protocol

import numpy as np
from numpy.typing import NDArray

from ..errors import DegenerateInputError, InputError


class ModelScalars(Protocol):
    """Anything exposing the scalar design parameters (truth or config)."""

    n: int
    p: int
    d: float
    beta_u: float
    beta_v: float
    sigma_a: float
    sigma_y: float


@dataclass(frozen=True)
class RateOracle:
    """Theoretical mean squared errors; coefficient variances need the covariates."""

    mse_u: float
    mse_v: float
    mse_A_rel: float
    var_bu: Optional[float] = None
    var_bv: Optional[float] = None


def noise_to_signal(params: ModelScalars) -> float:
    """kappa = sigma_a^2 / (d^2 n)."""
    return params.sigma_a**2 / (params.d**2 * params.n)


def plim_bias(beta_u: float, beta_v: float, rho: float, kappa: float) -> tuple[float, float]:
    """Probability limits of the two-stage (beta_u, beta_v) for fixed kappa.

    Args:
        beta_u: True hub coefficient
        beta_v: True authority coefficient
        rho: Correlation between u and v
        kappa: Noise-to-signal ratio sigma_a^2 / (d^2 n)

    Returns:
        (plim beta_u_hat, plim beta_v_hat)

    Example:
        >>> plim_bias(2.0, 1.0, 0.3, 0.0)
        (2.0, 1.0)
    """
    if kappa < 0:
        raise InputError(f"kappa must be nonnegative, got {kappa}")
    if abs(rho) > 1:
        raise InputError(f"rho must lie in [-1, 1], got {rho}")
    denom = (1.0 + kappa) ** 2 - rho**2
    if denom == 0.0:
        raise DegenerateInputError("plim undefined: (1 + kappa)^2 equals rho^2")
    bu = ((1.0 + kappa - rho**2) * beta_u + kappa * rho * beta_v) / denom
    bv = ((1.0 + kappa - rho**2) * beta_v + kappa * rho * beta_u) / denom
    return bu, bv


def attenuation_factor(kappa: float) -> float:
    """Reliability ratio 1 / (1 + kappa): the shrinkage of a single-centrality OLS slope
    fitted on the estimated centrality."""
    bu, _ = plim_bias(1.0, 0.0, 0.0, kappa)
    return bu


def two_stage_sigma_y_plim(params: ModelScalars) -> float:
    """Limit of the two-stage residual variance when beta_v = 0: the regression noise
    inflated by the variance left unexplained by the attenuated centrality."""
    kappa = noise_to_signal(params)
    return params.sigma_y**2 + params.beta_u**2 * kappa / (1.0 + kappa)


def delta_value(
    n: int,
    d: float,
    beta_u: float,
    beta_v: float,
    sigma_a_sq: float,
    sigma_y_sq: float,
    lam: float,
) -> float:
    """Variance reduction of SuperCENT over two-stage per unit of squared coefficient."""
    if lam <= 0:
        raise InputError(f"lambda must be positive, got {lam}")
    b2 = beta_u**2 + beta_v**2
    scale = lam * d**2 + b2
    if scale == 0.0:
        raise InputError("delta undefined: beta_u = beta_v = 0 and lambda d^2 = 0")
    return ((2.0 * lam * d**2 + b2) * sigma_a_sq / (d**2 * n) - sigma_y_sq) / scale**2


def delta_ts_sc(params: ModelScalars, lam: float) -> float:
    """delta for a design at tuning parameter lam.

    Positive whenever lam exceeds half the oracle value in the typical regime, and
    maximal at the oracle value.
    """
    return delta_value(
        params.n,
        params.d,
        params.beta_u,
        params.beta_v,
        params.sigma_a**2,
        params.sigma_y**2,
        lam,
    )


def _beta_variances(params, X: NDArray[np.float64]) -> tuple[float, float]:
    from ..inference.closed_form import se_beta_closed_form

    se = se_beta_closed_form(
        u=params.u,
        v=params.v,
        X=X,
        beta_u=params.beta_u,
        beta_v=params.beta_v,
        d=params.d,
        sigma_y_sq=params.sigma_y**2,
        sigma_a_sq=params.sigma_a**2,
    )
    return se.se_bu**2, se.se_bv**2


def two_stage_rate_oracle(
    params: ModelScalars,
    X: Optional[NDArray[np.float64]] = None,
) -> RateOracle:
    """Two-stage MSEs; coefficient variances are filled in when X is supplied.

    Args:
        params: Design; must carry u and v when X is given
        X: Covariates

    Returns:
        RateOracle
    """
    n, d, sa2 = params.n, params.d, params.sigma_a**2
    mse_uv = sa2 * (n - 1) / (d**2 * n**2)
    mse_A_rel = sa2 * (2 * n - 1) / (d**2 * n**2)
    var_bu = var_bv = None
    if X is not None:
        var_bu, var_bv = _beta_variances(params, X)
    return RateOracle(
        mse_u=mse_uv, mse_v=mse_uv, mse_A_rel=mse_A_rel, var_bu=var_bu, var_bv=var_bv
    )


def supercent_rate_oracle(
    params: ModelScalars,
    lam: float,
    X: Optional[NDArray[np.float64]] = None,
) -> RateOracle:
    """SuperCENT MSEs at tuning parameter lam: the two-stage rates less a
    delta-weighted improvement."""
    ts = two_stage_rate_oracle(params)
    delta = delta_ts_sc(params, lam)
    shrink = (params.n - params.p - 2) / params.n * delta
    var_bu = var_bv = None
    if X is not None:
        var_bu, var_bv = _beta_variances(params, X)
    return RateOracle(
        mse_u=ts.mse_u - shrink * params.beta_u**2,
        mse_v=ts.mse_v - shrink * params.beta_v**2,
        mse_A_rel=ts.mse_A_rel - shrink * (params.beta_u**2 + params.beta_v**2),
        var_bu=var_bu,
        var_bv=var_bv,
    )


def supercent_rate_at_oracle(params: ModelScalars) -> RateOracle:
    """Leading-order SuperCENT MSEs at the oracle tuning parameter.

    mse_u = kappa (sigma_y^2 + kappa beta_v^2) / (sigma_y^2 + kappa (beta_u^2 + beta_v^2)),
    symmetrically for v, and mse_A_rel = kappa (2 sigma_y^2 + kappa B) / (sigma_y^2 + kappa B)
    with B = beta_u^2 + beta_v^2.
    A noiseless response (sigma_y = 0) with beta = 0 reduces to the two-stage kappa.
    """
    kappa = noise_to_signal(params)
    sy2 = params.sigma_y**2
    bu2, bv2 = params.beta_u**2, params.beta_v**2
    denom = sy2 + kappa * (bu2 + bv2)
    if denom == 0.0:
        return RateOracle(mse_u=kappa, mse_v=kappa, mse_A_rel=2.0 * kappa)
    return RateOracle(
        mse_u=kappa * (sy2 + kappa * bv2) / denom,
        mse_v=kappa * (sy2 + kappa * bu2) / denom,
        mse_A_rel=2.0 * kappa * sy2 / denom + kappa * kappa * (bu2 + bv2) / denom,
    )
