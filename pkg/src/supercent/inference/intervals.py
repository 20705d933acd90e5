"""Confidence intervals for coefficients, centralities and network entries.

Five interval variants are supported:

- ``ts-adhoc``: two-stage fit, OLS standard errors that treat (u_hat, v_hat) as fixed.
- ``ts-oracle``: two-stage fit, closed-form standard errors at the true parameters.
- ``ts``: two-stage fit, closed-form standard errors at the two-stage estimates.
- ``sc-oracle``: SuperCENT fit, closed-form standard errors at the true parameters.
- ``sc-cv``: SuperCENT fit, closed-form standard errors at the SuperCENT estimates.
"""

from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, Field
from scipy.stats import norm

from ..errors import InputError
from ..estimators.results import FitResult, orient_to_reference
from ..model.params import Dataset, UnifiedModelParams
from .closed_form import (
    se_beta_closed_form,
    se_centrality_entries,
    se_network_entries_supercent,
    se_network_entries_two_stage,
)

Variant = Literal["ts-adhoc", "ts-oracle", "ts", "sc-oracle", "sc-cv"]
VARIANTS: tuple[Variant, ...] = ("ts-adhoc", "ts-oracle", "ts", "sc-oracle", "sc-cv")


class CoefficientInference(BaseModel):
    """Point estimate, standard error and interval for one coefficient."""

    name: str
    estimate: float
    se: float = Field(ge=0)
    ci_lo: float
    ci_hi: float
    alpha: float = Field(gt=0, lt=1)
    variant: Variant

    @property
    def width(self) -> float:
        return self.ci_hi - self.ci_lo

    def covers(self, value: float) -> bool:
        return self.ci_lo <= value <= self.ci_hi


@dataclass(frozen=True)
class EntryIntervals:
    """Elementwise intervals estimate +- z se."""

    estimate: NDArray[np.float64]
    se: NDArray[np.float64]
    z: float

    @property
    def lower(self) -> NDArray[np.float64]:
        return self.estimate - self.z * self.se

    @property
    def upper(self) -> NDArray[np.float64]:
        return self.estimate + self.z * self.se

    def coverage(self, truth: NDArray[np.float64]) -> float:
        """Share of entries whose interval contains the truth."""
        return float(np.mean((self.lower <= truth) & (truth <= self.upper)))

    def mean_width(self) -> float:
        return float(np.mean(2.0 * self.z * self.se))


def z_quantile(alpha: float) -> float:
    """Two-sided normal critical value z_{1 - alpha/2}.

    Example:
        >>> round(z_quantile(0.05), 6)
        1.959964
    """
    if not 0 < alpha < 1:
        raise InputError(f"alpha must lie in (0, 1), got {alpha}")
    return float(norm.ppf(1.0 - alpha / 2.0))


def _fit_for_variant(
    variant: Variant,
    ts_fit: Optional[FitResult],
    sc_fit: Optional[FitResult],
    truth: Optional[UnifiedModelParams],
) -> FitResult:
    if variant not in VARIANTS:
        raise InputError(f"Unknown interval variant {variant!r}")
    fit = ts_fit if variant.startswith("ts") else sc_fit
    if fit is None:
        kind = "two-stage" if variant.startswith("ts") else "SuperCENT"
        raise InputError(f"Variant {variant} needs a {kind} fit")
    if fit.symmetric:
        raise InputError("Intervals are defined for directed fits only")
    if variant.endswith("oracle"):
        if truth is None:
            raise InputError(f"Variant {variant} needs the true parameters")
        fit = orient_to_reference(fit, truth.u, truth.v)
    return fit


def _coefficient_names(p: int) -> list[str]:
    return [f"beta_x_{k}" for k in range(p)] + ["beta_u", "beta_v"]


def ci_beta(
    data: Dataset,
    variant: Variant,
    alpha: float = 0.05,
    ts_fit: Optional[FitResult] = None,
    sc_fit: Optional[FitResult] = None,
    truth: Optional[UnifiedModelParams] = None,
) -> list[CoefficientInference]:
    """Intervals for (beta_x, beta_u, beta_v) under one variant.

    Args:
        data: Observed data the fits came from
        variant: One of ``VARIANTS``
        alpha: 1 - confidence level
        ts_fit: Two-stage fit (ts-* variants)
        sc_fit: SuperCENT fit (sc-* variants)
        truth: True parameters (oracle variants); the fit is oriented to it

    Returns:
        One CoefficientInference per coefficient, beta_x first

    Raises:
        InputError: If the inputs the variant needs are missing
    """
    fit = _fit_for_variant(variant, ts_fit, sc_fit, truth)
    z = z_quantile(alpha)
    p = data.p

    if variant == "ts-adhoc":
        W = np.column_stack([data.X, fit.u_hat, fit.v_hat])
        cov = fit.sigma_y_hat_sq * np.linalg.inv(W.T @ W)
        se = np.sqrt(np.clip(np.diag(cov), 0.0, None))
    else:
        if variant.endswith("oracle"):
            source = dict(
                u=truth.u,
                v=truth.v,
                beta_u=truth.beta_u,
                beta_v=truth.beta_v,
                d=truth.d,
                sigma_y_sq=truth.sigma_y**2,
                sigma_a_sq=truth.sigma_a**2,
            )
        else:
            source = dict(
                u=fit.u_hat,
                v=fit.v_hat,
                beta_u=fit.beta_u_hat,
                beta_v=fit.beta_v_hat,
                d=fit.d_hat,
                sigma_y_sq=fit.sigma_y_hat_sq,
                sigma_a_sq=fit.sigma_a_hat_sq,
            )
        errors = se_beta_closed_form(X=data.X, **source)
        se = np.concatenate([errors.se_bx, [errors.se_bu, errors.se_bv]])

    return [
        CoefficientInference(
            name=name,
            estimate=float(est),
            se=float(s),
            ci_lo=float(est - z * s),
            ci_hi=float(est + z * s),
            alpha=alpha,
            variant=variant,
        )
        for name, est, s in zip(_coefficient_names(p), fit.beta, se)
    ]


def _plug_in(variant: Variant, fit: FitResult, truth: Optional[UnifiedModelParams]) -> dict:
    if variant.endswith("oracle"):
        return dict(
            u=truth.u,
            v=truth.v,
            d=truth.d,
            beta_u=truth.beta_u,
            beta_v=truth.beta_v,
            sigma_y_sq=truth.sigma_y**2,
            sigma_a_sq=truth.sigma_a**2,
        )
    return dict(
        u=fit.u_hat,
        v=fit.v_hat,
        d=fit.d_hat,
        beta_u=fit.beta_u_hat,
        beta_v=fit.beta_v_hat,
        sigma_y_sq=fit.sigma_y_hat_sq,
        sigma_a_sq=fit.sigma_a_hat_sq,
    )


def _sc_lambda(fit: FitResult) -> float:
    if fit.lambda_ is None:
        raise InputError("SuperCENT fit carries no lambda")
    return fit.lambda_


def ci_network_entries(
    data: Dataset,
    variant: Variant,
    alpha: float = 0.05,
    ts_fit: Optional[FitResult] = None,
    sc_fit: Optional[FitResult] = None,
    truth: Optional[UnifiedModelParams] = None,
) -> EntryIntervals:
    """Elementwise intervals for the denoised network A0 = d u v'.

    ``ts-adhoc`` has no network counterpart and is rejected.
    """
    if variant == "ts-adhoc":
        raise InputError("ts-adhoc intervals exist for coefficients only")
    fit = _fit_for_variant(variant, ts_fit, sc_fit, truth)
    src = _plug_in(variant, fit, truth)
    if variant.startswith("ts"):
        se = se_network_entries_two_stage(src["u"], src["v"], src["sigma_a_sq"])
    else:
        se = se_network_entries_supercent(X=data.X, lam=_sc_lambda(fit), **src)
    return EntryIntervals(estimate=fit.A_hat, se=se, z=z_quantile(alpha))


def ci_centrality_entries(
    data: Dataset,
    variant: Variant,
    alpha: float = 0.05,
    ts_fit: Optional[FitResult] = None,
    sc_fit: Optional[FitResult] = None,
    truth: Optional[UnifiedModelParams] = None,
) -> tuple[EntryIntervals, EntryIntervals]:
    """Elementwise intervals for u and v."""
    if variant == "ts-adhoc":
        raise InputError("ts-adhoc intervals exist for coefficients only")
    fit = _fit_for_variant(variant, ts_fit, sc_fit, truth)
    src = _plug_in(variant, fit, truth)
    if variant.startswith("ts"):
        se_u, se_v = se_centrality_entries(src["u"], src["v"], src["d"], src["sigma_a_sq"])
    else:
        se_u, se_v = se_centrality_entries(
            src["u"],
            src["v"],
            src["d"],
            src["sigma_a_sq"],
            method="supercent",
            X=data.X,
            beta_u=src["beta_u"],
            beta_v=src["beta_v"],
            lam=_sc_lambda(fit),
            sigma_y_sq=src["sigma_y_sq"],
        )
    z = z_quantile(alpha)
    return EntryIntervals(fit.u_hat, se_u, z), EntryIntervals(fit.v_hat, se_v, z)


def inference_report(
    data: Dataset,
    variants: list[Variant],
    alpha: float = 0.05,
    ts_fit: Optional[FitResult] = None,
    sc_fit: Optional[FitResult] = None,
    truth: Optional[UnifiedModelParams] = None,
) -> dict:
    """JSON-ready summary: coefficient intervals per variant plus the mean network SE."""
    report: dict = {"alpha": alpha, "n": data.n, "p": data.p, "variants": {}}
    for variant in variants:
        rows = ci_beta(data, variant, alpha, ts_fit=ts_fit, sc_fit=sc_fit, truth=truth)
        entry: dict = {"coefficients": [row.model_dump() for row in rows]}
        if variant != "ts-adhoc":
            network = ci_network_entries(data, variant, alpha, ts_fit, sc_fit, truth)
            entry["network_mean_se"] = float(np.mean(network.se))
            entry["network_mean_width"] = network.mean_width()
        report["variants"][variant] = entry
    return report
