"""Asymptotic standard errors for coefficients, centralities and network entries.

All routines take centralities on the sqrt(n) scale and evaluate the large-sample
covariance at whatever values are plugged in: the truth for oracle intervals, the
estimates otherwise. Nothing of size n^2 x n^2 is formed; the widest intermediate is
the n x n residual projector of (X, u, v).
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.linalg import as_matrix, as_vector, complement_projector, project_complement
from ..errors import DegenerateInputError, InputError
from ..estimators.theory import delta_value

# Relative tolerance on c = |u~|^2 |v~|^2 - (u~'v~)^2 below which the projected
# centralities are treated as collinear.
COLLINEAR_RTOL = 1e-12


@dataclass(frozen=True)
class BetaStandardErrors:
    """Standard errors of (beta_u, beta_v) and the covariance of beta_x."""

    se_bu: float
    se_bv: float
    cov_bx: NDArray[np.float64]

    @property
    def se_bx(self) -> NDArray[np.float64]:
        return np.sqrt(np.clip(np.diag(self.cov_bx), 0.0, None))


def _centralities(u: ArrayLike, v: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    uu = as_vector(u, "u")
    vv = as_vector(v, "v")
    if uu.shape != vv.shape:
        raise InputError("u and v must have the same length")
    return uu, vv


def se_beta_closed_form(
    u: ArrayLike,
    v: ArrayLike,
    X: ArrayLike,
    beta_u: float,
    beta_v: float,
    d: float,
    sigma_y_sq: float,
    sigma_a_sq: float,
) -> BetaStandardErrors:
    """Large-sample standard errors of the regression coefficients.

    With u~ = (I - P_X) u, v~ = (I - P_X) v and c = |u~|^2 |v~|^2 - (u~'v~)^2,

        Var(beta_u) = sigma_y^2 |v~|^2 / c
                      + sigma_a^2 / (c^2 d^2 n) [beta_v^2 |v~|^4 u~'(I-P_v)u~
                                                 + beta_u^2 (u~'v~)^2 v~'(I-P_u)v~]

    and symmetrically for beta_v. The same form holds for two-stage and SuperCENT.
    beta_x carries the regression noise and the centrality measurement error passed
    through the centrality coefficients.

    Args:
        u: Hub centrality, |u| = sqrt(n)
        v: Authority centrality, |v| = sqrt(n)
        X: Covariates
        beta_u: Hub coefficient
        beta_v: Authority coefficient
        d: Network scale
        sigma_y_sq: Regression noise variance
        sigma_a_sq: Network noise variance

    Returns:
        BetaStandardErrors

    Raises:
        DegenerateInputError: If the projected centralities are collinear (c <= 0)
    """
    uu, vv = _centralities(u, v)
    Xm = as_matrix(X, "X")
    n = uu.shape[0]
    if d == 0:
        raise DegenerateInputError("Network scale d is zero")
    ut = project_complement(Xm, uu)
    vt = project_complement(Xm, vv)
    uu_t, vv_t, uv_t = float(ut @ ut), float(vt @ vt), float(ut @ vt)
    c = uu_t * vv_t - uv_t**2
    if c <= COLLINEAR_RTOL * max(uu_t * vv_t, np.finfo(float).tiny):
        raise DegenerateInputError("Projected centralities are collinear; c <= 0")

    kappa_n = sigma_a_sq / (d**2 * n)
    u_perp_v = uu_t - float(ut @ vv) ** 2 / n
    v_perp_u = vv_t - float(vt @ uu) ** 2 / n
    var_bu = sigma_y_sq * vv_t / c + kappa_n / c**2 * (
        beta_v**2 * vv_t**2 * u_perp_v + beta_u**2 * uv_t**2 * v_perp_u
    )
    var_bv = sigma_y_sq * uu_t / c + kappa_n / c**2 * (
        beta_u**2 * uu_t**2 * v_perp_u + beta_v**2 * uv_t**2 * u_perp_v
    )

    # beta_x - beta = M (eps - du beta_u - dv beta_v), M = G (I - U C^-1 U~').
    G = np.linalg.solve(Xm.T @ Xm, Xm.T)
    U = np.column_stack([uu, vv])
    Ut = np.column_stack([ut, vt])
    C = Ut.T @ Ut
    M = G - (G @ U) @ np.linalg.solve(C, Ut.T)
    Mu = M - np.outer(M @ uu, uu) / n
    Mv = M - np.outer(M @ vv, vv) / n
    cov_bx = sigma_y_sq * (M @ M.T) + kappa_n * (beta_u**2 * (Mu @ M.T) + beta_v**2 * (Mv @ M.T))
    return BetaStandardErrors(
        se_bu=float(np.sqrt(max(var_bu, 0.0))),
        se_bv=float(np.sqrt(max(var_bv, 0.0))),
        cov_bx=cov_bx,
    )


def _two_stage_entry_variance(
    uu: NDArray[np.float64], vv: NDArray[np.float64], sigma_a_sq: float
) -> NDArray[np.float64]:
    n = uu.shape[0]
    h = uu**2 / n
    g = vv**2 / n
    return sigma_a_sq * (h[:, None] + g[None, :] - np.outer(h, g))


def se_network_entries_two_stage(
    u: ArrayLike, v: ArrayLike, sigma_a_sq: float
) -> NDArray[np.float64]:
    """Per-entry standard errors of the two-stage A_hat.

    Var(A_hat_ij) = sigma_a^2 (h_i + g_j - h_i g_j) with h = u^2/n and g = v^2/n, the
    diagonal of sigma_a^2 [I - (I - P_v) (x) (I - P_u)]. Entries sum to
    sigma_a^2 (2n - 1).

    Returns:
        n x n matrix of standard errors
    """
    uu, vv = _centralities(u, v)
    return np.sqrt(_two_stage_entry_variance(uu, vv, sigma_a_sq))


def _supercent_delta(n, d, beta_u, beta_v, lam, sigma_y_sq, sigma_a_sq) -> float:
    if d == 0:
        raise DegenerateInputError("Network scale d is zero")
    return delta_value(n, d, beta_u, beta_v, sigma_a_sq, sigma_y_sq, lam)


def se_network_entries_supercent(
    u: ArrayLike,
    v: ArrayLike,
    X: ArrayLike,
    d: float,
    beta_u: float,
    beta_v: float,
    lam: float,
    sigma_y_sq: float,
    sigma_a_sq: float,
) -> NDArray[np.float64]:
    """Per-entry standard errors of the SuperCENT A_hat.

    The two-stage variance is reduced by the supervision term

        d^2 delta [beta_u^2 v_j^2 Q_ii + beta_v^2 u_i^2 Q_jj + 2 beta_u beta_v u_i v_j Q_ij]

    where Q = I - P_(X,u,v) and delta is the SuperCENT improvement factor at lam.
    Variances are clipped at zero before the square root. As lam grows the result
    tends to the two-stage standard errors.

    Returns:
        n x n matrix of standard errors
    """
    uu, vv = _centralities(u, v)
    Xm = as_matrix(X, "X")
    n = uu.shape[0]
    delta = _supercent_delta(n, d, beta_u, beta_v, lam, sigma_y_sq, sigma_a_sq)
    Q = complement_projector(np.column_stack([Xm, uu, vv]))
    q = np.diag(Q)
    reduction = (
        beta_u**2 * np.outer(q, vv**2)
        + beta_v**2 * np.outer(uu**2, q)
        + 2.0 * beta_u * beta_v * np.outer(uu, vv) * Q
    )
    var = _two_stage_entry_variance(uu, vv, sigma_a_sq) - d**2 * delta * reduction
    return np.sqrt(np.clip(var, 0.0, None))


def se_centrality_entries(
    u: ArrayLike,
    v: ArrayLike,
    d: float,
    sigma_a_sq: float,
    method: str = "two-stage",
    X: ArrayLike | None = None,
    beta_u: float = 0.0,
    beta_v: float = 0.0,
    lam: float | None = None,
    sigma_y_sq: float = 0.0,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Per-entry standard errors of u_hat and v_hat.

    Two-stage: Var(u_hat_i) = sigma_a^2 / (d^2 n) (1 - u_i^2 / n). SuperCENT subtracts
    beta_u^2 delta Q_ii (beta_v^2 delta Q_ii for v) with Q = I - P_(X,u,v).

    Raises:
        InputError: If a SuperCENT request lacks X or lam
    """
    uu, vv = _centralities(u, v)
    n = uu.shape[0]
    if d == 0:
        raise DegenerateInputError("Network scale d is zero")
    kappa_n = sigma_a_sq / (d**2 * n)
    var_u = kappa_n * (1.0 - uu**2 / n)
    var_v = kappa_n * (1.0 - vv**2 / n)
    if method == "supercent":
        if X is None or lam is None:
            raise InputError("SuperCENT centrality errors need X and lambda")
        delta = _supercent_delta(n, d, beta_u, beta_v, lam, sigma_y_sq, sigma_a_sq)
        q = np.diag(complement_projector(np.column_stack([as_matrix(X, "X"), uu, vv])))
        var_u = var_u - beta_u**2 * delta * q
        var_v = var_v - beta_v**2 * delta * q
    elif method != "two-stage":
        raise InputError(f"Unknown method {method!r}")
    return np.sqrt(np.clip(var_u, 0.0, None)), np.sqrt(np.clip(var_v, 0.0, None))
