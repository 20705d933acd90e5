"""SuperCENT: joint estimation of centralities and regression by block descent.

The objective is

    (1/n) |y - X beta_x - u beta_u - v beta_v|^2 + (lambda/n^2) |A - d u v'|_F^2

subject to |u| = |v| = sqrt(n). Each block update is an exact minimizer given the
others, so the objective never increases from one sweep to the next.
"""

import logging
import warnings
from typing import Optional

import numpy as np
from numpy.typing import NDArray
from scipy import linalg as sla

from ..core.linalg import leading_eigenpair, ols_fit, projection_distance
from ..errors import DegenerateInputError, DegenerateUpdateError, InputError
from ..model.params import Dataset
from ..utils.config import SolverSettings, SvdSettings
from .results import FitResult, align_signs
from .two_stage import noise_estimates, svd_centralities

logger = logging.getLogger(__name__)


def supercent_objective(
    data: Dataset,
    d: float,
    u: NDArray[np.float64],
    v: NDArray[np.float64],
    beta: NDArray[np.float64],
    lam: float,
) -> float:
    """Penalized loss at (d, u, v, beta).

    Args:
        data: Observed (A, X, y)
        d: Network scale
        u: Hub centrality
        v: Authority centrality (pass u for a symmetric network)
        beta: Stacked (beta_x, beta_u, beta_v)
        lam: Tuning parameter

    Returns:
        Objective value
    """
    n, p = data.n, data.p
    resid = data.y - data.X @ beta[:p] - u * beta[p] - v * beta[p + 1]
    net = data.A - d * np.outer(u, v)
    return float(resid @ resid) / n + lam * float(np.sum(net * net)) / n**2


def _normalize(z: NDArray[np.float64], name: str) -> NDArray[np.float64]:
    norm = np.linalg.norm(z)
    if norm == 0.0 or not np.isfinite(norm):
        raise DegenerateUpdateError(f"{name} update vanished; cannot rescale to sqrt(n)")
    return z * (np.sqrt(z.shape[0]) / norm)


def _initial_state(
    data: Dataset,
    init: Optional[FitResult],
    svd: Optional[SvdSettings],
) -> tuple[float, NDArray[np.float64], NDArray[np.float64]]:
    if init is None:
        d, u, v, _ = svd_centralities(data, svd)
        return d, u, v
    if init.n != data.n:
        raise InputError(f"Initial fit has {init.n} nodes but data has {data.n}")
    return init.d_hat, _normalize(init.u_hat, "u"), _normalize(init.v_hat, "v")


def fit_supercent(
    data: Dataset,
    settings: Optional[SolverSettings] = None,
    init: Optional[FitResult] = None,
    svd: Optional[SvdSettings] = None,
) -> FitResult:
    """Run the SuperCENT block-descent solver.

    One sweep updates beta by OLS on (X, u, v), then d = u'Av/n^2, then u, then v
    (using the new u). Iteration stops once the larger of the projector changes of u
    and v falls to ``settings.tol_rho``; a final refresh of beta and d matches them to
    the returned centralities.

    Args:
        data: Observed (A, X, y)
        settings: Tuning parameter and stopping rule
        init: Warm start; defaults to the leading singular triple of A
        svd: SVD settings used for the default start

    Returns:
        Sign-canonical FitResult. ``converged`` is False when the iteration budget ran
        out; the last iterate is still returned.

    Raises:
        DegenerateUpdateError: If beta_u^2 + lambda d^2 (or the v analogue) is zero
        SingularDesignError: If (X, u, v) becomes rank deficient
    """
    settings = settings or SolverSettings()
    lam = settings.lambda_
    n, p = data.n, data.p
    A, X, y = data.A, data.X, data.y
    d, u, v = _initial_state(data, init, svd)

    trace: list[float] = []
    converged = False
    iterations = 0
    beta = np.zeros(p + 2)
    for iterations in range(1, settings.max_iter + 1):
        beta = ols_fit(np.column_stack([X, u, v]), y)
        bx, bu, bv = beta[:p], beta[p], beta[p + 1]
        d = float(u @ A @ v) / n**2
        offset = y - X @ bx

        denom_u = bu**2 + lam * d**2
        if denom_u == 0.0:
            raise DegenerateUpdateError("beta_u^2 + lambda d^2 = 0 in the u update")
        u_new = _normalize((bu * (offset - v * bv) + (lam * d / n) * (A @ v)) / denom_u, "u")

        denom_v = bv**2 + lam * d**2
        if denom_v == 0.0:
            raise DegenerateUpdateError("beta_v^2 + lambda d^2 = 0 in the v update")
        v_new = _normalize(
            (bv * (offset - u_new * bu) + (lam * d / n) * (A.T @ u_new)) / denom_v, "v"
        )

        change = max(projection_distance(u_new, u), projection_distance(v_new, v))
        u, v = u_new, v_new
        if settings.record_trace:
            trace.append(supercent_objective(data, d, u, v, beta, lam))
        if change <= settings.tol_rho:
            converged = True
            break

    if not converged:
        logger.warning(
            f"SuperCENT did not converge in {settings.max_iter} iterations (lambda={lam:g})"
        )

    beta = ols_fit(np.column_stack([X, u, v]), y)
    d = float(u @ A @ v) / n**2
    if settings.record_trace:
        trace.append(supercent_objective(data, d, u, v, beta, lam))
    sigma_y_sq, sigma_a_sq = noise_estimates(data, d, u, v, beta, p + 2)
    logger.debug(f"SuperCENT lambda={lam:g}: {iterations} iterations, converged={converged}")
    return align_signs(
        FitResult(
            method="supercent",
            d_hat=d,
            u_hat=u,
            v_hat=v,
            beta_x_hat=beta[:p],
            beta_u_hat=float(beta[p]),
            beta_v_hat=float(beta[p + 1]),
            sigma_y_hat_sq=sigma_y_sq,
            sigma_a_hat_sq=sigma_a_sq,
            iterations=iterations,
            converged=converged,
            lambda_=lam,
            trace=tuple(trace),
        )
    )


def _solve_symmetric_update(
    A: NDArray[np.float64],
    d: float,
    bu: float,
    lam: float,
    rhs: NDArray[np.float64],
) -> NDArray[np.float64]:
    n = A.shape[0]
    M = (bu**2 + 2.0 * lam * d**2) * np.eye(n) - (2.0 * lam * d / n) * A
    with warnings.catch_warnings():
        warnings.simplefilter("error", sla.LinAlgWarning)
        try:
            return sla.lu_solve(sla.lu_factor(M), rhs)
        except (sla.LinAlgError, sla.LinAlgWarning, ValueError) as e:
            raise DegenerateUpdateError(f"u update system is singular: {e}")


def fit_supercent_symmetric(
    data: Dataset,
    settings: Optional[SolverSettings] = None,
    svd: Optional[SvdSettings] = None,
) -> FitResult:
    """SuperCENT for a symmetric network A = d u u' + E with y = X beta_x + u beta_u.

    Starts from the eigenpair of A with the largest |eigenvalue|. Each sweep refits
    beta by OLS on (X, u), sets d = u'Au/n^2 and solves
    ((beta_u^2 + 2 lambda d^2) I - (2 lambda d / n) A) u = beta_u (y - X beta_x),
    the stationarity condition of the objective on |u| = sqrt(n). As lambda grows the
    update becomes inverse iteration and u tends to the leading eigenvector of A.

    Returns:
        FitResult with ``symmetric=True``, v_hat aliasing u_hat and beta_v_hat = 0

    Raises:
        InputError: If A is not symmetric
        DegenerateUpdateError: If the u system is singular
    """
    settings = settings or SolverSettings()
    svd = svd or SvdSettings()
    lam = settings.lambda_
    n, p = data.n, data.p
    A, X, y = data.A, data.X, data.y
    eigenvalue, x = leading_eigenpair(A, tol=svd.tol, max_iter=svd.max_iter)
    d = eigenvalue / n
    if d == 0.0:
        raise DegenerateInputError("Observed network is numerically zero")
    u = x * np.sqrt(n)

    trace: list[float] = []
    converged = False
    iterations = 0
    for iterations in range(1, settings.max_iter + 1):
        gamma = ols_fit(np.column_stack([X, u]), y)
        bx, bu = gamma[:p], gamma[p]
        d = float(u @ A @ u) / n**2
        u_new = _normalize(_solve_symmetric_update(A, d, bu, lam, bu * (y - X @ bx)), "u")
        change = projection_distance(u_new, u)
        u = u_new
        if settings.record_trace:
            trace.append(supercent_objective(data, d, u, u, np.append(gamma, 0.0), lam))
        if change <= settings.tol_rho:
            converged = True
            break

    if not converged:
        logger.warning(
            f"Symmetric SuperCENT did not converge in {settings.max_iter} iterations"
        )

    gamma = ols_fit(np.column_stack([X, u]), y)
    d = float(u @ A @ u) / n**2
    beta = np.append(gamma, 0.0)
    if settings.record_trace:
        trace.append(supercent_objective(data, d, u, u, beta, lam))
    sigma_y_sq, sigma_a_sq = noise_estimates(data, d, u, u, beta, p + 1)
    return align_signs(
        FitResult(
            method="supercent",
            d_hat=d,
            u_hat=u,
            v_hat=u,
            beta_x_hat=gamma[:p],
            beta_u_hat=float(gamma[p]),
            beta_v_hat=0.0,
            sigma_y_hat_sq=sigma_y_sq,
            sigma_a_hat_sq=sigma_a_sq,
            iterations=iterations,
            converged=converged,
            lambda_=lam,
            symmetric=True,
            trace=tuple(trace),
        )
    )
