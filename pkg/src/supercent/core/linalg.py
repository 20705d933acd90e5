"""Dense linear-algebra primitives shared by every estimator.

Leading singular triple and leading eigenpair by power iteration, ordinary least
squares with a conditioning guard, and projection onto the orthogonal complement of a
column space. All functions are pure: inputs are never modified.
"""

import logging
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..errors import DegenerateInputError, InputError, NonConvergenceError, SingularDesignError

logger = logging.getLogger(__name__)

# Reciprocal condition number of a design below which it counts as singular.
SINGULAR_RCOND = 1e-12

# Absolute tolerance for "A is symmetric".
SYMMETRY_ATOL = 1e-10

# Perturbation applied to the first coordinate when the all-ones start is annihilated.
START_PERTURBATION = 1e-6

SvdMethod = Literal["power", "lapack"]


@dataclass(frozen=True)
class SingularTriple:
    """Leading singular value with unit-norm left and right singular vectors."""

    d: float
    u: NDArray[np.float64]
    v: NDArray[np.float64]
    iterations: int = 0


def as_matrix(A: ArrayLike, name: str = "A") -> NDArray[np.float64]:
    """Validate and return a finite 2-D float array.

    Raises:
        InputError: If A is not 2-D, is empty, or holds NaN/Inf
    """
    M = np.asarray(A, dtype=np.float64)
    if M.ndim != 2:
        raise InputError(f"{name} must be a 2-D matrix, got {M.ndim}-D")
    if M.shape[0] < 1 or M.shape[1] < 1:
        raise InputError(f"{name} must have at least one row and one column")
    if not np.all(np.isfinite(M)):
        raise InputError(f"{name} contains NaN or Inf entries")
    return M


def as_vector(z: ArrayLike, name: str = "z") -> NDArray[np.float64]:
    """Validate and return a finite 1-D float array.

    Column vectors of shape (n, 1) are flattened.
    """
    x = np.asarray(z, dtype=np.float64)
    if x.ndim == 2 and x.shape[1] == 1:
        x = x[:, 0]
    if x.ndim != 1:
        raise InputError(f"{name} must be a vector, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise InputError(f"{name} contains NaN or Inf entries")
    return x


def is_symmetric(A: NDArray[np.float64], atol: float = SYMMETRY_ATOL) -> bool:
    """True when A is square and equals its transpose within ``atol``."""
    if A.shape[0] != A.shape[1]:
        return False
    return bool(np.max(np.abs(A - A.T), initial=0.0) <= atol)


def _start_vector(A: NDArray[np.float64], fro: float) -> NDArray[np.float64]:
    """Normalized all-ones start; first coordinate nudged when A annihilates it."""
    x = np.ones(A.shape[1]) / np.sqrt(A.shape[1])
    if np.linalg.norm(A @ x) <= np.finfo(float).eps * fro:
        x[0] += START_PERTURBATION
        x /= np.linalg.norm(x)
    if np.linalg.norm(A @ x) <= np.finfo(float).eps * fro:
        # still annihilated: fall back to the heaviest column's coordinate axis
        x = np.zeros(A.shape[1])
        x[int(np.argmax(np.linalg.norm(A, axis=0)))] = 1.0
    return x


def leading_singular_triple(
    A: ArrayLike,
    tol: float = 1e-10,
    max_iter: int = 20000,
) -> SingularTriple:
    """Leading singular triple of A by alternating power iteration.

    Iterates u <- Av/|Av|, v <- A'u/|A'u| from the normalized all-ones vector until
    the residual |Av - d u| drops to ``tol * |A|_F``.

    Args:
        A: Real matrix, square or rectangular
        tol: Relative residual tolerance (> 0)
        max_iter: Iteration budget

    Returns:
        SingularTriple with d >= 0 and unit-norm u, v

    Raises:
        InputError: On invalid A or tol
        DegenerateInputError: If A is identically zero
        NonConvergenceError: If the budget is exhausted; ``last_iterate`` holds the
            current SingularTriple

    Example:
        >>> t = leading_singular_triple(np.diag([2.0, 1.0]))
        >>> round(t.d, 12)
        2.0
    """
    M = as_matrix(A)
    if tol <= 0:
        raise InputError(f"tol must be positive, got {tol}")
    fro = float(np.linalg.norm(M))
    if fro == 0.0:
        raise DegenerateInputError("Matrix is identically zero; singular vectors undefined")

    v = _start_vector(M, fro)
    Av = M @ v
    u = Av / np.linalg.norm(Av)
    d = 0.0
    for it in range(1, max_iter + 1):
        Atu = M.T @ u
        d = float(np.linalg.norm(Atu))
        if d == 0.0:
            raise DegenerateInputError("Power iteration collapsed to the null space of A")
        v = Atu / d
        Av = M @ v
        resid = float(np.linalg.norm(Av - d * u))
        norm_av = float(np.linalg.norm(Av))
        u = Av / norm_av
        if resid <= tol * fro:
            d = norm_av
            logger.debug(f"Power iteration converged in {it} iterations (d={d:.6g})")
            return SingularTriple(d=d, u=u, v=v, iterations=it)

    raise NonConvergenceError(
        f"Power iteration did not converge within {max_iter} iterations",
        iterations=max_iter,
        last_iterate=SingularTriple(d=d, u=u, v=v, iterations=max_iter),
    )


def leading_singular_triple_lapack(A: ArrayLike) -> SingularTriple:
    """Leading singular triple from a dense LAPACK SVD.

    The sign is fixed so the largest-magnitude entry of u is positive, which makes
    the output deterministic across LAPACK builds.
    """
    M = as_matrix(A)
    if not np.any(M):
        raise DegenerateInputError("Matrix is identically zero; singular vectors undefined")
    U, s, Vt = np.linalg.svd(M, full_matrices=False)
    u, v = U[:, 0].copy(), Vt[0].copy()
    if u[np.argmax(np.abs(u))] < 0:
        u, v = -u, -v
    return SingularTriple(d=float(s[0]), u=u, v=v, iterations=1)


def top_singular_triple(
    A: ArrayLike,
    method: SvdMethod = "power",
    tol: float = 1e-10,
    max_iter: int = 20000,
) -> SingularTriple:
    """Dispatch to the configured SVD backend."""
    if method == "lapack":
        return leading_singular_triple_lapack(A)
    if method == "power":
        return leading_singular_triple(A, tol=tol, max_iter=max_iter)
    raise InputError(f"Unknown SVD method: {method}")


def leading_eigenpair(
    A: ArrayLike,
    tol: float = 1e-10,
    max_iter: int = 20000,
) -> tuple[float, NDArray[np.float64]]:
    """Eigenpair of a symmetric matrix with the largest |eigenvalue|.

    Args:
        A: Symmetric matrix (within 1e-10)
        tol: Relative residual tolerance on |Ax - lambda x|
        max_iter: Iteration budget

    Returns:
        (eigenvalue, unit-norm eigenvector)

    Raises:
        InputError: If A is not symmetric
        NonConvergenceError: If the budget is exhausted
    """
    M = as_matrix(A)
    if not is_symmetric(M, atol=SYMMETRY_ATOL * max(1.0, float(np.max(np.abs(M))))):
        raise InputError("Matrix is not symmetric within tolerance")
    if tol <= 0:
        raise InputError(f"tol must be positive, got {tol}")
    fro = float(np.linalg.norm(M))
    if fro == 0.0:
        raise DegenerateInputError("Matrix is identically zero; eigenvector undefined")

    x = _start_vector(M, fro)
    lam = 0.0
    for it in range(1, max_iter + 1):
        Ax = M @ x
        lam = float(x @ Ax)
        if np.linalg.norm(Ax - lam * x) <= tol * fro:
            logger.debug(f"Eigen power iteration converged in {it} iterations")
            return lam, x
        x = Ax / np.linalg.norm(Ax)

    raise NonConvergenceError(
        f"Eigen power iteration did not converge within {max_iter} iterations",
        iterations=max_iter,
        last_iterate=(lam, x),
    )


def reciprocal_condition(W: NDArray[np.float64]) -> float:
    """Ratio of the smallest to the largest singular value of W (0 for a zero matrix)."""
    s = np.linalg.svd(W, compute_uv=False)
    if s[0] == 0.0:
        return 0.0
    return float(s[-1] / s[0])


def _check_design(W: NDArray[np.float64], name: str) -> None:
    n, q = W.shape
    if n <= q:
        raise SingularDesignError(f"{name} has {n} rows but {q} columns; need n > q")
    rcond = reciprocal_condition(W)
    if rcond < SINGULAR_RCOND:
        raise SingularDesignError(
            f"{name} is numerically singular (reciprocal condition {rcond:.3g})"
        )


def ols_fit(W: ArrayLike, y: ArrayLike) -> NDArray[np.float64]:
    """Least-squares coefficients of y on the columns of W.

    Args:
        W: n x q design, n > q, full column rank
        y: Response of length n

    Returns:
        Coefficient vector of length q

    Raises:
        InputError: On shape mismatch
        SingularDesignError: If W is rank deficient

    Example:
        >>> x = np.arange(1.0, 6.0)[:, None]
        >>> ols_fit(x, 2 * x[:, 0])
        array([2.])
    """
    Wm = as_matrix(W, "W")
    yv = as_vector(y, "y")
    if Wm.shape[0] != yv.shape[0]:
        raise InputError(f"W has {Wm.shape[0]} rows but y has length {yv.shape[0]}")
    _check_design(Wm, "W")
    beta, *_ = np.linalg.lstsq(Wm, yv, rcond=None)
    return beta


def project_complement(X: ArrayLike, z: ArrayLike) -> NDArray[np.float64]:
    """Return (I - P_X) z, the component of z orthogonal to the columns of X.

    Raises:
        SingularDesignError: If X is rank deficient
    """
    Xm = as_matrix(X, "X")
    zv = as_vector(z, "z")
    if Xm.shape[0] != zv.shape[0]:
        raise InputError(f"X has {Xm.shape[0]} rows but z has length {zv.shape[0]}")
    if Xm.shape[1] >= Xm.shape[0]:
        raise SingularDesignError("X must have more rows than columns")
    if reciprocal_condition(Xm) < SINGULAR_RCOND:
        raise SingularDesignError("X is numerically rank deficient")
    coef, *_ = np.linalg.lstsq(Xm, zv, rcond=None)
    return zv - Xm @ coef


def complement_projector(W: ArrayLike) -> NDArray[np.float64]:
    """Dense n x n matrix I - P_W, formed from a thin QR of W."""
    Wm = as_matrix(W, "W")
    _check_design(Wm, "W")
    Q, _ = np.linalg.qr(Wm)
    return np.eye(Wm.shape[0]) - Q @ Q.T


def projection_distance(a: ArrayLike, b: ArrayLike) -> float:
    """Spectral norm of P_a - P_b for rank-one projectors, i.e. sin of the angle."""
    av = as_vector(a, "a")
    bv = as_vector(b, "b")
    na, nb = np.linalg.norm(av), np.linalg.norm(bv)
    if na == 0.0 or nb == 0.0:
        raise DegenerateInputError("Projection distance undefined for a zero vector")
    ah, bh = av / na, bv / nb
    return float(min(1.0, np.linalg.norm(ah - (ah @ bh) * bh)))
