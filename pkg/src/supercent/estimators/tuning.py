"""Choice of the SuperCENT tuning parameter: oracle, plug-in and K-fold CV."""

import logging
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..core.linalg import SingularTriple, top_singular_triple
from ..errors import (
    DegenerateInputError,
    InfiniteLambdaError,
    InputError,
    SelectionError,
    SupercentError,
)
from ..model.params import Dataset
from ..predict.augmented import AugmentedNetwork, estimate_new_centralities
from ..utils.config import CvSettings, SolverSettings, SvdSettings
from .results import FitResult
from .solver import fit_supercent
from .two_stage import fit_two_stage

logger = logging.getLogger(__name__)

# sigma_a_hat^2 / d_hat^2 at or below this counts as a noiseless network.
NOISELESS_RATIO = 1e-20

SelectionMethod = Literal["oracle", "plugin", "cv", "fixed"]


def lambda_oracle(params) -> float:
    """lambda_0 = n sigma_y^2 / sigma_a^2, where SuperCENT's gain over two-stage peaks.

    Raises:
        InfiniteLambdaError: If sigma_a = 0 (use the two-stage estimator instead)

    Example:
        >>> lambda_oracle(toy_config(sigma_a=2.0))
        4.0
    """
    if params.sigma_a == 0:
        raise InfiniteLambdaError("sigma_a = 0: oracle lambda is infinite, use two-stage")
    return params.n * params.sigma_y**2 / params.sigma_a**2


def lambda_plugin(ts_fit: FitResult) -> float:
    """lambda_0 with the two-stage noise estimates plugged in.

    Raises:
        DegenerateInputError: If the two-stage network residual is numerically zero
    """
    if ts_fit.sigma_a_hat_sq <= NOISELESS_RATIO * ts_fit.d_hat**2:
        raise DegenerateInputError(
            "Two-stage network residual is zero; plug-in lambda is undefined"
        )
    return ts_fit.n * ts_fit.sigma_y_hat_sq / ts_fit.sigma_a_hat_sq


def default_grid(
    center: float, points: int = 21, low_log2: float = -15.0, high_log2: float = 5.0
) -> list[float]:
    """Log-uniform grid center * 2^t for t evenly spaced over [low_log2, high_log2].

    The two-stage plug-in overstates lambda_0 when the network is noisy, so the
    default reaches far further below the center than above it.

    Example:
        >>> default_grid(1.0, points=3, low_log2=-2.0, high_log2=2.0)
        [0.25, 1.0, 4.0]
    """
    if center <= 0:
        raise InputError(f"Grid center must be positive, got {center}")
    if points == 1:
        return [float(center)]
    return [float(center * 2.0**t) for t in np.linspace(low_log2, high_log2, points)]


class LambdaSelection(BaseModel):
    """How lambda is chosen; after cross-validation also the table and the winner."""

    model_config = ConfigDict(populate_by_name=True)

    method: SelectionMethod = "cv"
    grid: list[float] = Field(default_factory=list)
    k_folds: int = Field(10, ge=2)
    cv_table: list[tuple[float, float]] = Field(default_factory=list)
    selected: Optional[float] = None

    @field_validator("grid")
    @classmethod
    def _positive_sorted(cls, grid: list[float]) -> list[float]:
        if any(value <= 0 for value in grid):
            raise ValueError("grid values must be positive")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("grid must be strictly increasing")
        return grid


@dataclass(frozen=True)
class CrossSectionSplit:
    """Fold index in [0, K) for every node."""

    fold_assignments: np.ndarray

    @property
    def k_folds(self) -> int:
        return int(self.fold_assignments.max()) + 1

    @classmethod
    def random(cls, n: int, k_folds: int, rng: np.random.Generator, p: int = 0):
        """Random partition; fold sizes differ by at most one.

        Raises:
            InputError: If a fold would be empty or leave n_train <= p + 2
        """
        if k_folds < 2 or k_folds > n:
            raise InputError(f"Need 2 <= K <= n, got K={k_folds}, n={n}")
        folds = np.empty(n, dtype=int)
        folds[rng.permutation(n)] = np.arange(n) % k_folds
        split = cls(fold_assignments=folds)
        split.validate(p)
        return split

    def validate(self, p: int) -> None:
        n = self.fold_assignments.shape[0]
        sizes = np.bincount(self.fold_assignments, minlength=self.k_folds)
        if np.any(sizes == 0):
            raise InputError("Every fold must hold at least one node")
        if n - sizes.max() <= p + 2:
            raise InputError(
                f"Largest fold leaves {n - sizes.max()} training nodes; need more than p+2={p + 2}"
            )

    def folds(self):
        """Yield (fold, train_index, validation_index)."""
        for k in range(self.k_folds):
            mask = self.fold_assignments == k
            yield k, np.flatnonzero(~mask), np.flatnonzero(mask)


def _fold_sse(
    data: Dataset,
    train: np.ndarray,
    val: np.ndarray,
    lam: float,
    settings: SolverSettings,
    full_triple: SingularTriple,
    init: Optional[FitResult],
) -> tuple[float, bool]:
    fit = fit_supercent(data.subset(train), settings.with_lambda(lam), init=init)
    order = np.concatenate([train, val])
    network = AugmentedNetwork(A_all=data.A[np.ix_(order, order)], n_train=train.size)
    permuted = SingularTriple(d=full_triple.d, u=full_triple.u[order], v=full_triple.v[order])
    u_val, v_val = estimate_new_centralities(network, fit.u_hat, fit.v_hat, triple=permuted)
    resid = data.y[val] - data.X[val] @ fit.beta_x_hat - u_val * fit.beta_u_hat
    resid = resid - v_val * fit.beta_v_hat
    return float(resid @ resid), fit.converged


def _evaluate_cell(data, train, val, lam, fold, settings, full_triple, init) -> dict:
    try:
        sse, converged = _fold_sse(data, train, val, lam, settings, full_triple, init)
        return {"lambda": lam, "fold": fold, "sse": sse, "status": "ok", "converged": converged}
    except SupercentError as e:
        logger.warning(f"CV cell lambda={lam:g} fold={fold} failed: {e}")
        return {
            "lambda": lam,
            "fold": fold,
            "sse": np.nan,
            "status": "failed",
            "converged": False,
        }


def cross_validate_lambda(
    data: Dataset,
    selection: LambdaSelection,
    settings: Optional[SolverSettings] = None,
    rng: Optional[np.random.Generator] = None,
    svd: Optional[SvdSettings] = None,
    jobs: int = 1,
) -> tuple[float, pd.DataFrame]:
    """K-fold cross-validation over the nodes.

    For every fold the solver is trained on the training nodes' induced subnetwork;
    validation centralities come from the augmented-network SVD of the full A, and
    the validation SSE is accumulated per lambda.

    Args:
        data: Observed (A, X, y)
        selection: Grid and fold count
        settings: Solver stopping rule (its lambda is ignored)
        rng: Generator for the fold assignment
        svd: SVD settings for the full network and training warm starts
        jobs: joblib worker count

    Returns:
        (lambda_min, table with columns lambda, fold, sse, status, converged)

    Raises:
        SelectionError: If every lambda has a failed cell
    """
    if not selection.grid:
        raise InputError("Cross-validation grid is empty")
    settings = settings or SolverSettings()
    svd = svd or SvdSettings()
    rng = rng if rng is not None else np.random.default_rng()
    split = CrossSectionSplit.random(data.n, selection.k_folds, rng, p=data.p)
    full_triple = top_singular_triple(data.A, method=svd.method, tol=svd.tol, max_iter=svd.max_iter)

    tasks = []
    for fold, train, val in split.folds():
        try:
            init = fit_two_stage(data.subset(train), svd)
        except SupercentError as e:
            logger.warning(f"Warm start for fold {fold} failed, using default start: {e}")
            init = None
        for lam in selection.grid:
            tasks.append((train, val, lam, fold, init))

    cells = Parallel(n_jobs=jobs)(
        delayed(_evaluate_cell)(data, train, val, lam, fold, settings, full_triple, init)
        for train, val, lam, fold, init in tasks
    )
    table = pd.DataFrame(cells, columns=["lambda", "fold", "sse", "status", "converged"])
    table = table.sort_values(["lambda", "fold"], kind="stable").reset_index(drop=True)

    failed = table.groupby("lambda")["status"].apply(lambda s: bool((s != "ok").any()))
    totals = table.groupby("lambda")["sse"].sum()
    usable = totals[~failed]
    if usable.empty:
        raise SelectionError("Every lambda on the grid had a failed cross-validation cell")
    lambda_min = float(usable.idxmin())
    logger.info(f"Cross-validation selected lambda={lambda_min:g} of {len(selection.grid)} values")
    return lambda_min, table


def summarize_cv(table: pd.DataFrame) -> list[tuple[float, float]]:
    """(lambda, total SSE) for every lambda whose cells all succeeded."""
    ok = table.groupby("lambda")["status"].apply(lambda s: bool((s == "ok").all()))
    totals = table.groupby("lambda")["sse"].sum()
    return [(float(lam), float(totals[lam])) for lam in totals.index if ok[lam]]


def select_lambda(
    data: Dataset,
    method: SelectionMethod,
    ts_fit: Optional[FitResult] = None,
    params=None,
    value: Optional[float] = None,
    cv: Optional[CvSettings] = None,
    settings: Optional[SolverSettings] = None,
    rng: Optional[np.random.Generator] = None,
    svd: Optional[SvdSettings] = None,
) -> LambdaSelection:
    """Resolve a tuning parameter by the named method.

    ``fixed`` needs ``value``; ``oracle`` needs ``params`` (truth); ``plugin`` and the
    default CV grid use the two-stage fit, computed here when not given.
    """
    cv = cv or CvSettings()
    if method == "fixed":
        if value is None or value <= 0:
            raise InputError("A fixed lambda must be a positive number")
        return LambdaSelection(method="fixed", grid=[value], k_folds=cv.k_folds, selected=value)
    if method == "oracle":
        if params is None:
            raise InputError("Oracle lambda needs the true noise levels")
        lam = lambda_oracle(params)
        return LambdaSelection(method="oracle", grid=[lam], k_folds=cv.k_folds, selected=lam)

    ts_fit = ts_fit or fit_two_stage(data, svd)
    center = lambda_plugin(ts_fit)
    if method == "plugin":
        return LambdaSelection(method="plugin", grid=[center], k_folds=cv.k_folds, selected=center)

    selection = LambdaSelection(
        method="cv",
        grid=default_grid(center, cv.grid_points, cv.grid_log2_low, cv.grid_log2_high),
        k_folds=cv.k_folds,
    )
    lam, table = cross_validate_lambda(data, selection, settings, rng=rng, svd=svd, jobs=cv.jobs)
    return selection.model_copy(update={"cv_table": summarize_cv(table), "selected": lam})
