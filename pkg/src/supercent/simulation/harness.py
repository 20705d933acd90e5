"""Monte Carlo panel runner.

Each (config index, replication index) pair owns a random stream derived from the
master seed, so any single replication can be reproduced in isolation and the
aggregated table does not depend on how many workers ran it.
"""

import logging
from typing import Optional

import numpy as np
from joblib import Parallel, delayed

from ..errors import NonConvergenceError, SupercentError
from ..estimators.results import FitResult, orient_to_reference
from ..estimators.solver import fit_supercent
from ..estimators.tuning import (
    LambdaSelection,
    cross_validate_lambda,
    default_grid,
    lambda_oracle,
    lambda_plugin,
)
from ..estimators.two_stage import fit_two_stage
from ..inference.intervals import ci_beta, ci_centrality_entries, ci_network_entries
from ..model.generate import rng_stream, simulate
from ..model.params import Dataset, SimulationConfig, UnifiedModelParams
from ..model.presets import TOY_SIGMA_A
from ..utils.progress import create_progress_bar
from .aggregate import MetricsTable
from .metrics import coef_loss_or_raw, loss_network, loss_prediction, loss_subspace
from .spec import ExperimentSpec, preset_spec

logger = logging.getLogger(__name__)

# Sub-stream key for fold assignment inside a replication.
CV_STREAM_KEY = 1


def _fit_estimator(
    name: str,
    data: Dataset,
    params: UnifiedModelParams,
    ts_fit: FitResult,
    spec: ExperimentSpec,
    config_index: int,
    replication: int,
) -> FitResult:
    if name == "two-stage":
        return ts_fit
    if name == "sc-oracle":
        lam = lambda_oracle(params)
    elif name == "sc-plugin":
        lam = lambda_plugin(ts_fit)
    else:
        cv = spec.cv
        grid = default_grid(
            lambda_plugin(ts_fit), cv.grid_points, cv.grid_log2_low, cv.grid_log2_high
        )
        selection = LambdaSelection(method="cv", grid=grid, k_folds=spec.cv.k_folds)
        cv_rng = rng_stream(spec.master_seed, config_index, replication, CV_STREAM_KEY)
        lam, _ = cross_validate_lambda(data, selection, spec.solver, rng=cv_rng, svd=spec.svd)
    fit = fit_supercent(data, spec.solver.with_lambda(lam), init=ts_fit)
    if not fit.converged:
        raise NonConvergenceError(
            f"SuperCENT did not converge at lambda={lam:g}", iterations=fit.iterations
        )
    return fit


def _estimator_metrics(
    fit: FitResult,
    data: Dataset,
    params: UnifiedModelParams,
) -> dict[str, float]:
    y_mean = data.X @ params.beta_x + params.u * params.beta_u + params.v * params.beta_v
    loss_u = loss_subspace(fit.u_hat, params.u)
    out = {
        "loss_u": loss_u,
        "loss_v": loss_subspace(fit.v_hat, params.v),
        "sin_u": float(np.sqrt(loss_u)),
        "loss_A": loss_network(fit.A_hat, params.A0),
        "bias_bu": fit.beta_u_hat - params.beta_u,
        "bias_bv": fit.beta_v_hat - params.beta_v,
        "loss_pred": loss_prediction(fit.fitted(data.X), y_mean),
        "sigma_y_hat_sq": fit.sigma_y_hat_sq,
        "sigma_a_hat_sq": fit.sigma_a_hat_sq,
        "iterations": float(fit.iterations),
    }
    for label, est, true in (
        ("bu", fit.beta_u_hat, params.beta_u),
        ("bv", fit.beta_v_hat, params.beta_v),
    ):
        value, raw = coef_loss_or_raw(est, true)
        out[f"sqerr_{label}" if raw else f"loss_{label}"] = value
    bx = [coef_loss_or_raw(e, t) for e, t in zip(fit.beta_x_hat, params.beta_x)]
    if not any(raw for _, raw in bx):
        out["loss_bx"] = float(np.mean([value for value, _ in bx]))
    if fit.lambda_ is not None:
        out["lambda"] = fit.lambda_
    return out


def _variant_metrics(
    variant: str,
    data: Dataset,
    params: UnifiedModelParams,
    fits: dict[str, FitResult],
    alpha: float,
) -> dict[str, float]:
    source = {"ts-adhoc": "two-stage", "ts-oracle": "two-stage", "ts": "two-stage"}
    fit = fits.get(source.get(variant, variant))
    if fit is None:
        raise SupercentError(f"Interval variant {variant} has no successful fit to use")
    kwargs = {"ts_fit": fit} if variant.startswith("ts") else {"sc_fit": fit}
    rows = {row.name: row for row in ci_beta(data, variant, alpha, truth=params, **kwargs)}
    out = {
        "cover_bu": float(rows["beta_u"].covers(params.beta_u)),
        "width_bu": rows["beta_u"].width,
        "cover_bv": float(rows["beta_v"].covers(params.beta_v)),
        "width_bv": rows["beta_v"].width,
        "cover_bx": float(
            np.mean([rows[f"beta_x_{k}"].covers(b) for k, b in enumerate(params.beta_x)])
        ),
    }
    if variant == "ts-adhoc":
        return out
    network = ci_network_entries(data, variant, alpha, truth=params, **kwargs)
    out["cover_A"] = network.coverage(params.A0)
    out["width_A"] = network.mean_width()
    u_int, v_int = ci_centrality_entries(data, variant, alpha, truth=params, **kwargs)
    out["cover_u"] = u_int.coverage(params.u)
    out["width_u"] = u_int.mean_width()
    out["cover_v"] = v_int.coverage(params.v)
    out["width_v"] = v_int.mean_width()
    return out


def run_replication(
    spec: ExperimentSpec,
    config_index: int,
    config: SimulationConfig,
    replication: int,
) -> tuple[list[dict], list[dict]]:
    """One replication of one design.

    Returns:
        (records, failures). Records hold one metric value each; failures name the
        estimator or interval variant that could not be produced and why.
    """
    key = {"config_index": config_index, "replication": replication}
    records: list[dict] = []
    failures: list[dict] = []

    def fail(label: str, error: Exception) -> None:
        failures.append({**key, "estimator": label, "reason": f"{type(error).__name__}: {error}"})

    rng = rng_stream(spec.master_seed, config_index, replication)
    try:
        params, data = simulate(config, rng)
        ts_fit = fit_two_stage(data, spec.svd)
    except SupercentError as e:
        for label in [*spec.estimators, *spec.ci_variants]:
            fail(label, e)
        return records, failures

    fits: dict[str, FitResult] = {}
    for name in spec.estimators:
        try:
            fit = _fit_estimator(name, data, params, ts_fit, spec, config_index, replication)
            fit = orient_to_reference(fit, params.u, params.v)
            metrics = _estimator_metrics(fit, data, params)
        except SupercentError as e:
            fail(name, e)
            continue
        fits[name] = fit
        if name == "two-stage":
            noise = data.A - params.A0
            metrics["sigma_a_hat_sq_infeasible"] = float(np.sum(noise * noise)) / data.n**2
        records.extend(
            {**key, "estimator": name, "metric": m, "value": v} for m, v in metrics.items()
        )

    for variant in spec.ci_variants:
        try:
            metrics = _variant_metrics(variant, data, params, fits, spec.alpha)
        except SupercentError as e:
            fail(variant, e)
            continue
        records.extend(
            {**key, "estimator": variant, "metric": m, "value": v} for m, v in metrics.items()
        )
    return records, failures


class PanelRunner:
    """Run every replication of an ExperimentSpec and aggregate the results.

    Example:
        >>> runner = PanelRunner(preset_spec("consistent", replications=50))
        >>> table = runner.run()
        >>> table.to_csv("consistent.csv")
    """

    def __init__(
        self,
        spec: ExperimentSpec,
        show_progress: bool = False,
        logger: Optional[logging.Logger] = None,
    ):
        self.spec = spec
        self.show_progress = show_progress
        self.logger = logger or logging.getLogger(__name__)
        self.stats = {"replications": 0, "failed": 0}

    def _tasks(self) -> list[tuple[int, SimulationConfig, int]]:
        return [
            (c, config, r)
            for c, config in enumerate(self.spec.configs())
            for r in range(self.spec.replications)
        ]

    def run(self) -> MetricsTable:
        """Execute the panel.

        Replication failures are logged and counted; they never abort the panel.
        """
        tasks = self._tasks()
        self.logger.info(
            f"Running {len(tasks)} replications over {len(self.spec.configs())} designs "
            f"with {self.spec.parallelism} worker(s)"
        )
        results = Parallel(n_jobs=self.spec.parallelism, return_as="generator")(
            delayed(run_replication)(self.spec, c, config, r) for c, config, r in tasks
        )

        records: list[dict] = []
        failures: list[dict] = []
        self.stats = {"replications": 0, "failed": 0}
        progress = create_progress_bar(transient=True) if self.show_progress else None
        if progress is not None:
            progress.start()
            task_id = progress.add_task("Replications", total=len(tasks))
        try:
            for rec, fail in results:
                records.extend(rec)
                failures.extend(fail)
                self.stats["replications"] += 1
                self.stats["failed"] += len(fail)
                if progress is not None:
                    progress.advance(task_id)
        finally:
            if progress is not None:
                progress.stop()

        if failures:
            self.logger.warning(f"{len(failures)} estimator/interval runs failed across the panel")
        return MetricsTable.from_records(self.spec, records, failures)


def run_panel(spec: ExperimentSpec, show_progress: bool = False) -> MetricsTable:
    """Run a panel and return its aggregated MetricsTable."""
    return PanelRunner(spec, show_progress=show_progress).run()


def toy_experiment(
    sigma_a_grid=TOY_SIGMA_A,
    replications: int = 200,
    seed: int = 20210101,
    parallelism: int = 1,
    show_progress: bool = False,
) -> MetricsTable:
    """Two-stage against CV-tuned SuperCENT on the toy design over a sigma_a grid.

    The table carries sin_u, bias_bu and the beta_u interval coverage and width
    for both methods.
    """
    spec = preset_spec("toy", replications=replications, master_seed=seed).with_(
        sigma_a=[float(s) for s in sigma_a_grid], parallelism=parallelism
    )
    return run_panel(spec, show_progress=show_progress)
