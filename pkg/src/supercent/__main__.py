"""CLI entry point for supercent."""

import logging
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Iterator, List, Optional

import typer

from .backtest import BacktestInput, long_short_returns
from .errors import InputError, ParseError, SupercentError
from .estimators import (
    FitResult,
    LambdaSelection,
    default_grid,
    fit_supercent,
    fit_supercent_symmetric,
    fit_two_stage,
    lambda_plugin,
    select_lambda,
)
from .estimators.tuning import cross_validate_lambda, summarize_cv
from .inference import VARIANTS, ci_network_entries, inference_report
from .model import Dataset, UnifiedModelParams, panel_base, rng_stream, simulate, toy_config
from .model.presets import CONSISTENT_SIGMA_A, INCONSISTENT_SIGMA_A
from .predict import AugmentedNetwork, estimate_new_centralities, predict_response
from .simulation import PanelRunner, preset_spec
from .storage import (
    DatasetStore,
    load_fit,
    read_matrix,
    save_cv_table,
    save_fit,
    save_selection,
    save_vectors,
    write_json,
    write_matrix,
)
from .utils.config import AppSettings, Config
from .utils.logger import setup_logger

app = typer.Typer(help="Supervised network centrality estimation and inference")

logger = logging.getLogger("supercent")


class Method(str, Enum):
    two_stage = "two-stage"
    supercent = "supercent"


class Preset(str, Enum):
    toy = "toy"
    consistent = "consistent"
    inconsistent = "inconsistent"


def format_error(error: SupercentError) -> str:
    """One-line ``key=value`` rendering of an error for stderr."""
    message = " ".join(str(error).split()).replace("\\", "\\\\").replace('"', '\\"')
    parts = [f"error={type(error).__name__}", f'message="{message}"']
    if isinstance(error, ParseError):
        if error.row is not None:
            parts.append(f"row={error.row}")
        if error.column is not None:
            parts.append(f"col={error.column}")
    return " ".join(parts)


@contextmanager
def _cli_errors() -> Iterator[None]:
    try:
        yield
    except SupercentError as e:
        typer.echo(format_error(e), err=True)
        raise typer.Exit(code=2)


def _settings(ctx: typer.Context) -> AppSettings:
    return ctx.obj if isinstance(ctx.obj, AppSettings) else AppSettings()


def _parse_lambda(value: str) -> tuple[str, Optional[float]]:
    """Split ``--lambda`` into (selection method, fixed value)."""
    if value in ("plugin", "cv", "oracle"):
        return value, None
    try:
        number = float(value)
    except ValueError:
        raise InputError(f"--lambda must be a positive number, plugin, cv or oracle; got {value!r}")
    return "fixed", number


def _parse_grid(value: str) -> list[float]:
    try:
        return sorted(float(item) for item in value.split(",") if item.strip())
    except ValueError:
        raise InputError(f"--grid must be 'auto' or comma-separated numbers; got {value!r}")


def _load_truth(store: DatasetStore, needed: bool) -> Optional[UnifiedModelParams]:
    return store.load_truth() if needed else None


def _fit_supercent(
    data: Dataset,
    settings: AppSettings,
    lambda_spec: str,
    seed: int,
    truth: Optional[UnifiedModelParams],
    ts_fit: Optional[FitResult] = None,
    symmetric: bool = False,
) -> tuple[FitResult, LambdaSelection]:
    method, value = _parse_lambda(lambda_spec)
    if symmetric:
        if method not in ("fixed", "oracle"):
            raise InputError("The symmetric solver needs --lambda as a number or oracle")
        selection = select_lambda(data, method, params=truth, value=value, cv=settings.cv)
        fit = fit_supercent_symmetric(
            data, settings.solver.with_lambda(selection.selected), svd=settings.svd
        )
        return fit, selection
    ts_fit = ts_fit or fit_two_stage(data, settings.svd)
    selection = select_lambda(
        data,
        method,
        ts_fit=ts_fit,
        params=truth,
        value=value,
        cv=settings.cv,
        settings=settings.solver,
        rng=rng_stream(seed, 1),
        svd=settings.svd,
    )
    fit = fit_supercent(
        data, settings.solver.with_lambda(selection.selected), init=ts_fit, svd=settings.svd
    )
    if not fit.converged:
        logger.warning(f"Solver stopped after {fit.iterations} iterations without converging")
    return fit, selection


@app.callback()
def configure(
    ctx: typer.Context,
    config: Optional[Path] = typer.Option(None, "--config", help="YAML configuration file"),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Console log level"),
):
    """Load configuration and set up logging."""
    with _cli_errors():
        settings = Config(config).load_config()
    log = settings.logging
    setup_logger(
        "supercent",
        log_file=log.file,
        level=log_level or log.level,
        fmt=log.format,
        max_size_mb=log.max_size,
        backup_count=log.backup_count,
    )
    ctx.obj = settings


@app.command("simulate")
def cmd_simulate(
    ctx: typer.Context,
    out: Path = typer.Option(..., "--out", help="Dataset directory to write"),
    preset: Preset = typer.Option(Preset.toy, "--preset", help="Base design"),
    n: Optional[int] = typer.Option(None, "-n", help="Number of nodes"),
    sigma_a: Optional[float] = typer.Option(None, "--sigma-a", help="Network noise sd"),
    sigma_y: Optional[float] = typer.Option(None, "--sigma-y", help="Response noise sd"),
    beta_u: Optional[float] = typer.Option(None, "--beta-u", help="Hub coefficient"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Random seed"),
):
    """Draw a synthetic dataset and write A.csv, X.csv, y.csv and manifest.json."""
    settings = _settings(ctx)
    with _cli_errors():
        if preset == Preset.toy:
            config = toy_config()
        else:
            grid = CONSISTENT_SIGMA_A if preset == Preset.consistent else INCONSISTENT_SIGMA_A
            config = panel_base().with_(sigma_a=grid[0])
        updates = {"n": n, "sigma_a": sigma_a, "sigma_y": sigma_y, "beta_u": beta_u}
        updates = {key: value for key, value in updates.items() if value is not None}
        updates["seed"] = seed if seed is not None else settings.simulation.master_seed
        try:
            config = config.with_(**updates)
        except ValueError as e:
            raise InputError(f"Invalid design: {e}")
        params, data = simulate(config)
        DatasetStore(out).save(data, params, seed=config.seed)
    typer.echo(f"Wrote dataset n={data.n} p={data.p} to {out}")


@app.command("fit")
def cmd_fit(
    ctx: typer.Context,
    input_dir: Path = typer.Option(..., "--input-dir", help="Dataset directory"),
    method: Method = typer.Option(Method.two_stage, "--method", help="Estimator"),
    lambda_spec: str = typer.Option(
        "plugin", "--lambda", help="Tuning parameter: a number, plugin, cv or oracle"
    ),
    symmetric: bool = typer.Option(False, "--symmetric", help="Symmetric-network variant"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for CV folds"),
    out: Optional[Path] = typer.Option(None, "--out", help="FitResult JSON path"),
):
    """Fit two-stage or SuperCENT and write the FitResult as JSON."""
    settings = _settings(ctx)
    with _cli_errors():
        store = DatasetStore(input_dir)
        data, _ = store.load()
        out = out or input_dir / "fit.json"
        if method == Method.two_stage:
            if symmetric:
                raise InputError("--symmetric applies to --method supercent only")
            fit = fit_two_stage(data, settings.svd)
        else:
            truth = _load_truth(store, lambda_spec == "oracle")
            seed = seed if seed is not None else settings.simulation.master_seed
            fit, selection = _fit_supercent(
                data, settings, lambda_spec, seed, truth, symmetric=symmetric
            )
            save_selection(out.with_name("selection.json"), selection)
        save_fit(out, fit)
    typer.echo(
        f"{fit.method}: beta_u={fit.beta_u_hat:.6g} beta_v={fit.beta_v_hat:.6g} "
        f"d={fit.d_hat:.6g} -> {out}"
    )


@app.command("cv")
def cmd_cv(
    ctx: typer.Context,
    input_dir: Path = typer.Option(..., "--input-dir", help="Dataset directory"),
    grid: str = typer.Option("auto", "--grid", help="'auto' or comma-separated lambdas"),
    folds: Optional[int] = typer.Option(None, "--folds", help="Number of folds"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for the fold split"),
    jobs: Optional[int] = typer.Option(None, "--jobs", help="Parallel workers"),
    out: Optional[Path] = typer.Option(None, "--out", help="Output directory"),
):
    """Cross-validate lambda; write selection.json and cv_table.csv."""
    settings = _settings(ctx)
    with _cli_errors():
        data, _ = DatasetStore(input_dir).load()
        out = out or input_dir
        if grid == "auto":
            center = lambda_plugin(fit_two_stage(data, settings.svd))
            cv = settings.cv
            values = default_grid(center, cv.grid_points, cv.grid_log2_low, cv.grid_log2_high)
        else:
            values = _parse_grid(grid)
        try:
            selection = LambdaSelection(
                method="cv", grid=values, k_folds=folds or settings.cv.k_folds
            )
        except ValueError as e:
            raise InputError(f"Invalid CV grid: {e}")
        seed = seed if seed is not None else settings.simulation.master_seed
        lam, table = cross_validate_lambda(
            data,
            selection,
            settings.solver,
            rng=rng_stream(seed, 1),
            svd=settings.svd,
            jobs=jobs or settings.cv.jobs,
        )
        selection = selection.model_copy(update={"cv_table": summarize_cv(table), "selected": lam})
        save_selection(out / "selection.json", selection)
        save_cv_table(out / "cv_table.csv", table)
    typer.echo(f"Selected lambda={lam:.6g} from {len(values)} values -> {out}")


@app.command("predict")
def cmd_predict(
    input_dir: Path = typer.Option(..., "--input-dir", help="Directory with A_all.csv, X_star.csv"),
    fit_path: Optional[Path] = typer.Option(None, "--fit", help="FitResult JSON"),
    out: Optional[Path] = typer.Option(None, "--out", help="Output directory"),
):
    """Predict the response of nodes appended to a fitted network."""
    with _cli_errors():
        fit = load_fit(fit_path or input_dir / "fit.json")
        A_all = read_matrix(input_dir / "A_all.csv")
        X_star = read_matrix(input_dir / "X_star.csv", columns=fit.p)
        network = AugmentedNetwork(A_all=A_all, n_train=fit.n)
        u_star, v_star = estimate_new_centralities(network, fit.u_hat, fit.v_hat)
        y_hat = predict_response(X_star, u_star, v_star, fit)
        out = out or input_dir
        write_matrix(out / "y_hat.csv", y_hat)
        save_vectors(out / "centralities_star.csv", u_star=u_star, v_star=v_star)
    typer.echo(f"Predicted {y_hat.shape[0]} new nodes -> {out}")


@app.command("infer")
def cmd_infer(
    ctx: typer.Context,
    input_dir: Path = typer.Option(..., "--input-dir", help="Dataset directory"),
    variant: Optional[List[str]] = typer.Option(
        None, "--variant", help=f"Interval variant ({', '.join(VARIANTS)}); repeatable"
    ),
    alpha: Optional[float] = typer.Option(None, "--alpha", help="1 - confidence level"),
    lambda_spec: str = typer.Option("plugin", "--lambda", help="Lambda for sc-* variants"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for CV folds"),
    out: Optional[Path] = typer.Option(None, "--out", help="Report JSON path"),
):
    """Confidence intervals for coefficients and network entries."""
    settings = _settings(ctx)
    with _cli_errors():
        variants = variant or ["ts-adhoc", "ts", "sc-cv"]
        unknown = [name for name in variants if name not in VARIANTS]
        if unknown:
            raise InputError(f"Unknown interval variant(s): {', '.join(unknown)}")
        store = DatasetStore(input_dir)
        data, _ = store.load()
        oracle = lambda_spec == "oracle" or any(name.endswith("oracle") for name in variants)
        truth = _load_truth(store, oracle)
        ts_fit = fit_two_stage(data, settings.svd)
        sc_fit = None
        if any(name.startswith("sc") for name in variants):
            seed = seed if seed is not None else settings.simulation.master_seed
            sc_fit, _ = _fit_supercent(data, settings, lambda_spec, seed, truth, ts_fit=ts_fit)
        alpha = alpha if alpha is not None else settings.simulation.alpha
        report = inference_report(data, variants, alpha, ts_fit=ts_fit, sc_fit=sc_fit, truth=truth)
        out = out or input_dir / "inference.json"
        for name in variants:
            if name == "ts-adhoc":
                continue
            network = ci_network_entries(data, name, alpha, ts_fit, sc_fit, truth)
            se_path = write_matrix(out.with_name(f"network_se_{name}.csv"), network.se)
            report["variants"][name]["network_se_csv_path"] = str(se_path)
        write_json(out, report)
    typer.echo(f"Wrote intervals for {len(variants)} variant(s) -> {out}")


@app.command("panel")
def cmd_panel(
    ctx: typer.Context,
    preset: Preset = typer.Option(Preset.toy, "--preset", help="Named panel"),
    reps: Optional[int] = typer.Option(None, "--reps", help="Replications per design"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Master seed"),
    alpha: Optional[float] = typer.Option(None, "--alpha", help="1 - confidence level"),
    jobs: Optional[int] = typer.Option(None, "--jobs", help="Parallel workers"),
    out: Path = typer.Option(..., "--out", help="MetricsTable CSV path"),
    plot_dir: Optional[Path] = typer.Option(None, "--plot-dir", help="Write SVG charts here"),
    progress: bool = typer.Option(True, "--progress/--no-progress", help="Show progress"),
):
    """Run a Monte Carlo panel and write its MetricsTable CSV."""
    settings = _settings(ctx)
    sim = settings.simulation
    with _cli_errors():
        spec = preset_spec(
            preset.value,
            replications=reps or sim.replications,
            master_seed=seed if seed is not None else sim.master_seed,
        ).with_(
            alpha=alpha if alpha is not None else sim.alpha,
            parallelism=jobs or sim.jobs,
        )
        runner = PanelRunner(spec, show_progress=progress)
        table = runner.run()
        table.to_csv(out)
        if plot_dir is not None:
            from .simulation.plots import plot_metric_lines

            x = "sigma_a" if preset == Preset.toy else "beta_u"
            for metric in ("loss_u", "loss_A", "cover_bu"):
                plot_metric_lines(table, metric, plot_dir / f"{metric}.svg", x=x)
    typer.echo(
        f"{runner.stats['replications']} replications, {runner.stats['failed']} failed runs "
        f"-> {out}"
    )


@app.command("backtest")
def cmd_backtest(
    input_path: Path = typer.Option(..., "--input", help="CSV: period, asset, score, next_return"),
    k: int = typer.Option(3, "-k", help="Positions per side"),
    out: Path = typer.Option(Path("."), "--out", help="Output directory"),
):
    """Long the k lowest and short the k highest scores in each period."""
    with _cli_errors():
        result = long_short_returns(BacktestInput.from_csv(input_path, k=k))
        out.mkdir(parents=True, exist_ok=True)
        result.periods.to_csv(out / "backtest_periods.csv", index=False, float_format="%.17g")
        write_json(out / "backtest_summary.json", result.summary())
    typer.echo(f"Mean long-short return {result.mean_return:.6g}, {len(result.periods)} periods")


def main():
    """Main entry point."""
    app()


if __name__ == "__main__":
    main()
