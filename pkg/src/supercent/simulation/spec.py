"""Description of a Monte Carlo panel and a fluent builder for it."""

import itertools
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..errors import InputError
from ..inference.intervals import VARIANTS, Variant
from ..model.params import SimulationConfig
from ..model.presets import (
    BETA_U_GRID,
    CONSISTENT_SIGMA_A,
    INCONSISTENT_SIGMA_A,
    SIGMA_Y_GRID,
    TOY_SIGMA_A,
    panel_base,
    toy_config,
)
from ..utils.config import CvSettings, SolverSettings, SvdSettings

Estimator = Literal["two-stage", "sc-oracle", "sc-plugin", "sc-cv"]
ESTIMATORS: tuple[Estimator, ...] = ("two-stage", "sc-oracle", "sc-plugin", "sc-cv")
Preset = Literal["toy", "consistent", "inconsistent"]


class ExperimentSpec(BaseModel):
    """A grid of designs, the estimators and intervals to run on each, and how often.

    Configurations are the cartesian product of the sweeps in the order
    (sigma_a, sigma_y, beta_u); the position in that product is the config index
    used to derive random streams.
    """

    model_config = ConfigDict(frozen=True)

    base: SimulationConfig = SimulationConfig()
    sigma_a: list[float] = Field(default_factory=lambda: [2.0])
    sigma_y: list[float] = Field(default_factory=lambda: [0.25])
    beta_u: list[float] = Field(default_factory=lambda: [16.0])
    estimators: list[Estimator] = Field(default_factory=lambda: list(ESTIMATORS))
    ci_variants: list[Variant] = Field(default_factory=lambda: list(VARIANTS))
    replications: int = Field(200, ge=1)
    alpha: float = Field(0.05, gt=0, lt=1)
    master_seed: int = Field(20210101, ge=0, lt=2**64)
    parallelism: int = Field(1, ge=1)
    solver: SolverSettings = SolverSettings()
    cv: CvSettings = CvSettings()
    svd: SvdSettings = SvdSettings(method="lapack")

    @field_validator("sigma_a", "sigma_y", "beta_u")
    @classmethod
    def _nonempty(cls, values: list[float]) -> list[float]:
        if not values:
            raise ValueError("sweep lists must be nonempty")
        return values

    def configs(self) -> list[SimulationConfig]:
        """Designs in config-index order."""
        return [
            self.base.with_(sigma_a=sa, sigma_y=sy, beta_u=bu)
            for sa, sy, bu in itertools.product(self.sigma_a, self.sigma_y, self.beta_u)
        ]

    def with_(self, **updates) -> "ExperimentSpec":
        return ExperimentSpec.model_validate({**self.model_dump(), **updates})


class PanelBuilder:
    """Build an ExperimentSpec step by step.

    Example:
        >>> spec = (
        ...     PanelBuilder()
        ...     .with_base(panel_base())
        ...     .with_sigma_a([0.0625, 0.25])
        ...     .with_replications(50)
        ...     .build()
        ... )
    """

    def __init__(self):
        """Initialize panel builder."""
        self.fields: dict = {}

    def with_base(self, base: SimulationConfig) -> "PanelBuilder":
        """Set the design every sweep starts from."""
        self.fields["base"] = base
        return self

    def with_sigma_a(self, values) -> "PanelBuilder":
        self.fields["sigma_a"] = [float(x) for x in values]
        return self

    def with_sigma_y(self, values) -> "PanelBuilder":
        self.fields["sigma_y"] = [float(x) for x in values]
        return self

    def with_beta_u(self, values) -> "PanelBuilder":
        self.fields["beta_u"] = [float(x) for x in values]
        return self

    def with_estimators(self, names) -> "PanelBuilder":
        self.fields["estimators"] = list(names)
        return self

    def with_ci_variants(self, names) -> "PanelBuilder":
        self.fields["ci_variants"] = list(names)
        return self

    def with_replications(self, count: int) -> "PanelBuilder":
        self.fields["replications"] = count
        return self

    def with_seed(self, master_seed: int) -> "PanelBuilder":
        self.fields["master_seed"] = master_seed
        return self

    def with_alpha(self, alpha: float) -> "PanelBuilder":
        self.fields["alpha"] = alpha
        return self

    def with_parallelism(self, jobs: int) -> "PanelBuilder":
        self.fields["parallelism"] = jobs
        return self

    def with_cv(self, cv: CvSettings) -> "PanelBuilder":
        self.fields["cv"] = cv
        return self

    def with_solver(self, solver: SolverSettings) -> "PanelBuilder":
        self.fields["solver"] = solver
        return self

    def with_svd(self, svd: SvdSettings) -> "PanelBuilder":
        self.fields["svd"] = svd
        return self

    def build(self) -> ExperimentSpec:
        """Validate and return the spec."""
        return ExperimentSpec.model_validate(self.fields)


def preset_spec(
    preset: Preset, replications: int = 200, master_seed: int = 20210101
) -> ExperimentSpec:
    """Named panel.

    ``toy`` sweeps sigma_a over 2^{1, 1.5, ..., 5} for two-stage against CV-tuned
    SuperCENT. ``consistent`` and ``inconsistent`` sweep sigma_y and beta_u over the
    regime grids with every estimator and interval variant.
    """
    builder = PanelBuilder().with_replications(replications).with_seed(master_seed)
    if preset == "toy":
        return (
            builder.with_base(toy_config())
            .with_sigma_a(TOY_SIGMA_A)
            .with_sigma_y([0.25])
            .with_beta_u([16.0])
            .with_estimators(["two-stage", "sc-cv"])
            .with_ci_variants(["ts-adhoc", "ts", "sc-cv"])
            .build()
        )
    sigma_a = {"consistent": CONSISTENT_SIGMA_A, "inconsistent": INCONSISTENT_SIGMA_A}.get(preset)
    if sigma_a is None:
        raise InputError(f"Unknown preset {preset!r}")
    return (
        builder.with_base(panel_base())
        .with_sigma_a(sigma_a)
        .with_sigma_y(SIGMA_Y_GRID)
        .with_beta_u(BETA_U_GRID)
        .build()
    )
