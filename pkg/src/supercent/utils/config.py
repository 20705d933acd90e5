"""Configuration management."""

import os
from pathlib import Path
from typing import Any, Literal, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from ..errors import ConfigError

DEFAULT_CONFIG_PATH = Path("~/.supercent/config.yaml")


class SvdSettings(BaseModel):
    """Backend and tolerances for the leading singular triple."""

    model_config = ConfigDict(frozen=True)

    method: Literal["power", "lapack"] = "power"
    tol: float = Field(1e-10, gt=0)
    max_iter: int = Field(20000, ge=1)


class SolverSettings(BaseModel):
    """Inputs of the SuperCENT block-descent solver.

    Attributes:
        lambda_: Tuning parameter weighting the network term (> 0)
        tol_rho: Stop when the projector change of u and v is at most this
        max_iter: Iteration budget; exhausting it returns converged=False
        record_trace: Keep the objective value after every iteration
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lambda_: float = Field(1.0, gt=0, alias="lambda")
    tol_rho: float = Field(1e-4, gt=0)
    max_iter: int = Field(1000, ge=1)
    record_trace: bool = False

    def with_lambda(self, value: float) -> "SolverSettings":
        """Copy of these settings with a different tuning parameter."""
        return self.model_copy(update={"lambda_": float(value)})


class CvSettings(BaseModel):
    """K-fold cross-validation layout."""

    model_config = ConfigDict(frozen=True)

    k_folds: int = Field(10, ge=2)
    grid_points: int = Field(21, ge=1)
    grid_log2_low: float = Field(-15.0, le=0)
    grid_log2_high: float = Field(5.0, ge=0)
    jobs: int = Field(1, ge=1)


class SimulationSettings(BaseModel):
    """Defaults for Monte Carlo panels."""

    model_config = ConfigDict(frozen=True)

    replications: int = Field(200, ge=1)
    alpha: float = Field(0.05, gt=0, lt=1)
    jobs: int = Field(1, ge=1)
    master_seed: int = Field(20210101, ge=0)


class LoggingSettings(BaseModel):
    """Logger level, optional file and rotation."""

    model_config = ConfigDict(frozen=True)

    level: str = "INFO"
    file: Optional[Path] = None
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    max_size: int = Field(50, ge=1)
    backup_count: int = Field(5, ge=0)

    @field_validator("level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level {value}")
        return level


class AppSettings(BaseModel):
    """Top-level configuration tree."""

    model_config = ConfigDict(frozen=True)

    svd: SvdSettings = SvdSettings()
    solver: SolverSettings = SolverSettings()
    cv: CvSettings = CvSettings()
    simulation: SimulationSettings = SimulationSettings()
    logging: LoggingSettings = LoggingSettings()


class Config:
    """Manage application configuration.

    Values come from built-in defaults, then the YAML file, then environment
    overrides (``SUPERCENT_LOG_LEVEL``, ``SUPERCENT_JOBS``, ``SUPERCENT_SEED``).
    A ``.env`` file in the working directory is loaded first.
    """

    def __init__(self, config_path: Optional[Path] = None):
        """Initialize config.

        Args:
            config_path: Path to config file

        Environment Variables:
            SUPERCENT_CONFIG: Config file used when config_path is None
        """
        load_dotenv()
        env_path = os.getenv("SUPERCENT_CONFIG")
        chosen = config_path or (Path(env_path) if env_path else DEFAULT_CONFIG_PATH)
        self.config_path = Path(chosen).expanduser()
        self._settings: Optional[AppSettings] = None

    def _read_file(self) -> dict:
        if not self.config_path.exists():
            return {}
        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                raw = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"Failed to parse config {self.config_path}: {e}")
        if not isinstance(raw, dict):
            raise ConfigError(f"Config {self.config_path} must be a mapping at top level")
        return raw

    @staticmethod
    def _apply_env(raw: dict) -> dict:
        overrides = {
            "SUPERCENT_LOG_LEVEL": ("logging", "level", str),
            "SUPERCENT_JOBS": ("simulation", "jobs", int),
            "SUPERCENT_SEED": ("simulation", "master_seed", int),
        }
        for env_name, (section, key, cast) in overrides.items():
            value = os.getenv(env_name)
            if value is None:
                continue
            try:
                raw.setdefault(section, {})[key] = cast(value)
            except ValueError:
                raise ConfigError(f"{env_name}={value!r} is not a valid {cast.__name__}")
        return raw

    def load_config(self) -> AppSettings:
        """Load and validate configuration.

        Returns:
            Validated AppSettings

        Raises:
            ConfigError: If the file or an override fails validation
        """
        raw = self._apply_env(self._read_file())
        try:
            self._settings = AppSettings.model_validate(raw)
        except ValidationError as e:
            raise ConfigError(f"Invalid configuration in {self.config_path}: {e}")
        return self._settings

    @property
    def settings(self) -> AppSettings:
        """Loaded settings (loads on first access)."""
        if self._settings is None:
            return self.load_config()
        return self._settings

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by dotted path, e.g. ``"solver.tol_rho"``."""
        node: Any = self.settings
        for part in key.split("."):
            if isinstance(node, BaseModel):
                if part == "lambda":
                    part = "lambda_"
                if part not in type(node).model_fields:
                    return default
                node = getattr(node, part)
            elif isinstance(node, dict) and part in node:
                node = node[part]
            else:
                return default
        return node
