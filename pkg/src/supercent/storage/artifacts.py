"""On-disk artifacts: dataset directories, fit results, CV tables and reports."""

import json
import logging
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, ValidationError

from ..errors import InputError, ParseError
from ..estimators.results import FitResult, FitResultRecord
from ..estimators.tuning import LambdaSelection
from ..model.params import Dataset, UnifiedModelParams
from .csv_io import read_matrix, read_vector, write_matrix

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class DatasetManifest(BaseModel):
    """manifest.json of a dataset directory."""

    n: int = Field(ge=1)
    p: int = Field(ge=1)
    seed: Optional[int] = None
    params: Optional[dict[str, Any]] = None


def _read_json(path: Path) -> Any:
    if not path.exists():
        raise ParseError(f"File not found: {path}", path=str(path))
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(
            f"{path.name}: invalid JSON ({e.msg})", path=str(path), row=e.lineno, column=e.colno
        )


def write_json(path: PathLike, payload: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2), encoding="utf-8")
    return path


class DatasetStore:
    """Read and write dataset directories (A.csv, X.csv, y.csv, manifest.json)."""

    def __init__(self, base_path: PathLike):
        """Initialize dataset store.

        Args:
            base_path: Dataset directory
        """
        self.base_path = Path(base_path)

    def save(
        self,
        data: Dataset,
        params: Optional[UnifiedModelParams] = None,
        seed: Optional[int] = None,
    ) -> Path:
        """Write the dataset and its manifest.

        Returns:
            Dataset directory
        """
        self.base_path.mkdir(parents=True, exist_ok=True)
        write_matrix(self.base_path / "A.csv", data.A)
        write_matrix(self.base_path / "X.csv", data.X)
        write_matrix(self.base_path / "y.csv", data.y)
        manifest = DatasetManifest(
            n=data.n,
            p=data.p,
            seed=seed,
            params=params.to_dict() if params is not None else None,
        )
        write_json(self.base_path / "manifest.json", manifest.model_dump())
        logger.info(f"Saved dataset n={data.n} p={data.p} to {self.base_path}")
        return self.base_path

    def load(self) -> tuple[Dataset, DatasetManifest]:
        """Read the dataset back.

        Raises:
            ParseError: On malformed CSV or manifest
            InputError: If A, X and y disagree in size
        """
        A = read_matrix(self.base_path / "A.csv")
        X = read_matrix(self.base_path / "X.csv")
        y = read_vector(self.base_path / "y.csv")
        manifest = self.load_manifest(required=False)
        if manifest is not None and (manifest.n != y.shape[0] or manifest.p != X.shape[1]):
            raise InputError(
                f"Manifest declares n={manifest.n}, p={manifest.p} but files hold "
                f"n={y.shape[0]}, p={X.shape[1]}"
            )
        data = Dataset(A=A, X=X, y=y)
        return data, manifest or DatasetManifest(n=data.n, p=data.p)

    def load_manifest(self, required: bool = True) -> Optional[DatasetManifest]:
        path = self.base_path / "manifest.json"
        if not path.exists() and not required:
            return None
        try:
            return DatasetManifest.model_validate(_read_json(path))
        except ValidationError as e:
            raise ParseError(f"{path.name}: {e}", path=str(path))

    def load_truth(self) -> UnifiedModelParams:
        """True parameters recorded by the simulator.

        Raises:
            InputError: If the manifest carries no parameters
        """
        manifest = self.load_manifest()
        if manifest.params is None:
            raise InputError(f"{self.base_path}/manifest.json records no true parameters")
        return UnifiedModelParams.from_dict(manifest.params)


def save_fit(path: PathLike, fit: FitResult) -> Path:
    """Write a FitResult as JSON."""
    return write_json(path, fit.to_record().model_dump(by_alias=True))


def load_fit(path: PathLike) -> FitResult:
    """Read a FitResult written by ``save_fit``."""
    path = Path(path)
    try:
        record = FitResultRecord.model_validate(_read_json(path))
    except ValidationError as e:
        raise ParseError(f"{path.name}: {e}", path=str(path))
    return FitResult.from_record(record)


def save_cv_table(path: PathLike, table: pd.DataFrame) -> Path:
    """Write the per-(lambda, fold) CV table."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    columns = ["lambda", "fold", "sse", "status"]
    table.to_csv(path, index=False, columns=columns, float_format="%.17g")
    return path


def save_selection(path: PathLike, selection: LambdaSelection) -> Path:
    """Write {lambda_min, method, grid, k_folds, cv_table} as JSON."""
    payload = {"lambda_min": selection.selected, **selection.model_dump(exclude={"selected"})}
    return write_json(path, payload)


def save_vectors(path: PathLike, **columns: np.ndarray) -> Path:
    """Named equal-length columns as a CSV with a header row."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(columns).to_csv(path, index=False, float_format="%.17g")
    return path
