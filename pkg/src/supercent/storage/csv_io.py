"""Headerless numeric CSV files.

Values are written in the shortest decimal form that round-trips (``repr`` of a
float) with a dot separator, so reading a written file returns the identical array.
Reading goes cell by cell through the csv module rather than pandas so that a bad
cell is reported with its 1-based row and column.
"""

import csv
import math
from pathlib import Path
from typing import Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..errors import ParseError

PathLike = Union[str, Path]


def write_matrix(path: PathLike, values: ArrayLike) -> Path:
    """Write a 1-D (one value per row) or 2-D array."""
    path = Path(path)
    M = np.asarray(values, dtype=float)
    if M.ndim == 1:
        M = M[:, None]
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        for row in M:
            writer.writerow([repr(float(x)) for x in row])
    return path


def read_matrix(path: PathLike, columns: int | None = None) -> NDArray[np.float64]:
    """Read a headerless rectangular numeric CSV.

    Args:
        path: File to read
        columns: Required column count, if known

    Returns:
        2-D float array

    Raises:
        ParseError: Naming the 1-based row and column of the first bad cell, or the row
            whose width differs
    """
    path = Path(path)
    if not path.exists():
        raise ParseError(f"File not found: {path}", path=str(path))
    rows: list[list[float]] = []
    width = columns
    with open(path, newline="", encoding="utf-8") as f:
        for i, record in enumerate(csv.reader(f), start=1):
            if not record or all(not cell.strip() for cell in record):
                continue
            if width is None:
                width = len(record)
            if len(record) != width:
                raise ParseError(
                    f"{path.name}: row {i} has {len(record)} columns, expected {width}",
                    path=str(path),
                    row=i,
                    column=min(len(record), width) + 1,
                )
            parsed = []
            for j, cell in enumerate(record, start=1):
                try:
                    value = float(cell.strip())
                except ValueError:
                    raise ParseError(
                        f"{path.name}: non-numeric cell {cell!r} at row {i}, column {j}",
                        path=str(path),
                        row=i,
                        column=j,
                    )
                if not math.isfinite(value):
                    raise ParseError(
                        f"{path.name}: non-finite value at row {i}, column {j}",
                        path=str(path),
                        row=i,
                        column=j,
                    )
                parsed.append(value)
            rows.append(parsed)
    if not rows:
        raise ParseError(f"{path.name} is empty", path=str(path))
    return np.array(rows, dtype=float)


def read_vector(path: PathLike) -> NDArray[np.float64]:
    """Read a single-column CSV as a 1-D array."""
    return read_matrix(path, columns=1)[:, 0]
