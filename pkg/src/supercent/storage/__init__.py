"""File formats for datasets, fits and tables."""

from .artifacts import (
    DatasetManifest,
    DatasetStore,
    load_fit,
    save_cv_table,
    save_fit,
    save_selection,
    save_vectors,
    write_json,
)
from .csv_io import read_matrix, read_vector, write_matrix

__all__ = [
    "DatasetManifest",
    "DatasetStore",
    "load_fit",
    "read_matrix",
    "read_vector",
    "save_cv_table",
    "save_fit",
    "save_selection",
    "save_vectors",
    "write_json",
    "write_matrix",
]
