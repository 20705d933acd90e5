"""Tests for on-disk artifacts."""

import json

import numpy as np
import pandas as pd
import pytest

from supercent.errors import InputError, ParseError
from supercent.estimators import LambdaSelection, fit_supercent, fit_two_stage
from supercent.storage import (
    DatasetStore,
    load_fit,
    read_matrix,
    read_vector,
    save_cv_table,
    save_fit,
    save_selection,
    save_vectors,
    write_matrix,
)
from supercent.utils.config import SolverSettings


def test_matrix_round_trip_is_exact(tmp_path, rng):
    """Test that written floats read back bit for bit."""
    M = rng.standard_normal((4, 3)) * 1e-7 + np.pi
    path = write_matrix(tmp_path / "m.csv", M)
    np.testing.assert_array_equal(read_matrix(path), M)
    z = np.array([0.1, -2.5e-300, 1e300])
    np.testing.assert_array_equal(read_vector(write_matrix(tmp_path / "z.csv", z)), z)


def test_non_numeric_cell(tmp_path):
    """Test the reported position of a bad cell."""
    path = tmp_path / "bad.csv"
    path.write_text("1,2,3\n4,abc,6\n")
    with pytest.raises(ParseError) as info:
        read_matrix(path)
    assert (info.value.row, info.value.column) == (2, 2)


def test_ragged_rows(tmp_path):
    path = tmp_path / "ragged.csv"
    path.write_text("1,2,3\n4,5\n")
    with pytest.raises(ParseError) as info:
        read_matrix(path)
    assert info.value.row == 2


def test_missing_and_empty_files(tmp_path):
    with pytest.raises(ParseError):
        read_matrix(tmp_path / "absent.csv")
    (tmp_path / "empty.csv").write_text("")
    with pytest.raises(ParseError):
        read_matrix(tmp_path / "empty.csv")
    (tmp_path / "inf.csv").write_text("1,inf\n")
    with pytest.raises(ParseError):
        read_matrix(tmp_path / "inf.csv")


def test_dataset_round_trip(dataset_dir, noisy):
    """Test that a saved dataset and its truth load back unchanged."""
    params, data = noisy
    store = DatasetStore(dataset_dir)
    loaded, manifest = store.load()
    np.testing.assert_array_equal(loaded.A, data.A)
    np.testing.assert_array_equal(loaded.X, data.X)
    np.testing.assert_array_equal(loaded.y, data.y)
    assert (manifest.n, manifest.p, manifest.seed) == (data.n, data.p, 8)
    truth = store.load_truth()
    np.testing.assert_array_equal(truth.u, params.u)
    assert truth.sigma_a == params.sigma_a


def test_dataset_without_truth(tmp_path, noisy):
    _, data = noisy
    store = DatasetStore(tmp_path / "plain")
    store.save(data)
    with pytest.raises(InputError):
        store.load_truth()


def test_manifest_mismatch(dataset_dir):
    manifest = json.loads((dataset_dir / "manifest.json").read_text())
    manifest["n"] = 3
    (dataset_dir / "manifest.json").write_text(json.dumps(manifest))
    with pytest.raises(InputError):
        DatasetStore(dataset_dir).load()


def test_broken_manifest(dataset_dir):
    (dataset_dir / "manifest.json").write_text("{not json")
    with pytest.raises(ParseError) as info:
        DatasetStore(dataset_dir).load_manifest()
    assert info.value.row == 1


def test_fit_round_trip(tmp_path, noisy):
    """Test that a fit survives JSON, lambda key included."""
    _, data = noisy
    fit = fit_supercent(data, SolverSettings(**{"lambda": 2.5}))
    path = save_fit(tmp_path / "fit.json", fit)
    assert json.loads(path.read_text())["lambda"] == 2.5
    again = load_fit(path)
    np.testing.assert_array_equal(again.u_hat, fit.u_hat)
    assert again.beta_u_hat == fit.beta_u_hat
    assert again.lambda_ == 2.5
    assert again.method == "supercent"

    ts = load_fit(save_fit(tmp_path / "ts.json", fit_two_stage(data)))
    assert ts.lambda_ is None


def test_load_fit_rejects_bad_schema(tmp_path):
    path = tmp_path / "fit.json"
    path.write_text(json.dumps({"method": "magic"}))
    with pytest.raises(ParseError):
        load_fit(path)


def test_selection_and_cv_table(tmp_path):
    """Test the selection JSON keys and the CV table columns."""
    selection = LambdaSelection(
        method="cv", grid=[1.0, 2.0], k_folds=3, cv_table=[(1.0, 5.0), (2.0, 4.0)], selected=2.0
    )
    payload = json.loads(save_selection(tmp_path / "selection.json", selection).read_text())
    assert payload["lambda_min"] == 2.0
    assert "selected" not in payload
    assert payload["grid"] == [1.0, 2.0]

    table = pd.DataFrame(
        {"lambda": [1.0, 2.0], "fold": [0, 0], "sse": [5.0, 4.0], "status": ["ok", "ok"]}
    )
    table["converged"] = True
    frame = pd.read_csv(save_cv_table(tmp_path / "cv.csv", table))
    assert list(frame.columns) == ["lambda", "fold", "sse", "status"]


def test_save_vectors(tmp_path):
    path = save_vectors(tmp_path / "c.csv", u_star=np.array([1.0, 2.0]), v_star=np.zeros(2))
    frame = pd.read_csv(path)
    assert list(frame.columns) == ["u_star", "v_star"]
    assert frame["u_star"].tolist() == [1.0, 2.0]
