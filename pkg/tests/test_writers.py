"""CSV tables, metadata sidecars and signal readers"""

import json

import numpy as np
import pandas as pd
import pytest

from fractal_fidelity import __version__
from fractal_fidelity.storage.writers import (
    read_signal,
    sidecar_path,
    write_matrix,
    write_series,
    write_table,
)
from fractal_fidelity.utils.errors import InvalidConfigError


def test_series_survives_text_round_trip(tmp_path, rng):
    values = rng.uniform(size=257)
    path = write_series(values, tmp_path / "series.csv", {"note": "test"})
    np.testing.assert_array_equal(read_signal(path), values)
    assert path.read_text(encoding="utf-8").splitlines()[0] == "t,F"


def test_sidecar_records_provenance(tmp_path):
    path = write_table(pd.DataFrame({"L": [1, 2], "M": [4.0, 2.0]}), tmp_path / "boxcount.csv", {"D": 1.0})
    assert sidecar_path(path).name == "boxcount.meta.json"
    meta = json.loads(sidecar_path(path).read_text(encoding="utf-8"))
    assert meta["version"] == __version__
    assert meta["columns"] == ["L", "M"]
    assert meta["rows"] == 2
    assert meta["D"] == 1.0


def test_matrix_header_holds_column_coordinates(tmp_path):
    path = write_matrix(np.eye(2), tmp_path / "grid.csv", [-4.0, 4.0])
    assert path.read_text(encoding="utf-8").splitlines()[0] == "-4,4"


def test_signal_column_selection(tmp_path):
    path = tmp_path / "signal.csv"
    pd.DataFrame({"time": [0, 1, 2], "amplitude": [0.5, 0.25, 0.125]}).to_csv(path, index=False)
    np.testing.assert_array_equal(read_signal(path), [0.5, 0.25, 0.125])
    np.testing.assert_array_equal(read_signal(path, "time"), [0.0, 1.0, 2.0])
    with pytest.raises(InvalidConfigError):
        read_signal(path, "F")


def test_non_numeric_signal_is_rejected(tmp_path):
    path = tmp_path / "signal.csv"
    path.write_text("value\n1.0\nabc\n", encoding="utf-8")
    with pytest.raises(InvalidConfigError):
        read_signal(path)
