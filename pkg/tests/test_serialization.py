# Copyright (C) 2024 acontraction developers
#
# This file is part of acontraction
#
# Acontraction is free software released under the GNU General Public License v3
# or later. You can redistribute and/or modify it under the terms of the GPL v3.
# See the LICENSE file in the project root or <https://www.gnu.org/licenses/gpl-3.0.html>.
#
# THERE IS NO WARRANTY for acontraction, as per Section 15 of the GPL v3.

"""
Unit tests for the export module

"""
import csv
import json
import os

import numpy as np
import pytest

from acontraction import AContractionError
from acontraction.serialization import dumps, to_builtin

# pylint: disable=too-few-public-methods


class MockReport:
    """Mock class for a report with tabular rows"""

    def to_dict(self):
        return {"max": np.float64(-0.5), "argmax": np.array([1.0, 2.0]), "nan": float("nan")}

    def csv_rows(self):
        return [{"u0": 0.1, "d": np.float64(-1.0)}, {"u0": 0.2, "d": None, "extra": 3}]


class MockSummary:
    """Mock class for a report without rows"""

    def to_dict(self):
        return {"passed": np.bool_(True)}


def test_to_builtin_converts_numpy():
    """Test conversion of numpy values and non-finite floats"""
    value = to_builtin({"a": np.arange(2), "b": np.float32(0.5), "c": (np.inf, 1)})
    assert value == {"a": [0, 1], "b": 0.5, "c": [None, 1]}
    assert isinstance(value["a"][0], int)


def test_dumps_default_directory(tmp_path, monkeypatch):
    """Test saving a report in the working directory"""
    monkeypatch.chdir(tmp_path)
    path = dumps(MockReport())
    assert os.path.basename(path) == "report.json"
    with open(path, encoding="utf-8") as file:
        data = json.load(file)
    assert data == {"argmax": [1.0, 2.0], "max": -0.5, "nan": None}


def test_dumps_csv_custom_directory(tmp_path):
    """Test saving rows as CSV in a new directory"""
    custom_dir = tmp_path / "custom"
    path = dumps(MockReport(), output_dir=str(custom_dir), name="rows", fmt="csv")
    assert path == str(custom_dir / "rows.csv")
    with open(path, encoding="utf-8", newline="") as file:
        rows = list(csv.DictReader(file))
    assert rows[0] == {"u0": "0.1", "d": "-1.0", "extra": ""}
    assert rows[1] == {"u0": "0.2", "d": "", "extra": "3"}


def test_dumps_is_byte_stable(tmp_path):
    """Test that writing the same report twice gives the same bytes"""
    first = dumps(MockReport(), output_dir=str(tmp_path / "a"))
    second = dumps(MockReport(), output_dir=str(tmp_path / "b"))
    with open(first, "rb") as a, open(second, "rb") as b:
        assert a.read() == b.read()


def test_dumps_without_rows(tmp_path):
    """Test that CSV output needs rows"""
    with pytest.raises(AContractionError, match="no tabular content"):
        dumps(MockSummary(), output_dir=str(tmp_path), fmt="csv")


def test_dumps_unknown_format(tmp_path):
    """Test that an unknown format is rejected"""
    with pytest.raises(AContractionError, match="Unsupported output format"):
        dumps(MockSummary(), output_dir=str(tmp_path), fmt="yaml")


def test_dumps_with_exception(tmp_path):
    """Test exception handling"""
    blocker = tmp_path / "file"
    blocker.write_text("", encoding="utf-8")
    with pytest.raises(AContractionError, match="target directory"):
        dumps(MockSummary(), output_dir=str(blocker / "sub"))
