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
Module for exporting verification reports to JSON and CSV files.

"""
from __future__ import annotations

import csv
import json
import logging
import math
import os
import pathlib
from typing import Any, Optional, Protocol

import numpy as np

from .exceptions import AContractionError


class Report(Protocol):  # pylint: disable=too-few-public-methods
    """Structural type of every report object accepted by :func:`dumps`."""

    def to_dict(self) -> dict[str, Any]: ...


def to_builtin(value: Any) -> Any:
    """Converts numpy scalars and arrays to JSON-safe builtins.

    Non-finite floats become ``None`` so that the written JSON stays strict.
    """
    if isinstance(value, dict):
        return {str(key): to_builtin(val) for key, val in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_builtin(val) for val in value]
    if isinstance(value, np.ndarray):
        return to_builtin(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def _format_cell(value: Any) -> Any:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return value


def dumps(
    report: Report,
    output_dir: Optional[str] = None,
    name: str = "report",
    fmt: str = "json",
) -> str:
    """
    Saves a report to a JSON file, or its tabular rows to a CSV file.

    Args:
        report: Any object exposing ``to_dict()`` (and ``csv_rows()`` for CSV output).
        output_dir (Optional[str]): The directory where the file will be saved.
            If not provided, defaults to the current working directory.
        name (str): File name without extension.
        fmt (str): Either "json" or "csv".

    Returns:
        The path of the written file.

    Raises:
        AContractionError: If the format is unknown, the report has no rows,
            or the target directory cannot be created.
    """
    if fmt not in ("json", "csv"):
        raise AContractionError(f"Unsupported output format '{fmt}'")

    file_dir = output_dir if output_dir else str(pathlib.Path.cwd())

    try:
        os.makedirs(file_dir, exist_ok=True)
    except OSError as err:
        raise AContractionError("Failed to create target directory") from err

    path = os.path.join(file_dir, f"{name}.{fmt}")

    if fmt == "json":
        with open(path, "w", encoding="utf-8") as file:
            json.dump(to_builtin(report.to_dict()), file, indent=2, sort_keys=True)
            file.write("\n")
    else:
        rows_fn = getattr(report, "csv_rows", None)
        if rows_fn is None:
            raise AContractionError(f"{type(report).__name__} has no tabular content")
        rows = [to_builtin(row) for row in rows_fn()]
        fieldnames: list[str] = []
        for row in rows:
            fieldnames.extend(key for key in row if key not in fieldnames)
        with open(path, "w", encoding="utf-8", newline="") as file:
            writer = csv.DictWriter(file, fieldnames=fieldnames, delimiter=",")
            writer.writeheader()
            for row in rows:
                writer.writerow({key: _format_cell(val) for key, val in row.items()})

    logging.info("Saved to %s", path)
    return path
