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
Module defining the stage reports and the bundle written by the command-line driver.

"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from acontraction.dissipation.elements import NegativityReport
from acontraction.relent.elements import PiDiagnostics
from acontraction.serialization import Report, to_builtin


@dataclass(frozen=True)
class StageFailure:
    """A stage that stopped before producing its report."""

    stage: str
    error: str
    kind: str

    @property
    def passed(self) -> bool:
        return False

    def to_dict(self) -> dict[str, Any]:
        return {"stage": self.stage, "error": self.error, "kind": self.kind, "passed": False}


@dataclass(frozen=True, eq=False)
class DissipationReport:
    """Negativity sweep of the configured shock, with the weighted-set geometry.

    grid holds one row per (C, s0) cell when the grid sweep is enabled.
    """

    negativity: NegativityReport
    geometry: Optional[PiDiagnostics] = None
    grid: list[dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.negativity.passed and all(row["passed"] for row in self.grid)

    def to_dict(self) -> dict[str, Any]:
        return to_builtin(
            {
                "negativity": self.negativity.to_dict(),
                "geometry": self.geometry.to_dict() if self.geometry else None,
                "grid": list(self.grid),
                "passed": self.passed,
            }
        )

    def csv_rows(self) -> list[dict[str, Any]]:
        if self.grid:
            return [to_builtin(row) for row in self.grid]
        return self.negativity.csv_rows()


@dataclass(frozen=True, eq=False)
class StageReport:
    """Outcome of one stage, stamped with the tool version and the config hash."""

    stage: str
    exit_code: int
    payload: Report
    version: str
    config_hash: str

    @property
    def passed(self) -> bool:
        return self.exit_code == 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "stage": self.stage,
            "version": self.version,
            "config_hash": self.config_hash,
            "exit_code": self.exit_code,
            "passed": self.passed,
            "report": self.payload.to_dict(),
        }

    def csv_rows(self) -> list[dict[str, Any]]:
        rows_fn = getattr(self.payload, "csv_rows", None)
        return rows_fn() if rows_fn is not None else []


@dataclass(frozen=True, eq=False)
class ReportBundle:
    """All stages of a run; it passes iff every enabled stage passes."""

    version: str
    config_hash: str
    stages: list[StageReport]

    @property
    def passed(self) -> bool:
        return all(stage.passed for stage in self.stages)

    @property
    def exit_code(self) -> int:
        return max((stage.exit_code for stage in self.stages), default=0)

    def to_dict(self) -> dict[str, Any]:
        return {
            "version": self.version,
            "config_hash": self.config_hash,
            "passed": self.passed,
            "exit_code": self.exit_code,
            "stages": {stage.stage: stage.passed for stage in self.stages},
        }

    def csv_rows(self) -> list[dict[str, Any]]:
        return [
            {"stage": stage.stage, "exit_code": stage.exit_code, "passed": stage.passed}
            for stage in self.stages
        ]
