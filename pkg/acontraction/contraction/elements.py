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
Module defining the grid, field, shift and run types of the contraction harness.

"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Any, Mapping, Optional

import numpy as np

from acontraction.exceptions import ConfigError
from acontraction.serialization import to_builtin

SCHEMES = ("rusanov", "muscl")
CASES = (1, 2, 3, 4)


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid of ``n_cells`` cells on ``[x_min, x_max]``."""

    x_min: float
    x_max: float
    n_cells: int

    def __post_init__(self):
        if not self.x_max > self.x_min:
            raise ConfigError(f"Empty grid interval [{self.x_min}, {self.x_max}]")
        if self.n_cells < 4:
            raise ConfigError(f"Grid needs at least 4 cells, got {self.n_cells}")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_cells

    @property
    def length(self) -> float:
        return self.x_max - self.x_min

    @property
    def edges(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_cells + 1)

    @property
    def centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.n_cells) + 0.5) * self.dx

    def cell_of(self, x: float) -> int:
        """Index of the cell containing ``x``; the right edge belongs to the last cell."""
        return int(min(max(np.floor((x - self.x_min) / self.dx), 0), self.n_cells - 1))

    def to_dict(self) -> dict[str, Any]:
        return {"x_min": self.x_min, "x_max": self.x_max, "n_cells": self.n_cells}


@dataclass(frozen=True, eq=False)
class FVField:
    """Cell averages of a finite-volume solution at one time.

    ``entropy_residual`` is the largest cell entropy residual of the step that
    produced the field, scaled by the time step, and ``flagged`` tells whether it
    exceeded the tolerance.
    """

    grid: GridSpec
    states: np.ndarray
    time: float = 0.0
    cfl: float = 0.45
    scheme: str = "rusanov"
    entropy_residual: float = 0.0
    flagged: bool = False

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ConfigError(f"Unknown scheme '{self.scheme}', expected one of {SCHEMES}")
        if not 0.0 < self.cfl <= 1.0:
            raise ConfigError(f"CFL number must lie in (0, 1], got {self.cfl}")
        if self.states.ndim != 2 or len(self.states) != self.grid.n_cells:
            raise ConfigError(f"States of shape {self.states.shape} do not match the grid")

    def evolve(self, states: np.ndarray, dt: float, residual: float, flagged: bool) -> FVField:
        return replace(
            self,
            states=states,
            time=self.time + dt,
            entropy_residual=residual,
            flagged=flagged,
        )


@dataclass(frozen=True)
class ShiftConstants:
    """Constants of the velocity functional.

    Attributes:
        alpha1: Upper bound of the shift speed, between the first two characteristic speeds.
        L: Bound of the wave speeds.
        cstar: Bound on ``|q~| / eta~`` outside the weighted set.
        lambda_hat: ``2 (cstar + 3 L)``; the shift speed stays above ``-lambda_hat / 2``.
    """

    alpha1: float
    L: float
    cstar: float
    lambda_hat: float

    def __post_init__(self):
        if not self.L > 0.0 or self.cstar < 0.0:
            raise ConfigError("Shift constants need L > 0 and cstar >= 0")
        if not np.isclose(self.lambda_hat, 2.0 * (self.cstar + 3.0 * self.L)):
            raise ConfigError("lambda_hat must equal 2 (cstar + 3 L)")

    @classmethod
    def from_values(cls, alpha1: float, L: float, cstar: float) -> ShiftConstants:
        return cls(float(alpha1), float(L), float(cstar), 2.0 * (float(cstar) + 3.0 * float(L)))

    @property
    def jump(self) -> float:
        """Drop ``cstar + 2 L`` of the velocity outside the weighted set."""
        return self.cstar + 2.0 * self.L

    def to_dict(self) -> dict[str, Any]:
        return {
            "alpha1": self.alpha1,
            "L": self.L,
            "cstar": self.cstar,
            "lambda_hat": self.lambda_hat,
        }


@dataclass(frozen=True, eq=False)
class FilippovStep:  # pylint: disable=too-many-instance-attributes
    """One step of the shift.

    ``h_dot`` is the clamped speed; ``selected`` the Filippov speed before clamping.
    """

    t: float
    h: float
    h_next: float
    h_dot: float
    selected: float
    v_minus: float
    v_plus: float
    u_minus: np.ndarray
    u_plus: np.ndarray
    case: int
    dissipation: float
    sliding: bool
    clamped: bool
    jump: float

    @property
    def contained(self) -> bool:
        """Whether the selected speed lies between the one-sided velocities."""
        lo, hi = sorted((self.v_minus, self.v_plus))
        slack = 1e-12 * (1.0 + abs(lo) + abs(hi))
        return lo - slack <= self.selected <= hi + slack


@dataclass
class ShiftPath:
    """Trajectory of the shift, accumulated step by step."""

    steps: list[FilippovStep] = field(default_factory=list)

    def append(self, step: FilippovStep) -> None:
        self.steps.append(step)

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.steps])

    @property
    def h(self) -> np.ndarray:
        return np.array([s.h for s in self.steps])

    @property
    def h_dot(self) -> np.ndarray:
        return np.array([s.h_dot for s in self.steps])

    @property
    def cases(self) -> list[int]:
        return [s.case for s in self.steps]

    @property
    def dissipation(self) -> np.ndarray:
        return np.array([s.dissipation for s in self.steps])

    def case_counts(self) -> dict[str, int]:
        counts = Counter(self.cases)
        return {f"case{k}": counts.get(k, 0) for k in CASES}

    def chatter(self) -> float:
        """Fraction of steps whose case differs from the previous step."""
        cases = self.cases
        if len(cases) < 2:
            return 0.0
        return sum(a != b for a, b in zip(cases, cases[1:])) / (len(cases) - 1)

    def lipschitz(self) -> float:
        """Largest ``|h_dot|``."""
        return float(np.max(np.abs(self.h_dot))) if self.steps else 0.0


@dataclass(frozen=True, eq=False)
class ContractionRun:  # pylint: disable=too-many-instance-attributes
    """A finite-volume solution co-evolved with its shift, and the pseudo-distance along it.

    ``energies[k]`` is the pseudo-distance at ``times[k]``, with ``times[0] = 0``.
    ``k_tol`` is the measured drift constant and ``k_tol_allowed`` the configured one.
    ``dissipation_max`` is the largest interface dissipation of a step and
    ``dissipation_tol`` the largest one allowed.
    """

    context: Mapping[str, Any]
    constants: ShiftConstants
    grid: GridSpec
    path: ShiftPath
    times: np.ndarray
    energies: np.ndarray
    k_tol: float
    k_tol_allowed: float
    case2_violations: int
    dissipation_max: float
    flagged_steps: int
    clamps: int
    checks: Mapping[str, bool]
    terminated: Optional[str] = None
    snapshots: list[tuple[float, np.ndarray]] = field(default_factory=list)
    final: Optional[np.ndarray] = None
    dissipation_tol: float = 0.0

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failed(self) -> list[str]:
        return [key for key, ok in self.checks.items() if not ok]

    def to_dict(self) -> dict[str, Any]:
        return to_builtin(
            {
                "context": dict(self.context),
                "constants": self.constants.to_dict(),
                "grid": self.grid.to_dict(),
                "n_steps": len(self.path),
                "t_end": self.times[-1] if len(self.times) else 0.0,
                "E0": self.energies[0] if len(self.energies) else None,
                "E_end": self.energies[-1] if len(self.energies) else None,
                "E_max": np.max(self.energies) if len(self.energies) else None,
                "K_tol": self.k_tol,
                "K_tol_allowed": self.k_tol_allowed,
                "cases": self.path.case_counts(),
                "case2_violations": self.case2_violations,
                "chatter": self.path.chatter(),
                "dissipation_max": self.dissipation_max,
                "dissipation_tol": self.dissipation_tol,
                "lipschitz": self.path.lipschitz(),
                "flagged_steps": self.flagged_steps,
                "clamps": self.clamps,
                "terminated": self.terminated,
                "checks": dict(self.checks),
                "passed": self.passed,
            }
        )

    def csv_rows(self) -> list[dict[str, Any]]:
        return [
            to_builtin(
                {
                    "t": step.t,
                    "h": step.h,
                    "h_dot": step.h_dot,
                    "E": energy,
                    "case": step.case,
                    "dissipation": step.dissipation,
                }
            )
            for step, energy in zip(self.path.steps, self.energies[:-1])
        ]

    def snapshot_rows(self) -> list[dict[str, Any]]:
        rows = []
        centers = self.grid.centers
        for t, states in self.snapshots:
            for x, u in zip(centers, states):
                row = {"t": t, "x": x}
                row.update({f"u{i}": ui for i, ui in enumerate(u)})
                rows.append(to_builtin(row))
        return rows
