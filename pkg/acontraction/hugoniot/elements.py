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
Module defining shock points and traced Hugoniot curves.

"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Any, Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from acontraction.systems.elements import SystemDescriptor
from acontraction.systems.operations import eigenvalues

if TYPE_CHECKING:
    from .solver import ShockSolver


@dataclass(frozen=True)
class ShockPoint:
    """A point of a Hugoniot curve at strength ``s = |state - base|``.

    ``direction`` is the unit vector ``(state - base) / s``, equal to the right
    eigenvector of the family at ``s = 0``.
    """

    s: float
    state: np.ndarray
    speed: float
    direction: np.ndarray


class ShockCurve:
    """An extremal-family Hugoniot curve traced by strength continuation from ``base``.

    Args:
        system: The system the curve belongs to.
        base: The base state u0.
        family: Family index, 1 or n.
        points: Nodes ordered by strictly increasing strength, starting at s = 0.
        solver: The solver that produced the nodes, reused for re-projection.
        exited: Whether tracing stopped because the curve left the working box.
        s_max: The requested strength.
    """

    def __init__(  # pylint: disable=too-many-arguments
        self,
        system: SystemDescriptor,
        base: np.ndarray,
        family: int,
        points: Sequence[ShockPoint],
        solver: ShockSolver,
        exited: bool = False,
        s_max: float = 0.0,
    ):
        self._system = system
        self._base = np.asarray(base, dtype=float)
        self._family = family
        self._points = list(points)
        self._solver = solver
        self._exited = exited
        self._s_max = s_max

    @property
    def system(self) -> SystemDescriptor:
        return self._system

    @property
    def base(self) -> np.ndarray:
        return self._base

    @property
    def family(self) -> int:
        return self._family

    @property
    def points(self) -> list[ShockPoint]:
        return self._points

    @property
    def solver(self) -> ShockSolver:
        return self._solver

    @property
    def exited(self) -> bool:
        return self._exited

    @property
    def s_max(self) -> float:
        return self._s_max

    @property
    def s(self) -> np.ndarray:
        return np.array([p.s for p in self._points])

    @property
    def states(self) -> np.ndarray:
        return np.array([p.state for p in self._points])

    @property
    def speeds(self) -> np.ndarray:
        return np.array([p.speed for p in self._points])

    @property
    def extent(self) -> float:
        """Largest traced strength; the exit strength when the curve left the box."""
        return float(self._points[-1].s)

    @cached_property
    def state_spline(self) -> CubicSpline:
        return CubicSpline(self.s, self.states, axis=0)

    @cached_property
    def speed_spline(self) -> CubicSpline:
        return CubicSpline(self.s, self.speeds)

    def liu_margins(self) -> tuple[np.ndarray, np.ndarray]:
        """Returns ``sigma - lambda_i(S)`` and ``lambda_i(u0) - sigma`` at every node."""
        index = self._family - 1
        lam_s = eigenvalues(self._system, self.states)[:, index]
        lam_0 = eigenvalues(self._system, self._base)[index]
        return self.speeds - lam_s, lam_0 - self.speeds

    def rh_residuals(self) -> np.ndarray:
        """Rankine-Hugoniot residuals ``|f(S) - f(u0) - sigma (S - u0)|`` at every node."""
        states = self.states
        jump = self._system.flux_fn(states) - self._system.flux_fn(self._base)
        return np.linalg.norm(jump - self.speeds[:, None] * (states - self._base), axis=-1)

    def to_dict(self) -> dict[str, Any]:
        return {
            "system": self._system.name,
            "base": self._base.tolist(),
            "family": self._family,
            "extent": self.extent,
            "exited": self._exited,
            "n_nodes": len(self._points),
        }

    def csv_rows(self) -> list[dict[str, Any]]:
        rows = []
        for point in self._points:
            row: dict[str, Any] = {"s": point.s}
            row.update({f"S{k}": float(x) for k, x in enumerate(point.state)})
            row["sigma"] = point.speed
            rows.append(row)
        return rows
