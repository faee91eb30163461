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
Module defining the result types of the dissipation functionals and their sweeps.

"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Optional

import numpy as np

from acontraction.serialization import to_builtin


@dataclass(frozen=True, eq=False)
class MaximalShock:
    """The 1-shock from ``u`` of strength ``s_star`` with ``eta(u|u_plus) = -eta~(u)``.

    ``bound_ratio`` is ``s_star / sqrt(-eta~(u))``, which stays bounded over the
    weighted set.
    """

    u: np.ndarray
    u_plus: np.ndarray
    sigma: float
    s_star: float
    residual: float
    bound_ratio: float

    def to_dict(self) -> dict[str, Any]:
        return to_builtin(
            {
                "u": self.u,
                "u_plus": self.u_plus,
                "sigma": self.sigma,
                "s_star": self.s_star,
                "residual": self.residual,
                "bound_ratio": self.bound_ratio,
            }
        )


@dataclass(frozen=True, eq=False)
class DcontMaximum:  # pylint: disable=too-many-instance-attributes
    """Location of the maximum of the continuous dissipation on the weighted set.

    Attributes:
        u_star: The maximiser, on the boundary.
        value: Continuous dissipation at ``u_star``.
        eta_residual: ``|eta~(u_star)|``.
        normal_angle: Angle in radians between the normal and the first left eigenvector.
        outward: ``r_1(u_star) . nu(u_star)``, positive when ``r_1`` points outwards.
        n_starts: Number of optimizer starts.
        spread: Largest distance between starts that reached the maximal value.
        unique: Whether ``spread`` stays below ``1e-6`` times the diameter.
        diameter: Sampled diameter of the weighted set.
    """

    u_star: np.ndarray
    value: float
    eta_residual: float
    normal_angle: float
    outward: float
    n_starts: int
    spread: float
    unique: bool
    diameter: float

    @property
    def passed(self) -> bool:
        return (
            self.eta_residual < 1e-10
            and self.normal_angle < 1e-6
            and self.outward > 0.0
            and self.unique
        )

    def to_dict(self) -> dict[str, Any]:
        return to_builtin(
            {
                "u_star": self.u_star,
                "value": self.value,
                "eta_residual": self.eta_residual,
                "normal_angle": self.normal_angle,
                "outward": self.outward,
                "n_starts": self.n_starts,
                "spread": self.spread,
                "unique": self.unique,
                "diameter": self.diameter,
                "passed": self.passed,
            }
        )


@dataclass(frozen=True, eq=False)
class NegativityReport:  # pylint: disable=too-many-instance-attributes
    """Sampled negativity of the continuous and maximal dissipation over the weighted set."""

    context: Mapping[str, Any]
    n_samples: int
    n_dmax: int
    max_dcont: float
    argmax_dcont: np.ndarray
    max_dmax: float
    argmax_dmax: np.ndarray
    dmax_at_left: float
    tol_zero: float
    k_fit: float
    u0: Optional[np.ndarray]
    dcont_u0: Optional[float]
    scan_violations: int
    truncated: bool
    checks: Mapping[str, bool]
    dcont_max: Optional[DcontMaximum] = None
    failures: list[str] = field(default_factory=list)
    rows: list[dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failed(self) -> list[str]:
        return [key for key, ok in self.checks.items() if not ok]

    def to_dict(self) -> dict[str, Any]:
        return to_builtin(
            {
                "context": dict(self.context),
                "n_samples": self.n_samples,
                "n_dmax": self.n_dmax,
                "max_dcont": self.max_dcont,
                "argmax_dcont": self.argmax_dcont,
                "max_dmax": self.max_dmax,
                "argmax_dmax": self.argmax_dmax,
                "dmax_at_left": self.dmax_at_left,
                "tol_zero": self.tol_zero,
                "K": self.k_fit,
                "u0": self.u0,
                "dcont_u0": self.dcont_u0,
                "scan_violations": self.scan_violations,
                "truncated": self.truncated,
                "checks": dict(self.checks),
                "dcont_max": self.dcont_max.to_dict() if self.dcont_max else None,
                "failures": list(self.failures),
                "passed": self.passed,
            }
        )

    def csv_rows(self) -> list[dict[str, Any]]:
        return [to_builtin(row) for row in self.rows]


@dataclass(frozen=True, eq=False)
class ScalingCell:  # pylint: disable=too-many-instance-attributes
    """Scaling quantities of one ``(C, s0)`` cell; ``error`` is set when the cell failed."""

    C: float
    s0: float
    max_dcont: float = float("nan")
    diameter_times_c: float = float("nan")
    ustar_gap: float = float("nan")
    hessian_eigenvalues: tuple[float, ...] = ()
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    @property
    def hessian_negative(self) -> bool:
        return bool(self.hessian_eigenvalues) and max(self.hessian_eigenvalues) < 0.0

    def to_dict(self) -> dict[str, Any]:
        return to_builtin(
            {
                "C": self.C,
                "s0": self.s0,
                "max_dcont": self.max_dcont,
                "diameter_times_C": self.diameter_times_c,
                "ustar_gap": self.ustar_gap,
                "hessian_eigenvalues": list(self.hessian_eigenvalues),
                "hessian_negative": self.hessian_negative,
                "error": self.error,
            }
        )


@dataclass(frozen=True, eq=False)
class ScalingFit:  # pylint: disable=too-many-instance-attributes
    """Scaling study over a grid of weights and shock strengths.

    ``slopes`` maps each C to the fitted log-log slope of ``-max D_cont`` against s0.
    ``diameter_spread`` is the largest ratio of ``diam * C`` across C at a fixed s0 and
    ``ustar_spread`` the ratio of the largest to the smallest ``|u* - u0| C / s0``.
    """

    system: str
    family: int
    cells: list[ScalingCell]
    slopes: Mapping[float, float]
    slope_window: tuple[float, float]
    diameter_spread: float
    ustar_spread: float
    checks: Mapping[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failed(self) -> list[str]:
        return [key for key, ok in self.checks.items() if not ok]

    def to_dict(self) -> dict[str, Any]:
        return to_builtin(
            {
                "system": self.system,
                "family": self.family,
                "cells": [cell.to_dict() for cell in self.cells],
                "slopes": {repr(C): slope for C, slope in self.slopes.items()},
                "slope_window": list(self.slope_window),
                "diameter_spread": self.diameter_spread,
                "ustar_spread": self.ustar_spread,
                "checks": dict(self.checks),
                "passed": self.passed,
            }
        )

    def csv_rows(self) -> list[dict[str, Any]]:
        rows = []
        for cell in self.cells:
            row = cell.to_dict()
            row["hessian_eigenvalues"] = " ".join(repr(x) for x in row["hessian_eigenvalues"])
            row["slope"] = to_builtin(self.slopes.get(cell.C, float("nan")))
            rows.append(row)
        return rows
