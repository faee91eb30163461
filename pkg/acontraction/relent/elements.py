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
Module defining the shock context and the diagnostics of the weighted sublevel set.

"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from acontraction.exceptions import raise_acontraction_error
from acontraction.hugoniot.exceptions import ContinuationError
from acontraction.hugoniot.solver import ShockSolver
from acontraction.systems.elements import SystemDescriptor, check_admissible
from acontraction.systems.operations import eigenvalues, mirror_system

from .exceptions import ShockContextError, WeightWindowError

logger = logging.getLogger(__name__)

RH_TOL = 1e-8
WINDOW_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class ShockContext:  # pylint: disable=too-many-instance-attributes
    """A fixed extremal shock with its weights.

    The context is always expressed as a 1-shock ``(u_left, u_right, sigma)`` of
    ``system``. An n-shock of the configured system is stored through its mirror,
    where left and right states swap and the speed changes sign. The weights are
    ``a1 = 1 + C s0`` on the left and ``a2 = 1`` on the right.
    """

    system: SystemDescriptor
    base_system: SystemDescriptor
    family: int
    u_left: np.ndarray
    u_right: np.ndarray
    sigma: float
    s0: float
    C: float
    c1: Optional[float]
    basepoint: np.ndarray
    radius: float
    solver: ShockSolver

    @property
    def a1(self) -> float:
        return 1.0 + self.C * self.s0

    @property
    def a2(self) -> float:
        return 1.0

    @property
    def ratio(self) -> float:
        return self.a1 / self.a2

    @property
    def mirrored(self) -> bool:
        return self.system is not self.base_system

    def __post_init__(self):
        if not self.s0 > 0.0:
            raise_acontraction_error(
                f"Shock strength must be positive, got {self.s0}", ShockContextError
            )
        jump = self.system.flux_fn(self.u_right) - self.system.flux_fn(self.u_left)
        residual = np.linalg.norm(jump - self.sigma * (self.u_right - self.u_left))
        if residual > RH_TOL * (1.0 + np.linalg.norm(jump)):
            raise_acontraction_error(
                f"Rankine-Hugoniot residual {residual:.3e} exceeds tolerance",
                ShockContextError,
                state=self.u_right,
            )
        lam_left = eigenvalues(self.system, self.u_left)[0]
        lam_right = eigenvalues(self.system, self.u_right)[0]
        if not lam_right < self.sigma < lam_left:
            raise_acontraction_error(
                f"Shock violates the Liu criterion: {lam_right} < {self.sigma} < {lam_left} fails",
                ShockContextError,
            )
        if self.c1 is not None:
            lower = 1.0 + 0.5 * self.c1 * self.s0
            upper = 1.0 + 2.0 * self.c1 * self.s0
            if not lower - WINDOW_SLACK <= self.ratio <= upper + WINDOW_SLACK:
                raise_acontraction_error(
                    f"Weight ratio {self.ratio} outside the window [{lower}, {upper}]",
                    WeightWindowError,
                )

    @staticmethod
    def _weight(s0: float, C: Optional[float], ratio: Optional[float]) -> float:
        if (C is None) == (ratio is None):
            raise_acontraction_error("Exactly one of C and ratio must be given", WeightWindowError)
        if C is not None:
            return float(C)
        return (float(ratio) - 1.0) / s0

    @staticmethod
    def _effective(system: SystemDescriptor, family: int) -> SystemDescriptor:
        if family not in (1, system.dim):
            raise_acontraction_error(
                f"Family {family} is not extremal for '{system.name}'", ShockContextError
            )
        if family == system.dim and system.dim > 1:
            return mirror_system(system)
        return system

    @classmethod
    def from_basepoint(  # pylint: disable=too-many-arguments
        cls,
        system: SystemDescriptor,
        basepoint: Any,
        s0: float,
        C: Optional[float] = None,
        ratio: Optional[float] = None,
        family: int = 1,
        c1: Optional[float] = None,
        radius: Optional[float] = None,
    ) -> ShockContext:
        """Builds the shock of strength ``s0`` on the extremal curve issued from ``basepoint``.

        The basepoint is the left state of the (possibly mirrored) 1-shock.

        Raises:
            ShockContextError: If the curve cannot be traced or the shock is inadmissible.
            WeightWindowError: If the weight ratio lies outside its window.
        """
        if not s0 > 0.0:
            raise_acontraction_error(
                f"Shock strength must be positive, got {s0}", ShockContextError
            )
        effective = cls._effective(system, family)
        solver = ShockSolver(effective, basepoint, 1, ds_max=s0 / 50.0)
        try:
            point = solver.solve(s0)
        except ContinuationError as err:
            raise ShockContextError(f"Failed to trace the shock of strength {s0}") from err
        logger.debug("Shock context from basepoint: u_R=%s sigma=%s", point.state, point.speed)
        return cls(
            system=effective,
            base_system=system,
            family=family,
            u_left=solver.base.copy(),
            u_right=point.state,
            sigma=point.speed,
            s0=float(s0),
            C=cls._weight(s0, C, ratio),
            c1=c1,
            basepoint=solver.base.copy(),
            radius=float(radius) if radius is not None else max(4.0 * s0, 0.05),
            solver=solver,
        )

    @classmethod
    def from_states(  # pylint: disable=too-many-arguments
        cls,
        system: SystemDescriptor,
        u_left: Any,
        u_right: Any,
        sigma: Optional[float] = None,
        C: Optional[float] = None,
        ratio: Optional[float] = None,
        family: int = 1,
        c1: Optional[float] = None,
        radius: Optional[float] = None,
    ) -> ShockContext:
        """Builds a context from the states of a shock in the configured system.

        When ``sigma`` is omitted it is the least-squares Rankine-Hugoniot speed.
        """
        effective = cls._effective(system, family)
        u_left = check_admissible(system, u_left, batch=False)
        u_right = check_admissible(system, u_right, batch=False)
        jump = u_right - u_left
        s0 = float(np.linalg.norm(jump))
        if s0 == 0.0:
            raise_acontraction_error("Shock states coincide", ShockContextError)
        if sigma is None:
            sigma = float(jump @ (system.flux_fn(u_right) - system.flux_fn(u_left)) / (jump @ jump))
        if effective is not system:
            u_left, u_right, sigma = u_right, u_left, -sigma
        return cls(
            system=effective,
            base_system=system,
            family=family,
            u_left=u_left.copy(),
            u_right=u_right.copy(),
            sigma=float(sigma),
            s0=s0,
            C=cls._weight(s0, C, ratio),
            c1=c1,
            basepoint=u_left.copy(),
            radius=float(radius) if radius is not None else max(4.0 * s0, 0.05),
            solver=ShockSolver(effective, u_left, 1, ds_max=s0 / 50.0),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "system": self.base_system.name,
            "family": self.family,
            "mirrored": self.mirrored,
            "u_left": self.u_left.tolist(),
            "u_right": self.u_right.tolist(),
            "sigma": self.sigma,
            "s0": self.s0,
            "C": self.C,
            "ratio": self.ratio,
            "c1": self.c1,
        }


@dataclass(frozen=True)
class CStarEstimate:
    """Sampled bound on ``|q~| / |eta~|`` outside the weighted set where ``q~ <= 0``."""

    value: float
    n_contributing: int
    n_samples: int

    @property
    def empty(self) -> bool:
        return self.n_contributing == 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "n_contributing": self.n_contributing,
            "n_samples": self.n_samples,
            "empty": self.empty,
        }


@dataclass(frozen=True)
class PiDiagnostics:  # pylint: disable=too-many-instance-attributes
    """Sampled geometry of the weighted sublevel set of a shock context."""

    diameter: float
    min_normal: float
    max_depth_ratio: float
    normal_lipschitz: tuple[float, float]
    cstar: CStarEstimate
    n_rays: int
    truncated: bool
    C: float
    s0: float

    @property
    def diameter_times_c(self) -> float:
        return self.diameter * self.C

    @property
    def min_normal_over_s0(self) -> float:
        return self.min_normal / self.s0

    def to_dict(self) -> dict[str, Any]:
        return {
            "diameter": self.diameter,
            "diameter_times_C": self.diameter_times_c,
            "min_normal": self.min_normal,
            "min_normal_over_s0": self.min_normal_over_s0,
            "max_depth_ratio": self.max_depth_ratio,
            "normal_lipschitz": list(self.normal_lipschitz),
            "cstar": self.cstar.to_dict(),
            "n_rays": self.n_rays,
            "truncated": self.truncated,
            "C": self.C,
            "s0": self.s0,
        }

    def csv_rows(self) -> list[dict[str, Any]]:
        return [
            {
                "C": self.C,
                "s0": self.s0,
                "diameter": self.diameter,
                "min_normal": self.min_normal,
                "cstar": self.cstar.value,
            }
        ]
