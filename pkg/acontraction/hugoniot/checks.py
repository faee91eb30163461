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
Module defining numerical checks of traced shock curves: small-strength asymptotics
and the entropy dissipation identity along a curve.

"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np
from scipy.integrate import quad, simpson

from acontraction.exceptions import raise_acontraction_error
from acontraction.relent.functionals import rel_entropy, rel_entropy_flux
from acontraction.systems.elements import SystemDescriptor
from acontraction.systems.operations import eigenvalues

from .elements import ShockCurve
from .exceptions import CurveRangeError, IntegrationError
from .solver import ShockSolver, shock_at, speed_derivative

logger = logging.getLogger(__name__)

SLOPE_THRESHOLD = 1.9
ROUNDING_FLOOR = 1e-13


@dataclass(frozen=True)
class AsymptoticsReport:
    """Log-log slopes of the speed and state defects of a shock curve at small strength.

    A slope is ``None`` when its defect never rises above the rounding floor, in which
    case the defect is reported as vacuously small.
    """

    system: str
    family: int
    strengths: tuple[float, ...]
    speed_defects: tuple[float, ...]
    state_defects: tuple[float, ...]
    speed_slope: Optional[float]
    state_slope: Optional[float]

    @property
    def speed_vacuous(self) -> bool:
        return self.speed_slope is None

    @property
    def state_vacuous(self) -> bool:
        return self.state_slope is None

    @property
    def passed(self) -> bool:
        return all(
            slope is None or slope >= SLOPE_THRESHOLD
            for slope in (self.speed_slope, self.state_slope)
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "system": self.system,
            "family": self.family,
            "speed_slope": self.speed_slope,
            "state_slope": self.state_slope,
            "speed_vacuous": self.speed_vacuous,
            "state_vacuous": self.state_vacuous,
            "passed": self.passed,
        }

    def csv_rows(self) -> list[dict[str, Any]]:
        return [
            {"s": s, "speed_defect": e_sigma, "state_defect": e_state}
            for s, e_sigma, e_state in zip(self.strengths, self.speed_defects, self.state_defects)
        ]


def _fit_slope(strengths: np.ndarray, defects: np.ndarray, floor: float) -> Optional[float]:
    mask = defects > floor
    if np.count_nonzero(mask) < 2:
        return None
    return float(np.polyfit(np.log(strengths[mask]), np.log(defects[mask]), 1)[0])


def check_asymptotics(
    system: SystemDescriptor,
    base: Any,
    family: int = 1,
    s_min: float = 1e-4,
    s_max: float = 1e-2,
    n_points: int = 9,
) -> AsymptoticsReport:
    """Fits the decay of ``|sigma(s) - (lambda(u0) + lambda(S(s))) / 2|`` and of
    ``|S(s) - u0 - s r(u0)|`` on a logarithmic strength grid.

    Both defects are second order in ``s`` for a genuinely nonlinear family.
    """
    solver = ShockSolver(system, base, family, ds_max=s_max / 50.0)
    index = family - 1
    lam0 = solver.basis.lam(family)
    r0 = solver.basis.r(family)
    scale = 1.0 + np.linalg.norm(solver.base) + abs(lam0)

    strengths = np.geomspace(s_min, s_max, n_points)
    speed_defects, state_defects = [], []
    for s in strengths:
        point = solver.solve(s)
        lam_s = eigenvalues(system, point.state)[index]
        speed_defects.append(abs(point.speed - 0.5 * (lam0 + lam_s)))
        state_defects.append(float(np.linalg.norm(point.state - solver.base - s * r0)))

    floor = ROUNDING_FLOOR * scale
    report = AsymptoticsReport(
        system=system.name,
        family=family,
        strengths=tuple(float(s) for s in strengths),
        speed_defects=tuple(float(e) for e in speed_defects),
        state_defects=tuple(float(e) for e in state_defects),
        speed_slope=_fit_slope(strengths, np.array(speed_defects), floor),
        state_slope=_fit_slope(strengths, np.array(state_defects), floor),
    )
    logger.info(
        "Asymptotic slopes for '%s': speed %s, state %s",
        system.name,
        report.speed_slope,
        report.state_slope,
    )
    return report


def _boundary_terms(curve: ShockCurve, v: np.ndarray, s: float) -> float:
    sys = curve.system
    point = shock_at(curve, s)
    sigma = point.speed
    return (
        rel_entropy_flux(sys, point.state, v)
        - sigma * rel_entropy(sys, point.state, v)
        - rel_entropy_flux(sys, curve.base, v)
        + sigma * rel_entropy(sys, curve.base, v)
    )


def _integrand(curve: ShockCurve, method: str):
    sys = curve.system

    if method == "spline":

        def spline_integrand(t: float) -> float:
            if t <= 0.0:
                return 0.0
            state = curve.state_spline(t)
            return speed_derivative(curve, t) * rel_entropy(sys, curve.base, state)

        return spline_integrand

    if method == "tangent":

        def tangent_integrand(t: float) -> float:
            if t <= 0.0:
                return 0.0
            point = curve.solver.solve(t)
            _, dsigma = curve.solver.tangent(point)
            return dsigma * rel_entropy(sys, curve.base, point.state)

        return tangent_integrand

    raise ValueError(f"Unknown integrand method '{method}'")


def lax_identity_residual(
    curve: ShockCurve,
    v: Any,
    s: float,
    tol: float = 1e-11,
    method: str = "spline",
) -> float:
    """Absolute residual of the entropy dissipation identity along a shock curve.

    The identity reads ``q(S;v) - sigma eta(S|v) - q(u0;v) + sigma eta(u0|v)
    = int_0^s sigma'(t) eta(u0|S(t)) dt``, evaluated with adaptive quadrature.

    Args:
        curve: A traced shock curve.
        v: Any reference state.
        s: Strength within the traced range.
        tol: Absolute tolerance of the quadrature.
        method: "spline" differentiates the interpolated speeds, "tangent" uses the
            implicit tangent of the Rankine-Hugoniot system.

    Raises:
        CurveRangeError: If ``s`` is outside the curve.
        IntegrationError: If the quadrature error estimate exceeds the tolerance.
    """
    v = np.asarray(v, dtype=float)
    if s < 0.0 or s > curve.extent * (1.0 + 1e-14):
        raise_acontraction_error(f"Strength {s} outside the traced curve", CurveRangeError)
    if s == 0.0:
        return 0.0
    lhs = _boundary_terms(curve, v, s)
    value, abserr = quad(_integrand(curve, method), 0.0, s, epsabs=tol, epsrel=0.0, limit=200)
    if abserr > 10.0 * tol:
        raise_acontraction_error(
            f"Quadrature error estimate {abserr:.3e} exceeds tolerance {tol:.1e}",
            IntegrationError,
        )
    return abs(lhs - value)


def simpson_integral(curve: ShockCurve, s: float, panels: int, method: str = "tangent") -> float:
    """Composite Simpson approximation of the dissipation integral with ``panels`` panels."""
    grid = np.linspace(0.0, s, 2 * panels + 1)
    integrand = _integrand(curve, method)
    return float(simpson(np.array([integrand(t) for t in grid]), x=grid))


def lax_quadrature_orders(
    curve: ShockCurve,
    s: float,
    panels: Sequence[int] = (2, 4, 8, 16),
) -> list[float]:
    """Observed convergence orders of composite Simpson on the dissipation integral.

    The reference value is the adaptive quadrature of the same smooth integrand. Order
    ``k`` compares the errors at ``panels[k]`` and ``panels[k + 1]``.
    """
    reference, _ = quad(_integrand(curve, "tangent"), 0.0, s, epsabs=1e-15, epsrel=1e-13, limit=200)
    errors = [abs(simpson_integral(curve, s, n) - reference) for n in panels]
    orders = []
    for (n0, e0), (n1, e1) in zip(zip(panels, errors), zip(panels[1:], errors[1:])):
        orders.append(float(np.log(e0 / e1) / np.log(n1 / n0)) if e1 > 0.0 else float("inf"))
    logger.debug("Simpson errors %s give orders %s", errors, orders)
    return orders
