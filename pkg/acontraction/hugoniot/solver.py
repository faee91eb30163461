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
Module defining the Rankine-Hugoniot solver and the strength continuation of
extremal shock curves.

The unknowns at strength ``s`` are the unit direction ``w`` and the speed
``sigma``, with ``S = u0 + s w``. Dividing the jump condition by ``s`` gives the
desingularised system ``(f(u0 + s w) - f(u0)) / s = sigma w``, ``|w| = 1``, which stays
regular as ``s -> 0`` where it reduces to the eigenproblem of ``f'(u0)``.

"""
from __future__ import annotations

import bisect
import logging
from typing import Any, Optional

import numpy as np

from acontraction.exceptions import raise_acontraction_error
from acontraction.systems.elements import SystemDescriptor, check_admissible
from acontraction.systems.operations import eigenstructure, flux_jacobian

from .elements import ShockCurve, ShockPoint
from .exceptions import ContinuationError, CurveRangeError

logger = logging.getLogger(__name__)

NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 25
MAX_HALVINGS = 6
SMALL_STRENGTH = 1e-3

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(6)
_NODES = 0.5 * (_NODES + 1.0)
_WEIGHTS = 0.5 * _WEIGHTS


class ShockSolver:
    """Solves for the shock of a given strength on an extremal Hugoniot curve.

    Converged nodes are cached; each solve continues from the closest cached node
    below the requested strength with a tangent predictor and halves the step on
    Newton failure.

    Args:
        system: The system.
        base: The base state u0.
        family: Family index, 1 or n.
        ds_max: Largest continuation step.
    """

    def __init__(
        self,
        system: SystemDescriptor,
        base: Any,
        family: int = 1,
        ds_max: float = 5e-3,
    ):
        if family not in (1, system.dim):
            raise_acontraction_error(
                f"Only extremal families are supported, got family {family}", ContinuationError
            )
        if not ds_max > 0.0:
            raise_acontraction_error("Continuation step must be positive", ContinuationError)
        self._system = system
        self._base = check_admissible(system, base, batch=False).copy()
        self._family = family
        self._index = family - 1
        self._ds_max = float(ds_max)
        self._basis = eigenstructure(system, self._base)
        self._flux0 = system.flux_fn(self._base)
        self._keys: list[float] = [0.0]
        self._nodes: list[tuple[np.ndarray, float]] = [
            (self._basis.r(family).copy(), self._basis.lam(family))
        ]

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
    def basis(self):
        return self._basis

    def _secant(self, s: float, w: np.ndarray) -> np.ndarray:
        if s <= SMALL_STRENGTH * (1.0 + np.linalg.norm(self._base)):
            pts = self._base + (s * _NODES)[:, None] * w
            jac = flux_jacobian(self._system, pts)
            return np.einsum("k,kij,j->i", _WEIGHTS, jac, w)
        return (self._system.flux_fn(self._base + s * w) - self._flux0) / s

    def _bordered(self, s: float, w: np.ndarray, sigma: float) -> tuple[np.ndarray, np.ndarray]:
        n = self._system.dim
        jac = flux_jacobian(self._system, self._base + s * w)
        mat = np.zeros((n + 1, n + 1))
        mat[:n, :n] = jac - sigma * np.eye(n)
        mat[:n, n] = -w
        mat[n, :n] = w
        return mat, jac

    def _newton(self, s: float, w: np.ndarray, sigma: float) -> Optional[tuple[np.ndarray, float]]:
        w = np.array(w, dtype=float)
        for _ in range(NEWTON_MAX_ITER):
            state = self._base + s * w
            if not self._system.admissible_fn(state):
                return None
            residual = np.append(self._secant(s, w) - sigma * w, 0.5 * (w @ w - 1.0))
            mat, _ = self._bordered(s, w, sigma)
            try:
                delta = np.linalg.solve(mat, -residual)
            except np.linalg.LinAlgError:
                return None
            if not np.all(np.isfinite(delta)):
                return None
            w = w + delta[:-1]
            sigma = sigma + float(delta[-1])
            if np.linalg.norm(delta) <= NEWTON_TOL * (1.0 + abs(sigma)):
                return w / np.linalg.norm(w), sigma
        return None

    def _derivative(self, s: float, w: np.ndarray, sigma: float) -> tuple[np.ndarray, float]:
        if s == 0.0:
            return np.zeros_like(w), 0.5 * float(self._basis.nonlinearity[self._index])
        mat, jac = self._bordered(s, w, sigma)
        rhs = np.append(-(jac - sigma * np.eye(len(w))) @ w / s, 0.0)
        sol = np.linalg.solve(mat, rhs)
        return sol[:-1], float(sol[-1])

    def _remember(self, s: float, w: np.ndarray, sigma: float) -> None:
        pos = bisect.bisect_left(self._keys, s)
        if pos < len(self._keys) and self._keys[pos] == s:
            self._nodes[pos] = (w, sigma)
            return
        self._keys.insert(pos, s)
        self._nodes.insert(pos, (w, sigma))

    def solve(self, s: float) -> ShockPoint:
        """Returns the shock of strength ``s``.

        Raises:
            CurveRangeError: If ``s`` is negative or not finite.
            ContinuationError: If Newton fails after halving the step down to ds_max / 64.
        """
        s = float(s)
        if not np.isfinite(s) or s < 0.0:
            raise_acontraction_error(f"Invalid shock strength {s}", CurveRangeError)
        pos = bisect.bisect_right(self._keys, s) - 1
        s_c = self._keys[pos]
        w_c, sigma_c = self._nodes[pos]
        while s_c < s:
            step = min(self._ds_max, s - s_c)
            floor = step / 2**MAX_HALVINGS
            dw, dsigma = self._derivative(s_c, w_c, sigma_c)
            while True:
                target = s_c + step if step < s - s_c else s
                out = self._newton(target, w_c + step * dw, sigma_c + step * dsigma)
                if out is not None:
                    break
                step *= 0.5
                if step < floor:
                    raise_acontraction_error(
                        f"Newton continuation stalled at strength {s_c + step:.6e} "
                        f"from base {self._base}",
                        ContinuationError,
                    )
            s_c = target
            w_c, sigma_c = out
            self._remember(s_c, w_c, sigma_c)
        return ShockPoint(s=s, state=self._base + s * w_c, speed=sigma_c, direction=w_c.copy())

    def project(self, s: float, w: np.ndarray, sigma: float) -> ShockPoint:
        """Newton re-projection onto the Hugoniot locus at fixed strength from a guess."""
        out = self._newton(s, np.asarray(w, dtype=float), float(sigma))
        if out is None:
            return self.solve(s)
        w, sigma = out
        return ShockPoint(s=s, state=self._base + s * w, speed=sigma, direction=w)

    def tangent(self, point: ShockPoint) -> tuple[np.ndarray, float]:
        """Returns ``(dS/ds, dsigma/ds)`` at a point by implicit differentiation."""
        dw, dsigma = self._derivative(point.s, point.direction, point.speed)
        return point.direction + point.s * dw, dsigma


def trace_shock_curve(
    system: SystemDescriptor,
    base: Any,
    family: int = 1,
    s_max: float = 0.2,
    ds: Optional[float] = None,
) -> ShockCurve:
    """Traces the extremal shock curve from ``base`` on a uniform strength grid.

    Args:
        system: The system.
        base: The base state u0, inside the working box.
        family: Family index, 1 or n.
        s_max: Largest strength.
        ds: Node spacing, ``s_max / 400`` by default.

    Returns:
        The traced curve. Tracing stops early, with ``exited`` set, when a node leaves
        the working box.

    Raises:
        ContinuationError: If Newton fails; the error carries the partial curve.
    """
    if not s_max > 0.0:
        raise_acontraction_error("Curve length must be positive", CurveRangeError)
    ds = float(ds) if ds is not None else s_max / 400.0
    if not ds > 0.0:
        raise_acontraction_error("Curve step must be positive", CurveRangeError)

    solver = ShockSolver(system, base, family, ds_max=ds)
    points = [solver.solve(0.0)]
    exited = False
    k = 1
    while points[-1].s < s_max:
        s = min(k * ds, s_max)
        try:
            point = solver.solve(s)
        except ContinuationError as err:
            partial = ShockCurve(system, solver.base, family, points, solver, False, s_max)
            raise ContinuationError(str(err), partial=partial) from err
        if not system.box.contains(point.state):
            exited = True
            break
        logger.debug("Visiting shock node s=%s sigma=%s", s, point.speed)
        points.append(point)
        k += 1

    if exited:
        logger.info("Shock curve from %s left the working box at s=%s", base, points[-1].s)
    return ShockCurve(system, solver.base, family, points, solver, exited, s_max)


def shock_at(curve: ShockCurve, s: float) -> ShockPoint:
    """Shock of strength ``s`` on a traced curve.

    Nodes are returned as stored; between nodes the cubic interpolant is re-projected
    onto the Rankine-Hugoniot locus at fixed strength.

    Raises:
        CurveRangeError: If ``s`` lies outside ``[0, curve.extent]``.
    """
    s = float(s)
    extent = curve.extent
    slack = 1e-14 * (1.0 + extent)
    if not np.isfinite(s) or s < -slack or s > extent + slack:
        raise_acontraction_error(
            f"Strength {s} outside the traced range [0, {extent}]", CurveRangeError
        )
    s = min(max(s, 0.0), extent)
    nodes = curve.s
    pos = int(np.argmin(np.abs(nodes - s)))
    if abs(nodes[pos] - s) <= slack:
        return curve.points[pos]
    guess = curve.state_spline(s) - curve.base
    return curve.solver.project(s, guess / np.linalg.norm(guess), float(curve.speed_spline(s)))


def speed_derivative(curve: ShockCurve, s: float) -> float:
    """Derivative of the shock speed along the curve, from the cubic spline of the nodes."""
    if len(curve.points) < 2:
        return 0.5 * float(curve.solver.basis.nonlinearity[curve.family - 1])
    return float(curve.speed_spline(s, 1))
