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
Module defining the maximal shock issued from a state of the weighted set and
the maximal dissipation attached to it.

"""
from __future__ import annotations

import logging
from typing import Any, Optional

import numpy as np
from scipy.optimize import brentq

from acontraction.exceptions import VerificationError, raise_acontraction_error
from acontraction.hugoniot.elements import ShockPoint
from acontraction.hugoniot.exceptions import ContinuationError
from acontraction.hugoniot.solver import ShockSolver
from acontraction.relent.elements import ShockContext
from acontraction.relent.functionals import rel_entropy, tilde_eta
from acontraction.systems.elements import check_admissible
from acontraction.systems.operations import entropy_gradient, entropy_hessian, flux_jacobian

from .elements import MaximalShock
from .exceptions import PreconditionError, TruncationError
from .functionals import d_rh_values

logger = logging.getLogger(__name__)

MAX_DOUBLINGS = 60
SCAN_POINTS = 200
MAXIMALITY_TOL = 1e-12


def shock_solver(ctx: ShockContext, u: Any) -> ShockSolver:
    """Solver for the 1-shock curve issued from ``u`` in the context's system."""
    return ShockSolver(ctx.system, u, 1, ds_max=ctx.s0 / 20.0)


def _shock(ctx: ShockContext, solver: ShockSolver, s: float) -> ShockPoint:
    try:
        point = solver.solve(s)
    except ContinuationError as err:
        raise TruncationError(f"Shock curve from {solver.base} failed at s={s}") from err
    if not ctx.system.box.contains(point.state):
        raise_acontraction_error(
            f"Shock curve leaves the working box at s={s}", TruncationError, state=solver.base
        )
    return point


def maximal_shock(
    ctx: ShockContext, u: Any, solver: Optional[ShockSolver] = None
) -> MaximalShock:
    """Solves ``eta~(u) + eta(u|S(s)) = 0`` for the strength of the maximal shock from ``u``.

    The left-hand side increases strictly with s: the root is bracketed by doubling
    from the quadratic estimate, located by Brent's method and polished by one Newton
    step.

    Args:
        ctx: The shock context.
        u: A state of the weighted set.
        solver: Solver of the curve issued from ``u``, reused between calls.

    Raises:
        PreconditionError: If ``eta~(u) >= 0``.
        TruncationError: If the curve leaves the working box before the root.
    """
    sys = ctx.system
    u = check_admissible(sys, u, batch=False)
    eta_t = float(tilde_eta(ctx, u))
    if not eta_t < 0.0:
        raise_acontraction_error(
            f"State outside the weighted set, eta~ = {eta_t:.3e}", PreconditionError, state=u
        )
    solver = solver or shock_solver(ctx, u)

    def gap(s: float) -> float:
        return eta_t + float(rel_entropy(sys, u, _shock(ctx, solver, s).state))

    r = solver.basis.r(1)
    curvature = float(r @ entropy_hessian(sys, u) @ r)
    s_lo, s_hi = 0.0, 0.5 * np.sqrt(-2.0 * eta_t / curvature)
    value = gap(s_hi)
    for _ in range(MAX_DOUBLINGS):
        if value >= 0.0:
            break
        s_lo, s_hi = s_hi, 2.0 * s_hi
        value = gap(s_hi)
    else:
        raise_acontraction_error("Failed to bracket the maximal shock", TruncationError, state=u)

    s_star = brentq(gap, s_lo, s_hi, xtol=1e-15 * s_hi, rtol=1e-15)
    point = _shock(ctx, solver, s_star)
    residual = eta_t + float(rel_entropy(sys, u, point.state))
    d_state, _ = solver.tangent(point)
    slope = float((entropy_gradient(sys, point.state) - entropy_gradient(sys, u)) @ d_state)
    if slope > 0.0 and residual != 0.0:
        candidate = s_star - residual / slope
        if s_lo <= candidate <= s_hi:
            polished = _shock(ctx, solver, candidate)
            new_residual = eta_t + float(rel_entropy(sys, u, polished.state))
            if abs(new_residual) < abs(residual):
                s_star, point, residual = candidate, polished, new_residual

    logger.debug("Maximal shock from %s: s*=%s residual=%s", u, s_star, residual)
    return MaximalShock(
        u=u.copy(),
        u_plus=point.state,
        sigma=float(point.speed),
        s_star=float(s_star),
        residual=float(residual),
        bound_ratio=float(s_star / np.sqrt(-eta_t)),
    )


def d_rh_scan(
    ctx: ShockContext, u: Any, s_grid: Any, solver: Optional[ShockSolver] = None
) -> np.ndarray:
    """Dissipation of the 1-shocks ``(u, S(s), sigma(s))`` over a grid of strengths.

    Raises:
        TruncationError: If the curve leaves the working box inside the grid.
    """
    u = check_admissible(ctx.system, u, batch=False)
    solver = solver or shock_solver(ctx, u)
    points = [_shock(ctx, solver, s) for s in np.asarray(s_grid, dtype=float)]
    states = np.array([p.state for p in points])
    speeds = np.array([p.speed for p in points])
    return np.atleast_1d(d_rh_values(ctx, u, states, speeds))


def maximality_excess(
    ctx: ShockContext,
    shock: MaximalShock,
    n_points: int = SCAN_POINTS,
    solver: Optional[ShockSolver] = None,
) -> float:
    """Largest excess of the scanned dissipation over the maximal one, along ``[0, 1.5 s*]``.

    The scan stops at the working box when the curve leaves it first.
    """
    solver = solver or shock_solver(ctx, shock.u)
    value = float(d_rh_values(ctx, shock.u, shock.u_plus, shock.sigma))
    try:
        scan = d_rh_scan(ctx, shock.u, np.linspace(0.0, 1.5 * shock.s_star, n_points), solver)
    except TruncationError:
        scan = d_rh_scan(ctx, shock.u, np.linspace(0.0, shock.s_star, n_points), solver)
    return float(np.max(scan) - value)


def d_max(ctx: ShockContext, u: Any, verify_scan: bool = False) -> float:
    """Maximal dissipation over the 1-shocks issued from ``u``.

    Args:
        ctx: The shock context.
        u: A state of the weighted set.
        verify_scan: Also checks maximality against a dense scan of the curve.

    Raises:
        PreconditionError: If ``u`` is outside the weighted set.
        TruncationError: If the curve leaves the working box before the maximal shock.
        VerificationError: If the scan finds a larger dissipation.
    """
    u = check_admissible(ctx.system, u, batch=False)
    solver = shock_solver(ctx, u)
    shock = maximal_shock(ctx, u, solver)
    value = float(d_rh_values(ctx, shock.u, shock.u_plus, shock.sigma))
    if verify_scan:
        excess = maximality_excess(ctx, shock, solver=solver)
        if excess > MAXIMALITY_TOL * (1.0 + abs(value)):
            raise_acontraction_error(
                f"Shock scan exceeds the maximal dissipation by {excess:.3e}",
                VerificationError,
                state=u,
            )
    return value


def grad_d_max(
    ctx: ShockContext, u: Any, shock: Optional[MaximalShock] = None
) -> np.ndarray:
    """Analytic gradient of the maximal dissipation.

    Equals ``[a2 (grad eta(u+) - grad eta(u_R)) - a1 (grad eta(u) - grad eta(u_L))]
    (f'(u) - sigma I)`` at the maximal shock ``(u, u+, sigma)``.
    """
    sys = ctx.system
    u = check_admissible(sys, u, batch=False)
    shock = shock or maximal_shock(ctx, u)
    row = ctx.a2 * (
        entropy_gradient(sys, shock.u_plus) - entropy_gradient(sys, ctx.u_right)
    ) - ctx.a1 * (entropy_gradient(sys, u) - entropy_gradient(sys, ctx.u_left))
    return row @ (flux_jacobian(sys, u) - shock.sigma * np.eye(sys.dim))


def _default_step(ctx: ShockContext, h: Optional[float]) -> float:
    return float(h) if h is not None else 1e-4 * ctx.s0


def dmax_gradient_check(ctx: ShockContext, u: Any, h: Optional[float] = None) -> float:
    """Relative difference between the analytic gradient and central differences of D_max.

    Returns 0 when both gradients vanish.
    """
    u = check_admissible(ctx.system, u, batch=False)
    h = _default_step(ctx, h)
    analytic = grad_d_max(ctx, u)
    numeric = np.empty_like(u)
    for j in range(len(u)):
        step = np.zeros_like(u)
        step[j] = h
        numeric[j] = (d_max(ctx, u + step) - d_max(ctx, u - step)) / (2.0 * h)
    scale = max(float(np.linalg.norm(analytic)), float(np.linalg.norm(numeric)))
    if scale == 0.0:
        return 0.0
    return float(np.linalg.norm(analytic - numeric) / scale)


def hessian_d_max(ctx: ShockContext, u: Any, h: Optional[float] = None) -> np.ndarray:
    """Symmetrised central-difference Hessian of D_max, from its analytic gradient."""
    u = check_admissible(ctx.system, u, batch=False)
    h = _default_step(ctx, h)
    hess = np.empty((len(u), len(u)))
    for j in range(len(u)):
        step = np.zeros_like(u)
        step[j] = h
        hess[:, j] = (grad_d_max(ctx, u + step) - grad_d_max(ctx, u - step)) / (2.0 * h)
    return 0.5 * (hess + hess.T)
