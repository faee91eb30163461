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
Module defining the shift: the velocity functional, its Filippov selection at a
discrete interface, the constants it depends on, and the weighted pseudo-distance.

"""
from __future__ import annotations

import logging
from typing import Any, Optional, Union

import numpy as np

from acontraction.dissipation.functionals import d_rh_values
from acontraction.exceptions import raise_acontraction_error
from acontraction.relent.elements import ShockContext
from acontraction.relent.functionals import rel_entropy, tilde_eta
from acontraction.relent.geometry import estimate_cstar
from acontraction.systems.operations import eigenvalues
from acontraction.systems.regions import in_working_region

from .elements import FilippovStep, FVField, ShiftConstants
from .exceptions import ShiftDomainError

logger = logging.getLogger(__name__)

CASE_BY_SIGNS = {(True, True): 1, (True, False): 2, (False, True): 3, (False, False): 4}


def _ball_samples(ctx: ShockContext, n: int, rng: np.random.Generator) -> np.ndarray:
    dim = ctx.system.dim
    dirs = rng.normal(size=(n, dim))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    states = ctx.basepoint + ctx.radius * rng.uniform(size=(n, 1)) ** (1.0 / dim) * dirs
    return states[in_working_region(ctx.system, states)]


def compute_constants(
    ctx: ShockContext,
    n_samples: int = 10_000,
    seed: int = 0,
    L: Optional[float] = None,
    cstar: Optional[float] = None,
) -> ShiftConstants:
    """Numerical constants of the velocity functional over the working ball.

    ``alpha1`` is the midpoint between the largest first and the smallest second
    characteristic speed sampled in the ball; for scalar laws it is the largest speed
    plus ``0.1 L``. ``L`` defaults to ``1.1`` times the largest sampled speed and
    ``cstar`` to the sampled estimate with a factor-2 margin.

    Raises:
        ShiftDomainError: If the first two characteristic speeds overlap in the ball.
    """
    rng = np.random.default_rng(seed)
    lam = eigenvalues(ctx.system, _ball_samples(ctx, n_samples, rng))
    if L is None:
        L = 1.1 * float(np.max(np.abs(lam)))
    if cstar is None:
        cstar = estimate_cstar(ctx, n_samples, seed).value
    sup_first = float(np.max(lam[:, 0]))
    if ctx.system.dim == 1:
        alpha1 = sup_first + 0.1 * L
    else:
        inf_second = float(np.min(lam[:, 1]))
        if not sup_first < inf_second:
            raise_acontraction_error(
                f"First and second speeds overlap in the working ball: {sup_first} >= {inf_second}",
                ShiftDomainError,
            )
        alpha1 = 0.5 * (sup_first + inf_second)
    constants = ShiftConstants.from_values(alpha1, L, cstar)
    logger.info("Shift constants %s", constants.to_dict())
    return constants


def velocity_functional(
    ctx: ShockContext, u: Any, constants: ShiftConstants
) -> Union[float, np.ndarray]:
    """Velocity ``lambda_1(u) - (cstar + 2 L) 1{eta~(u) > 0}``.

    ``lambda_1`` is replaced by ``L`` outside the working region of the system, that is
    outside its working box or its admissible set.
    """
    arr = np.asarray(u, dtype=float)
    flat = arr.reshape(-1, arr.shape[-1])
    inside = in_working_region(ctx.system, flat)
    lam = np.full(len(flat), constants.L)
    if np.any(inside):
        lam[inside] = eigenvalues(ctx.system, flat[inside])[:, 0]
    value = lam - constants.jump * (np.atleast_1d(tilde_eta(ctx, flat)) > 0.0)
    return float(value[0]) if arr.ndim == 1 else value.reshape(arr.shape[:-1])


def _candidate_speed(
    ctx: ShockContext, u_minus: np.ndarray, u_plus: np.ndarray, jump: float, trace_tol: float
) -> float:
    if jump > trace_tol:
        diff = u_plus - u_minus
        flux_jump = ctx.system.flux_fn(u_plus) - ctx.system.flux_fn(u_minus)
        return float(diff @ flux_jump / (diff @ diff))
    return 0.5 * float(eigenvalues(ctx.system, u_minus)[0] + eigenvalues(ctx.system, u_plus)[0])


def filippov_step(  # pylint: disable=too-many-arguments,too-many-locals
    ctx: ShockContext,
    field: FVField,
    h: float,
    dt: float,
    constants: ShiftConstants,
    trace_offset: int = 1,
    trace_tol: Optional[float] = None,
) -> FilippovStep:
    """Advances the shift by one step of the Filippov flow of the velocity functional.

    The traces ``u-`` and ``u+`` are the cells ``trace_offset`` cells left and right
    of the cell containing ``h``. With ``s_c`` the least-squares Rankine-Hugoniot
    speed of the traces (the mean first speed when they differ by less than
    ``trace_tol``), the speed is ``s_c`` on a sliding mode ``V(u-) > s_c > V(u+)``,
    ``V(u+)`` when both velocities are at least ``s_c``, ``V(u-)`` when both are at
    most ``s_c`` and their mean otherwise. It is then clamped into
    ``[-lambda_hat / 2, alpha1]``.

    Raises:
        ShiftDomainError: If the traces around ``h`` fall outside the grid.
    """
    grid = field.grid
    if trace_offset < 1:
        raise ShiftDomainError("Trace offset must be at least one cell")
    trace_tol = 0.1 * ctx.s0 if trace_tol is None else float(trace_tol)
    j = grid.cell_of(h)
    lo, hi = j - trace_offset, j + trace_offset
    if not grid.x_min <= h <= grid.x_max or lo < 0 or hi >= grid.n_cells:
        raise_acontraction_error(
            f"Shift h={h} left the grid interior at t={field.time}", ShiftDomainError
        )
    u_minus, u_plus = field.states[lo], field.states[hi]
    v_minus = float(velocity_functional(ctx, u_minus, constants))
    v_plus = float(velocity_functional(ctx, u_plus, constants))
    jump = float(np.linalg.norm(u_plus - u_minus))
    s_c = _candidate_speed(ctx, u_minus, u_plus, jump, trace_tol)

    sliding = v_minus > s_c > v_plus
    if sliding:
        selected = s_c
    elif v_minus >= s_c and v_plus >= s_c:
        selected = v_plus
    elif v_minus <= s_c and v_plus <= s_c:
        selected = v_minus
    else:
        selected = 0.5 * (v_minus + v_plus)
    h_dot = float(np.clip(selected, -0.5 * constants.lambda_hat, constants.alpha1))

    outside = (bool(tilde_eta(ctx, u_minus) > 0.0), bool(tilde_eta(ctx, u_plus) > 0.0))
    return FilippovStep(
        t=field.time,
        h=float(h),
        h_next=float(h + dt * h_dot),
        h_dot=h_dot,
        selected=float(selected),
        v_minus=v_minus,
        v_plus=v_plus,
        u_minus=u_minus.copy(),
        u_plus=u_plus.copy(),
        case=CASE_BY_SIGNS[outside],
        dissipation=float(d_rh_values(ctx, u_minus, u_plus, h_dot)),
        sliding=sliding,
        clamped=h_dot != selected,
        jump=jump,
    )


def pseudo_distance(ctx: ShockContext, field: FVField, h: float) -> float:
    """Weighted relative entropy of the field with respect to the shock located at ``h``.

    Integrates ``a1 eta(u|u_L)`` left of ``h`` and ``a2 eta(u|u_R)`` right of it with
    the midpoint rule, splitting the cell containing ``h`` exactly. Values of ``h``
    beyond the grid are clipped to its ends.
    """
    grid = field.grid
    sys = ctx.system
    left_len = np.clip(h - grid.edges[:-1], 0.0, grid.dx)
    right_len = grid.dx - left_len
    left = np.atleast_1d(rel_entropy(sys, field.states, ctx.u_left))
    right = np.atleast_1d(rel_entropy(sys, field.states, ctx.u_right))
    return float(ctx.a1 * left @ left_len + ctx.a2 * right @ right_len)
