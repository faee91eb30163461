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
Module defining the driver that co-evolves a finite-volume solution and its shift.

"""
from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from acontraction.exceptions import ConfigError, raise_acontraction_error
from acontraction.relent.elements import ShockContext

from .elements import ContractionRun, FVField, ShiftConstants
from .exceptions import BlowUpError, ShiftDomainError
from .monitor import ContractionMonitor
from .scheme import TOL_ENTROPY, fv_step, level_set_position, stable_dt
from .shift import filippov_step, pseudo_distance

logger = logging.getLogger(__name__)


def default_k_tol(ctx: ShockContext) -> float:
    """Allowed drift constant ``100 s0^2`` of the pseudo-distance."""
    return 100.0 * ctx.s0**2


def _check_box(ctx: ShockContext, field: FVField) -> None:
    inside = ctx.system.box.contains(field.states)
    if not np.all(inside):
        bad = int(np.argmin(inside))
        raise_acontraction_error(
            f"Cell {bad} left the working box at t={field.time:.6e}",
            BlowUpError,
            state=field.states[bad],
        )


def run_contraction(  # pylint: disable=too-many-arguments,too-many-locals
    ctx: ShockContext,
    ic: FVField,
    t_end: float,
    constants: ShiftConstants,
    h0: Optional[float] = None,
    trace_offset: int = 1,
    trace_tol: Optional[float] = None,
    k_tol: Optional[float] = None,
    tol_entropy: float = TOL_ENTROPY,
    snapshot_every: int = 0,
    dissipation_tol: Optional[float] = None,
    expect_decay: bool = False,
) -> ContractionRun:
    """Co-evolves a solution and its shift and tracks the pseudo-distance.

    The time step is ``cfl dx / (max |lambda| + lambda_hat / 2)``, so the shift crosses
    at most one cell per step. The run stops early, and reports it, when the shift
    leaves the grid interior.

    Args:
        ctx: The shock the solution is compared with.
        ic: Initial data, in the working box.
        t_end: Final time.
        constants: Constants of the velocity functional.
        h0: Initial shift; the halfway level set of the first component by default.
        trace_offset: Distance in cells between the shift and its traces.
        trace_tol: Trace jump below which steps are treated as continuous, ``0.1 s0`` by default.
        k_tol: Allowed drift constant, :func:`default_k_tol` by default.
        tol_entropy: Relative tolerance of the cell entropy residual.
        snapshot_every: Keep the field every this many steps; 0 keeps none.
        dissipation_tol: Largest interface dissipation allowed at a step, ``k_tol dx`` by
            default, the rate at which the pseudo-distance may drift.
        expect_decay: Also require the final pseudo-distance to lie below the initial one.

    Raises:
        BlowUpError: If the solution leaves the admissible region or the working box.
    """
    if not t_end > 0.0:
        raise ConfigError(f"Final time must be positive, got {t_end}")
    sys = ctx.system
    _check_box(ctx, ic)
    h = float(h0) if h0 is not None else level_set_position(ic, ctx.u_left, ctx.u_right)
    trace_tol = 0.1 * ctx.s0 if trace_tol is None else float(trace_tol)
    k_tol = default_k_tol(ctx) if k_tol is None else float(k_tol)
    if dissipation_tol is None:
        dissipation_tol = k_tol * ic.grid.dx

    monitor = ContractionMonitor(
        ctx,
        constants,
        k_tol,
        trace_tol,
        float(dissipation_tol),
        snapshot_every=snapshot_every,
        expect_decay=expect_decay,
    )
    field = ic
    monitor.visit_initial(field, pseudo_distance(ctx, field, h))
    logger.info("Running to t=%s on %s cells from h=%s", t_end, ic.grid.n_cells, h)
    while field.time < t_end * (1.0 - 1e-12):
        dt = min(stable_dt(sys, field, 0.5 * constants.lambda_hat), t_end - field.time)
        try:
            step = filippov_step(ctx, field, h, dt, constants, trace_offset, trace_tol)
        except ShiftDomainError as err:
            monitor.visit_termination(str(err))
            break
        field = fv_step(sys, field, dt, tol_entropy)
        _check_box(ctx, field)
        h = step.h_next
        monitor.visit_step(step, field, pseudo_distance(ctx, field, h))
    return monitor.finalize()
