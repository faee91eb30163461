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
Module defining the entropy dissipation functionals of continuous interface
values and of Rankine-Hugoniot discontinuities.

"""
from __future__ import annotations

from typing import Any, Union

import numpy as np

from acontraction.exceptions import raise_acontraction_error
from acontraction.relent.elements import ShockContext
from acontraction.relent.functionals import rel_entropy, rel_entropy_flux, tilde_eta, tilde_q
from acontraction.systems.elements import as_state
from acontraction.systems.operations import eigenvalues

from .exceptions import InconsistentShockError

Scalar = Union[float, np.ndarray]

RH_TOLERANCE = 1e-8


def _lambda1(ctx: ShockContext, u: np.ndarray) -> Scalar:
    return eigenvalues(ctx.system, u)[..., 0]


def _scalar(value: Any, batch: bool) -> Scalar:
    return value if batch else float(value)


def d_cont(ctx: ShockContext, u: Any) -> Scalar:
    """Dissipation of a continuous interface value, ``-q~(u) + lambda_1(u) eta~(u)``.

    Args:
        ctx: The shock context.
        u: A state or a batch of states.

    Returns:
        A float for a single state, an array for a batch.
    """
    arr = as_state(ctx.system, u, batch=True)
    value = -tilde_q(ctx, arr) + _lambda1(ctx, arr) * tilde_eta(ctx, arr)
    return _scalar(value, arr.ndim > 1)


def d_left(ctx: ShockContext, u: Any) -> Scalar:
    """Left part ``-q(u;u_L) + lambda_1(u) eta(u|u_L)`` of the continuous dissipation."""
    arr = as_state(ctx.system, u, batch=True)
    sys = ctx.system
    value = -rel_entropy_flux(sys, arr, ctx.u_left) + _lambda1(ctx, arr) * rel_entropy(
        sys, arr, ctx.u_left
    )
    return _scalar(value, arr.ndim > 1)


def d_right(ctx: ShockContext, u: Any) -> Scalar:
    """Right part ``q(u;u_R) - lambda_1(u) eta(u|u_R)`` of the continuous dissipation."""
    arr = as_state(ctx.system, u, batch=True)
    sys = ctx.system
    value = rel_entropy_flux(sys, arr, ctx.u_right) - _lambda1(ctx, arr) * rel_entropy(
        sys, arr, ctx.u_right
    )
    return _scalar(value, arr.ndim > 1)


def rh_residual(ctx: ShockContext, u_minus: Any, u_plus: Any, sigma: float) -> float:
    """Relative Rankine-Hugoniot residual of a discontinuity ``(u_minus, u_plus, sigma)``."""
    sys = ctx.system
    jump = sys.flux_fn(np.asarray(u_plus, dtype=float)) - sys.flux_fn(
        np.asarray(u_minus, dtype=float)
    )
    defect = jump - sigma * (np.asarray(u_plus, dtype=float) - np.asarray(u_minus, dtype=float))
    return float(np.linalg.norm(defect) / (1.0 + np.linalg.norm(jump)))


def d_rh_values(ctx: ShockContext, u_minus: Any, u_plus: Any, sigma: Any) -> Scalar:
    """Unchecked, vectorised dissipation of discontinuities sharing the left state ``u_minus``."""
    sys = ctx.system
    sigma = np.asarray(sigma, dtype=float)
    right = rel_entropy_flux(sys, u_plus, ctx.u_right) - sigma * rel_entropy(
        sys, u_plus, ctx.u_right
    )
    left = rel_entropy_flux(sys, u_minus, ctx.u_left) - sigma * rel_entropy(
        sys, u_minus, ctx.u_left
    )
    value = ctx.a2 * right - ctx.a1 * left
    return value if np.ndim(value) else float(value)


def d_rh(ctx: ShockContext, u_minus: Any, u_plus: Any, sigma: float) -> float:
    """Dissipation of a Rankine-Hugoniot discontinuity.

    Evaluates ``a2 [q(u+;u_R) - sigma eta(u+|u_R)] - a1 [q(u-;u_L) - sigma eta(u-|u_L)]``.
    A degenerate discontinuity ``u- = u+ = u`` with ``sigma = lambda_1(u)`` gives
    the continuous dissipation at ``u``.

    Raises:
        InconsistentShockError: If the Rankine-Hugoniot residual exceeds its tolerance.
    """
    u_minus = as_state(ctx.system, u_minus)
    u_plus = as_state(ctx.system, u_plus)
    residual = rh_residual(ctx, u_minus, u_plus, sigma)
    if residual > RH_TOLERANCE:
        raise_acontraction_error(
            f"Rankine-Hugoniot residual {residual:.3e} exceeds {RH_TOLERANCE:.0e}",
            InconsistentShockError,
            state=u_plus,
        )
    return float(d_rh_values(ctx, u_minus, u_plus, float(sigma)))
