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
Module defining the entropic finite-volume solver: local Lax-Friedrichs (Rusanov)
fluxes with their numerical entropy flux, an optional MUSCL-minmod reconstruction
with a two-stage strong-stability-preserving Runge-Kutta step, and initial data.

"""
from __future__ import annotations

import logging
from typing import Any, Callable, Mapping, Optional

import numpy as np

from acontraction.exceptions import raise_acontraction_error
from acontraction.relent.elements import ShockContext
from acontraction.systems.elements import SystemDescriptor
from acontraction.systems.operations import eigenvalues

from .elements import FVField, GridSpec
from .exceptions import BlowUpError, UnknownInitialDataError

logger = logging.getLogger(__name__)

TOL_ENTROPY = 1e-10


def max_wave_speed(sys: SystemDescriptor, states: np.ndarray) -> np.ndarray:
    """Spectral radius of the flux Jacobian at each state."""
    return np.max(np.abs(eigenvalues(sys, states)), axis=-1)


def rusanov_flux(
    sys: SystemDescriptor, left: np.ndarray, right: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Rusanov numerical flux and numerical entropy flux at a batch of interfaces."""
    speed = np.maximum(max_wave_speed(sys, left), max_wave_speed(sys, right))
    flux = 0.5 * (sys.flux_fn(left) + sys.flux_fn(right)) - 0.5 * speed[:, None] * (right - left)
    entropy_flux = 0.5 * (sys.entropy_flux_fn(left) + sys.entropy_flux_fn(right)) - 0.5 * speed * (
        sys.entropy_fn(right) - sys.entropy_fn(left)
    )
    return flux, entropy_flux


def _padded(states: np.ndarray, width: int) -> np.ndarray:
    head = np.repeat(states[:1], width, axis=0)
    tail = np.repeat(states[-1:], width, axis=0)
    return np.concatenate([head, states, tail])


def _minmod(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.where(a * b > 0.0, np.sign(a) * np.minimum(np.abs(a), np.abs(b)), 0.0)


def _interfaces_first_order(states: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    padded = _padded(states, 1)
    return padded[:-1], padded[1:]


def _interfaces_muscl(states: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    padded = _padded(states, 2)
    slopes = _minmod(padded[1:-1] - padded[:-2], padded[2:] - padded[1:-1])
    cells = padded[1:-1]
    return (cells + 0.5 * slopes)[:-1], (cells - 0.5 * slopes)[1:]


def _rates(
    sys: SystemDescriptor,
    states: np.ndarray,
    dx: float,
    interfaces: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]],
) -> tuple[np.ndarray, np.ndarray]:
    left, right = interfaces(states)
    flux, entropy_flux = rusanov_flux(sys, left, right)
    return -(flux[1:] - flux[:-1]) / dx, (entropy_flux[1:] - entropy_flux[:-1]) / dx


def _check_states(sys: SystemDescriptor, states: np.ndarray, time: float) -> None:
    finite = np.all(np.isfinite(states), axis=-1)
    ok = finite.copy()
    ok[finite] = np.asarray(sys.admissible_fn(states[finite]), dtype=bool)
    if not np.all(ok):
        bad = int(np.argmin(ok))
        raise_acontraction_error(
            f"Cell {bad} lost admissibility at t={time:.6e}", BlowUpError, state=states[bad]
        )


def stable_dt(sys: SystemDescriptor, field: FVField, extra_speed: float = 0.0) -> float:
    """Time step ``cfl dx / (max |lambda| + extra_speed)``."""
    speed = float(np.max(max_wave_speed(sys, field.states))) + extra_speed
    if speed == 0.0:
        return np.inf
    return field.cfl * field.grid.dx / speed


def fv_step(
    sys: SystemDescriptor,
    field: FVField,
    dt: Optional[float] = None,
    tol_entropy: float = TOL_ENTROPY,
) -> FVField:
    """Advances the field by one time step with outflow boundaries.

    The cell entropy residual ``eta(u_new) - eta(u) + dt (Q_right - Q_left) / dx`` is
    measured against the numerical entropy flux Q. Steps whose largest residual
    exceeds ``tol_entropy`` times the entropy scale are flagged, not rejected.

    Args:
        sys: The system.
        field: The current field.
        dt: Time step; the CFL step when omitted.
        tol_entropy: Relative tolerance of the entropy residual.

    Raises:
        BlowUpError: If a cell leaves the admissible region.
    """
    dt = stable_dt(sys, field) if dt is None else float(dt)
    if not np.isfinite(dt) or dt <= 0.0:
        dt = field.cfl * field.grid.dx
    dx = field.grid.dx
    states = field.states
    eta = sys.entropy_fn(states)

    if field.scheme == "rusanov":
        rate, entropy_div = _rates(sys, states, dx, _interfaces_first_order)
        new = states + dt * rate
        production = eta + dt * entropy_div
    else:
        rate, entropy_div = _rates(sys, states, dx, _interfaces_muscl)
        stage = states + dt * rate
        _check_states(sys, stage, field.time)
        stage_rate, stage_div = _rates(sys, stage, dx, _interfaces_muscl)
        new = 0.5 * states + 0.5 * (stage + dt * stage_rate)
        production = eta + 0.5 * dt * (entropy_div + stage_div)

    _check_states(sys, new, field.time + dt)
    scale = max(1.0, float(np.max(np.abs(eta))))
    residual = float(np.max(sys.entropy_fn(new) - production)) / scale
    flagged = residual > tol_entropy
    if flagged:
        logger.warning("Entropy residual %s at t=%s exceeds tolerance", residual, field.time)
    return field.evolve(new, dt, residual, flagged)


def _straddled(grid: GridSpec, x0: float, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    edges = grid.edges
    weight = np.clip((x0 - edges[:-1]) / grid.dx, 0.0, 1.0)[:, None]
    return weight * left + (1.0 - weight) * right


def _bump(grid: GridSpec, center: float, width: float) -> np.ndarray:
    return np.exp(-(((grid.centers - center) / width) ** 2))


def make_ic(  # pylint: disable=too-many-arguments
    kind: str,
    ctx: ShockContext,
    grid: GridSpec,
    params: Optional[Mapping[str, Any]] = None,
    seed: int = 0,
    cfl: float = 0.45,
    scheme: str = "rusanov",
) -> FVField:
    """Builds deterministic initial data for the context's system.

    Kinds:
        - ``constant``: every cell equals ``params["state"]``, ``u_L`` by default.
        - ``exact-shock``: ``u_L`` left of ``x0`` and ``u_R`` right of it, the
          straddling cell volume-weighted.
        - ``riemann``: as ``exact-shock`` with states ``params["u_left"]`` and
          ``params["u_right"]``.
        - ``perturbed-shock``: an exact shock plus a Gaussian bump of width
          ``params["width"]`` centred at ``params["center"]``, along a seeded random
          direction, scaled to the discrete L2 norm ``params["amplitude"]``
          (``0.1 s0`` by default).

    ``x0`` defaults to the middle of the grid.

    Raises:
        UnknownInitialDataError: If the kind is not supported.
    """
    params = dict(params or {})
    x0 = float(params.get("x0", 0.5 * (grid.x_min + grid.x_max)))
    dim = ctx.system.dim

    if kind == "constant":
        state = np.asarray(params.get("state", ctx.u_left), dtype=float)
        states = np.tile(state, (grid.n_cells, 1))
    elif kind == "exact-shock":
        states = _straddled(grid, x0, ctx.u_left, ctx.u_right)
    elif kind == "riemann":
        left = np.asarray(params.get("u_left", ctx.u_left), dtype=float)
        right = np.asarray(params.get("u_right", ctx.u_right), dtype=float)
        states = _straddled(grid, x0, left, right)
    elif kind == "perturbed-shock":
        rng = np.random.default_rng(seed)
        amplitude = float(params.get("amplitude", 0.1 * ctx.s0))
        width = float(params.get("width", 0.05 * grid.length))
        center = float(params.get("center", x0))
        direction = rng.normal(size=dim)
        direction /= np.linalg.norm(direction)
        bump = _bump(grid, center, width)
        norm = np.sqrt(np.sum(bump**2) * grid.dx)
        states = _straddled(grid, x0, ctx.u_left, ctx.u_right)
        states = states + (amplitude / norm) * bump[:, None] * direction
    else:
        raise UnknownInitialDataError(
            f"Unknown initial data '{kind}', expected one of "
            "constant, exact-shock, riemann, perturbed-shock"
        )
    logger.debug("Initial data '%s' on %s cells", kind, grid.n_cells)
    return FVField(grid=grid, states=np.array(states, dtype=float), cfl=cfl, scheme=scheme)


def level_set_position(
    field: FVField, u_left: Any, u_right: Any, component: int = 0
) -> float:
    """Position where a component first crosses halfway between its left and right values.

    Crossings are interpolated linearly between cell centres. Returns the middle of
    the grid when the component is constant.
    """
    lo = float(np.asarray(u_left)[component])
    hi = float(np.asarray(u_right)[component])
    grid = field.grid
    if lo == hi:
        return 0.5 * (grid.x_min + grid.x_max)
    phi = (field.states[:, component] - hi) / (lo - hi) - 0.5
    crossing = np.nonzero((phi[:-1] >= 0.0) & (phi[1:] < 0.0))[0]
    if len(crossing) == 0:
        return grid.x_min if phi[0] < 0.0 else grid.x_max
    j = int(crossing[0])
    centers = grid.centers
    return float(centers[j] + grid.dx * phi[j] / (phi[j] - phi[j + 1]))
