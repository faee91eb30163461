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
Module defining the verification sweeps of the dissipation functionals: the
maximum of the continuous dissipation, sampled negativity of the continuous and
maximal dissipation, and the scaling study over weights and shock strengths.

"""
from __future__ import annotations

import logging
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize, root

from acontraction.exceptions import AContractionError, ConfigError
from acontraction.relent.elements import ShockContext
from acontraction.relent.exceptions import BoundaryNotFoundError
from acontraction.relent.functionals import tilde_eta
from acontraction.relent.geometry import (
    boundary_project,
    box_exit_distance,
    diameter,
    intersect_shock_curve,
    masked_tilde_eta,
    normal,
    ray_directions,
    sample_pi,
)
from acontraction.systems.elements import SystemDescriptor
from acontraction.systems.exceptions import DegeneracyError, SystemDomainError
from acontraction.systems.operations import eigenstructure

from .elements import DcontMaximum, NegativityReport, ScalingCell, ScalingFit
from .functionals import d_cont, d_rh_values
from .shocks import MAXIMALITY_TOL, hessian_d_max, maximal_shock, maximality_excess, shock_solver

logger = logging.getLogger(__name__)

DEFAULT_RAYS = {1: 2, 2: 64, 3: 256}
SLOPE_WINDOW = (2.7, 3.3)
UNIQUENESS_TOL = 1e-6
NEAR_BALL = 0.1


def _chart(theta: np.ndarray) -> np.ndarray:
    if len(theta) == 1:
        return np.array([np.cos(theta[0]), np.sin(theta[0])])
    polar, azimuth = theta
    return np.array(
        [np.sin(polar) * np.cos(azimuth), np.sin(polar) * np.sin(azimuth), np.cos(polar)]
    )


def _angles(direction: np.ndarray) -> np.ndarray:
    if len(direction) == 2:
        return np.array([np.arctan2(direction[1], direction[0])])
    return np.array(
        [np.arccos(np.clip(direction[2], -1.0, 1.0)), np.arctan2(direction[1], direction[0])]
    )


def _boundary_along(ctx: ShockContext, direction: np.ndarray) -> Optional[np.ndarray]:
    try:
        return boundary_project(ctx, ctx.u_left, direction)
    except BoundaryNotFoundError:
        return None


def _line_angle(nu: np.ndarray, l1: np.ndarray) -> float:
    l1 = l1 / np.linalg.norm(l1)
    along = abs(float(nu @ l1))
    across = float(np.linalg.norm(l1 - (l1 @ nu) * nu))
    return float(np.arctan2(across, along))


def _polish_maximiser(ctx: ShockContext, u: np.ndarray, diam: float) -> np.ndarray:
    """Solves ``eta~ = 0`` with the normal orthogonal to ``r_2, ..., r_n``."""
    scale = ctx.s0**2

    def equations(v: np.ndarray) -> np.ndarray:
        basis = eigenstructure(ctx.system, v)
        nu = normal(ctx, v)
        return np.concatenate([[tilde_eta(ctx, v) / scale], nu @ basis.right[:, 1:]])

    try:
        found = root(equations, u, method="hybr", options={"xtol": 1e-14})
    except (DegeneracyError, SystemDomainError):
        return u
    if not found.success or np.linalg.norm(found.x - u) > 1e-3 * max(diam, ctx.s0):
        return u
    return found.x


def find_dcont_max(  # pylint: disable=too-many-locals
    ctx: ShockContext, n_starts: int = 8, n_rays: Optional[int] = None
) -> DcontMaximum:
    """Maximises the continuous dissipation over the weighted set.

    The maximum lies on the boundary. The boundary is charted by ray angles from
    ``u_L`` and Nelder-Mead runs from ``n_starts`` evenly spaced directions of a
    coarse scan. The best point is polished by solving for a boundary point whose
    normal is parallel to the first left eigenvector.

    Raises:
        BoundaryNotFoundError: If no ray from ``u_L`` crosses the boundary.
    """
    dim = ctx.system.dim
    dirs = ray_directions(dim, n_rays or DEFAULT_RAYS[dim])
    scan = [(d, _boundary_along(ctx, d)) for d in dirs]
    scan = [(d, p) for d, p in scan if p is not None]
    if not scan:
        raise BoundaryNotFoundError("No ray from u_L crosses the boundary of the weighted set")
    points = np.array([p for _, p in scan])
    diam = diameter(points)
    values = np.atleast_1d(d_cont(ctx, points))

    if dim == 1:
        best = int(np.argmax(values))
        results = [(float(values[i]), points[i]) for i in range(len(points))]
        u_star = points[best]
    else:
        step = 2.0 * np.pi / len(dirs)
        picks = np.unique(np.linspace(0, len(scan) - 1, min(n_starts, len(scan))).astype(int))

        def objective(theta: np.ndarray) -> float:
            point = _boundary_along(ctx, _chart(theta))
            return np.inf if point is None else -float(d_cont(ctx, point))

        results = []
        for pick in picks:
            theta0 = _angles(scan[pick][0])
            simplex = np.vstack([theta0, theta0 + step * np.eye(dim - 1)])
            found = minimize(
                objective,
                theta0,
                method="Nelder-Mead",
                options={
                    "initial_simplex": simplex,
                    "xatol": 1e-10,
                    "fatol": 1e-13 * abs(float(values[pick])),
                    "maxfev": 800,
                },
            )
            point = _boundary_along(ctx, _chart(found.x))
            if point is not None:
                results.append((-float(found.fun), point))
            logger.debug("Start %s reached D_cont=%s", pick, -found.fun)
        if not results:
            raise BoundaryNotFoundError("Every optimizer start left the working box")
        best_value = max(value for value, _ in results)
        u_star = next(point for value, point in results if value == best_value)
        u_star = _polish_maximiser(ctx, u_star, diam)

    best_value = max(value for value, _ in results)
    close = [p for value, p in results if value >= best_value - 1e-8 * abs(best_value)]
    spread = max(float(np.linalg.norm(p - u_star)) for p in close)
    basis = eigenstructure(ctx.system, u_star)
    nu = normal(ctx, u_star)
    found = DcontMaximum(
        u_star=u_star,
        value=float(d_cont(ctx, u_star)),
        eta_residual=abs(float(tilde_eta(ctx, u_star))),
        normal_angle=_line_angle(nu, basis.l(1)),
        outward=float(basis.r(1) @ nu),
        n_starts=len(results),
        spread=spread,
        unique=spread <= UNIQUENESS_TOL * max(diam, ctx.s0),
        diameter=diam,
    )
    logger.info("Maximum of D_cont %s at %s", found.value, u_star)
    return found


def _sample_row(u: np.ndarray, eta_t: float, dcont: float, dmax, s_star) -> dict:
    row = {f"u{i}": float(x) for i, x in enumerate(u)}
    row.update({"eta_tilde": eta_t, "d_cont": dcont, "d_max": dmax, "s_star": s_star})
    return row


def sweep_negativity(  # pylint: disable=too-many-arguments,too-many-locals,too-many-statements
    ctx: ShockContext,
    n_samples: int = 10_000,
    n_dmax: int = 200,
    n_scan: int = 20,
    seed: int = 0,
    n_rays: Optional[int] = None,
    locate_max: bool = True,
) -> NegativityReport:
    """Samples the weighted set and checks the sign of the dissipation functionals.

    Samples combine rejection sampling, boundary points on rays from ``u_L``, the
    segment from ``u_L`` to the exit point ``u0`` of the shock curve and a small
    cloud around ``u_L``. The continuous dissipation is evaluated on all of them,
    the maximal dissipation on ``u_L``, the cloud, the segment, the boundary
    points pulled slightly inwards and the first ``n_dmax`` interior samples.

    Failures are recorded in the report, never raised.
    """
    dim = ctx.system.dim
    rng = np.random.default_rng(seed)
    tol_zero = 1e-12 * ctx.s0**2
    failures: list[str] = []

    truncated = False
    boundary, reach = [], [ctx.s0]
    for direction in ray_directions(dim, n_rays or DEFAULT_RAYS[dim]):
        point = _boundary_along(ctx, direction)
        if point is None:
            truncated = True
            reach.append(box_exit_distance(ctx, ctx.u_left, direction))
        else:
            boundary.append(point)
            reach.append(float(np.linalg.norm(point - ctx.u_left)))
    boundary_arr = np.array(boundary).reshape(-1, dim)
    interior = sample_pi(ctx, n_samples, rng, half_width=max(reach))

    u0: Optional[np.ndarray] = None
    segment = np.empty((0, dim))
    try:
        u0 = intersect_shock_curve(ctx).state
        t = np.linspace(0.0, 1.0 - 1e-6, 32)[:, None]
        segment = ctx.u_left + t * (u0 - ctx.u_left)
    except (AContractionError, ValueError) as err:
        failures.append(f"shock curve exit point: {err}")

    n_cloud = max(n_dmax // 10, 1)
    cloud = ctx.u_left + NEAR_BALL * ctx.s0 * rng.uniform(-1.0, 1.0, size=(n_cloud, dim))
    cloud = cloud[masked_tilde_eta(ctx, cloud) < 0.0]

    cont_states = np.concatenate(
        [interior, boundary_arr, segment] + ([u0[None, :]] if u0 is not None else [])
    )
    cont_values = np.atleast_1d(d_cont(ctx, cont_states))
    i_cont = int(np.argmax(cont_values))

    pulled = ctx.u_left + (1.0 - 1e-6) * (boundary_arr - ctx.u_left)
    max_states = np.concatenate(
        [ctx.u_left[None, :], cloud, segment[1:], pulled, interior[:n_dmax]]
    )
    max_values = np.full(len(max_states), np.nan)
    rows, scan_violations = [], 0
    for k, u in enumerate(max_states):
        eta_t = float(tilde_eta(ctx, u))
        s_star = None
        try:
            solver = shock_solver(ctx, u)
            shock = maximal_shock(ctx, u, solver)
            max_values[k] = d_rh_values(ctx, shock.u, shock.u_plus, shock.sigma)
            s_star = shock.s_star
            if k < n_scan:
                excess = maximality_excess(ctx, shock, solver=solver)
                if excess > MAXIMALITY_TOL * (1.0 + abs(max_values[k])):
                    scan_violations += 1
        except AContractionError as err:
            failures.append(f"maximal shock at {u.tolist()}: {err}")
        rows.append(_sample_row(u, eta_t, float(d_cont(ctx, u)), max_values[k], s_star))
        logger.debug("Sample %s: D_max=%s", k, max_values[k])

    evaluated = np.isfinite(max_values)
    i_max = int(np.nanargmax(max_values)) if np.any(evaluated) else 0
    max_dmax = float(max_values[i_max]) if np.any(evaluated) else float("nan")
    dmax_left = float(max_values[0])

    dcont_max = None
    if locate_max:
        try:
            dcont_max = find_dcont_max(ctx, n_rays=n_rays)
        except AContractionError as err:
            failures.append(f"maximum of D_cont: {err}")

    max_dcont = float(cont_values[i_cont])
    checks = {
        "dcont_negative": max_dcont < 0.0,
        "dmax_nonpositive": bool(np.all(evaluated)) and max_dmax <= tol_zero,
        "dmax_zero_at_left": abs(dmax_left) <= tol_zero,
        "equality_at_left": bool(
            np.linalg.norm(max_states[i_max] - ctx.u_left) <= 1e-3 * ctx.s0
        ),
        "scan_maximal": scan_violations == 0,
        "all_evaluated": not failures,
    }
    if locate_max:
        checks["u_star"] = dcont_max is not None and dcont_max.passed

    report = NegativityReport(
        context=ctx.to_dict(),
        n_samples=len(cont_states),
        n_dmax=len(max_states),
        max_dcont=max_dcont,
        argmax_dcont=cont_states[i_cont],
        max_dmax=max_dmax,
        argmax_dmax=max_states[i_max],
        dmax_at_left=dmax_left,
        tol_zero=tol_zero,
        k_fit=-max_dcont / ctx.s0**3,
        u0=u0,
        dcont_u0=float(d_cont(ctx, u0)) if u0 is not None else None,
        scan_violations=scan_violations,
        truncated=truncated,
        checks=checks,
        dcont_max=dcont_max,
        failures=failures,
        rows=rows,
    )
    if report.passed:
        logger.info("Negativity holds on %s samples, max D_cont=%s", len(cont_states), max_dcont)
    else:
        logger.warning("Negativity sweep failed: %s", report.failed())
    return report


def _scaling_cell(
    sys: SystemDescriptor, d: np.ndarray, family: int, C: float, s0: float, n_rays: Optional[int]
) -> ScalingCell:
    try:
        ctx = ShockContext.from_basepoint(sys, d, s0, C=C, family=family)
        found = find_dcont_max(ctx, n_rays=n_rays)
        u0 = intersect_shock_curve(ctx).state
        eigs = np.linalg.eigvalsh(hessian_d_max(ctx, ctx.u_left))
    except (AContractionError, ValueError) as err:
        logger.warning("Scaling cell C=%s s0=%s failed: %s", C, s0, err)
        return ScalingCell(C=C, s0=s0, error=str(err))
    return ScalingCell(
        C=C,
        s0=s0,
        max_dcont=found.value,
        diameter_times_c=found.diameter * C,
        ustar_gap=float(np.linalg.norm(found.u_star - u0)) * C / s0,
        hessian_eigenvalues=tuple(float(x) for x in eigs),
    )


def _spread(values: Sequence[float]) -> float:
    values = [v for v in values if np.isfinite(v)]
    if not values:
        return float("nan")
    top, bottom = max(values), min(values)
    if top <= 1e-8:
        return 1.0
    return top / bottom if bottom > 0.0 else float("inf")


def scaling_study(  # pylint: disable=too-many-arguments,too-many-locals
    sys: SystemDescriptor,
    d: Sequence[float],
    family: int,
    C_list: Sequence[float],
    s0_list: Sequence[float],
    n_rays: Optional[int] = None,
) -> ScalingFit:
    """Measures how the dissipation and the weighted set scale with C and s0.

    For each C the slope of ``log(-max D_cont)`` against ``log s0`` is fitted. Cells
    that fail are recorded and the study continues.

    Raises:
        ConfigError: If either list is empty.
    """
    if not C_list or not s0_list:
        raise ConfigError("Scaling study needs nonempty lists of C and s0")
    d = np.asarray(d, dtype=float)
    cells = [
        _scaling_cell(sys, d, family, float(C), float(s0), n_rays)
        for C in C_list
        for s0 in s0_list
    ]

    slopes: dict[float, float] = {}
    for C in C_list:
        good = [c for c in cells if c.C == float(C) and c.ok and c.max_dcont < 0.0]
        if len(good) < 2:
            slopes[float(C)] = float("nan")
            continue
        x = np.log([c.s0 for c in good])
        y = np.log([-c.max_dcont for c in good])
        slopes[float(C)] = float(np.polyfit(x, y, 1)[0])

    diameter_spread = 1.0
    for s0 in s0_list:
        column = [c.diameter_times_c for c in cells if c.s0 == float(s0) and c.ok]
        if len(column) > 1:
            diameter_spread = max(diameter_spread, _spread(column))
    ustar_spread = _spread([c.ustar_gap for c in cells if c.ok])

    lo, hi = SLOPE_WINDOW
    checks = {
        "cells": all(c.ok for c in cells),
        "slopes": all(np.isfinite(v) and lo <= v <= hi for v in slopes.values()),
        "diameter": diameter_spread < 2.0,
        "ustar": np.isfinite(ustar_spread) and ustar_spread < 10.0,
        "hessian": all(c.hessian_negative for c in cells if c.ok),
    }
    fit = ScalingFit(
        system=sys.name,
        family=family,
        cells=cells,
        slopes=slopes,
        slope_window=SLOPE_WINDOW,
        diameter_spread=float(diameter_spread),
        ustar_spread=float(ustar_spread),
        checks={key: bool(ok) for key, ok in checks.items()},
    )
    logger.info("Scaling study of '%s': slopes %s", sys.name, slopes)
    return fit
