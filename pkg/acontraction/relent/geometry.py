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
Module defining the geometry of the weighted sublevel set ``Pi = {eta~ < 0}`` of a shock:
membership, boundary projection along rays, the outward normal field, sampling and
sampled diagnostics.

"""
from __future__ import annotations

import logging
from typing import Any, Optional

import numpy as np
from scipy.optimize import brentq, minimize_scalar
from scipy.spatial.distance import pdist

from acontraction.exceptions import raise_acontraction_error
from acontraction.hugoniot.elements import ShockPoint
from acontraction.systems.exceptions import DegeneracyError

from .elements import CStarEstimate, PiDiagnostics, ShockContext
from .exceptions import BoundaryNotFoundError
from .functionals import grad_tilde_eta, tilde_eta, tilde_q

logger = logging.getLogger(__name__)

BISECTION_STEPS = 80
REFINE_MAX_ITER = 50
REFINE_ANGLE_TOL = 1e-10


def boundary_tolerance(ctx: ShockContext) -> float:
    """Residual tolerance ``|eta~| < 1e-10 s0^2`` for points returned on the boundary."""
    return 1e-10 * ctx.s0**2


def in_pi(ctx: ShockContext, u: Any) -> Any:
    """Whether ``eta~(u) < 0``."""
    return tilde_eta(ctx, u) < 0.0


def masked_tilde_eta(ctx: ShockContext, u: np.ndarray) -> np.ndarray:
    """``eta~`` on a batch, with ``+inf`` for states outside the working box."""
    u = np.atleast_2d(np.asarray(u, dtype=float))
    out = np.full(u.shape[:-1], np.inf)
    ok = ctx.system.box.contains(u) & np.asarray(ctx.system.admissible_fn(u))
    if np.any(ok):
        out[ok] = tilde_eta(ctx, u[ok])
    return out


def box_exit_distance(ctx: ShockContext, u: np.ndarray, direction: np.ndarray) -> float:
    """Distance along a ray from ``u`` to the edge of the working box."""
    box = ctx.system.box
    t_in, t_out = 0.0, max(ctx.s0, 1e-8)
    for _ in range(60):
        if not box.contains(u + t_out * direction):
            break
        t_in, t_out = t_out, 2.0 * t_out
    else:
        return t_out
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (t_in + t_out)
        if box.contains(u + mid * direction):
            t_in = mid
        else:
            t_out = mid
    return t_in


def _polish(ctx: ShockContext, u: np.ndarray, direction: np.ndarray, t: float) -> float:
    value = float(tilde_eta(ctx, u + t * direction))
    for _ in range(2):
        slope = float(grad_tilde_eta(ctx, u + t * direction) @ direction)
        if slope == 0.0:
            break
        candidate = t - value / slope
        if candidate < 0.0 or not ctx.system.box.contains(u + candidate * direction):
            break
        new_value = float(tilde_eta(ctx, u + candidate * direction))
        if abs(new_value) >= abs(value):
            break
        t, value = candidate, new_value
    return t


def _ray_root(ctx: ShockContext, u: np.ndarray, direction: np.ndarray) -> float:
    def eta_along(t: float) -> float:
        return float(tilde_eta(ctx, u + t * direction))

    start = eta_along(0.0)
    t_max = box_exit_distance(ctx, u, direction)
    if start < 0.0:
        t_lo, t_hi = 0.0, min(1e-3 * ctx.s0, t_max)
        while eta_along(t_hi) < 0.0:
            if t_hi >= t_max:
                raise_acontraction_error(
                    "Ray leaves the working box before crossing the boundary",
                    BoundaryNotFoundError,
                    state=u,
                )
            t_lo, t_hi = t_hi, min(2.0 * t_hi, t_max)
    else:
        found = minimize_scalar(eta_along, bounds=(0.0, t_max), method="bounded")
        if not found.fun < 0.0:
            raise_acontraction_error(
                "Ray from an outside state never enters the weighted set",
                BoundaryNotFoundError,
                state=u,
            )
        t_lo, t_hi = 0.0, float(found.x)
    t = brentq(eta_along, t_lo, t_hi, xtol=1e-15 * (1.0 + abs(t_hi - t_lo)), rtol=1e-15)
    return _polish(ctx, u, direction, t)


def boundary_project(
    ctx: ShockContext,
    u_in: Any,
    direction: Any,
    refine: bool = False,
) -> np.ndarray:
    """Projects a state onto the boundary of the weighted set along a ray.

    From an inside state the first crossing along ``direction`` is returned. From an
    outside state the ray is first minimised to find an inside point, and the
    nearest crossing is returned. With ``refine``, the direction is iterated until
    ``u_in - u_bar`` is parallel to the normal at ``u_bar``.

    Raises:
        BoundaryNotFoundError: If the ray does not cross the boundary inside the working box.
    """
    u_in = np.asarray(u_in, dtype=float)
    direction = np.asarray(direction, dtype=float)
    direction = direction / np.linalg.norm(direction)
    if abs(float(tilde_eta(ctx, u_in))) < boundary_tolerance(ctx):
        return u_in.copy()

    u_bar = u_in + _ray_root(ctx, u_in, direction) * direction
    if not refine:
        return u_bar

    inside = float(tilde_eta(ctx, u_in)) < 0.0
    for _ in range(REFINE_MAX_ITER):
        nu = normal(ctx, u_bar)
        new_direction = nu if inside else -nu
        angle = np.arccos(np.clip(new_direction @ direction, -1.0, 1.0))
        direction = new_direction
        u_bar = u_in + _ray_root(ctx, u_in, direction) * direction
        if angle < REFINE_ANGLE_TOL:
            break
    return u_bar


def normal(ctx: ShockContext, u_bar: Any) -> np.ndarray:
    """Outward unit normal ``grad eta~ / |grad eta~|`` at a boundary point.

    Raises:
        DegeneracyError: If the gradient vanishes.
    """
    grad = grad_tilde_eta(ctx, u_bar)
    size = np.linalg.norm(grad, axis=-1, keepdims=True)
    if np.any(size == 0.0):
        raise_acontraction_error("Gradient of eta~ vanishes", DegeneracyError, state=u_bar)
    return grad / size


def ray_directions(
    dim: int, n_dirs: int, rng: Optional[np.random.Generator] = None
) -> np.ndarray:
    """Unit directions: both signs in 1-D, evenly spaced angles in 2-D, a spiral in 3-D.

    With a generator the directions are drawn uniformly at random instead.
    """
    if dim == 1:
        return np.array([[1.0], [-1.0]])
    if rng is not None:
        dirs = rng.normal(size=(n_dirs, dim))
        return dirs / np.linalg.norm(dirs, axis=1, keepdims=True)
    if dim == 2:
        theta = 2.0 * np.pi * np.arange(n_dirs) / n_dirs
        return np.stack([np.cos(theta), np.sin(theta)], axis=1)
    k = np.arange(n_dirs) + 0.5
    z = 1.0 - 2.0 * k / n_dirs
    phi = np.pi * (3.0 - np.sqrt(5.0)) * k
    rad = np.sqrt(1.0 - z**2)
    return np.stack([rad * np.cos(phi), rad * np.sin(phi), z], axis=1)


def ray_distances(
    ctx: ShockContext, u: np.ndarray, directions: np.ndarray, reach: float
) -> np.ndarray:
    """Vectorised bisection for the boundary crossing distance from an inside state.

    Crossings farther than ``reach`` are reported as ``inf``; states leaving the
    working box count as outside the set.
    """
    u = np.asarray(u, dtype=float)
    t_lo = np.zeros(len(directions))
    t_hi = np.full(len(directions), float(reach))
    outside = masked_tilde_eta(ctx, u + t_hi[:, None] * directions) >= 0.0
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (t_lo + t_hi)
        out = masked_tilde_eta(ctx, u + mid[:, None] * directions) >= 0.0
        t_hi = np.where(out, mid, t_hi)
        t_lo = np.where(out, t_lo, mid)
    return np.where(outside, 0.5 * (t_lo + t_hi), np.inf)


def boundary_points(
    ctx: ShockContext, n_dirs: int = 64, rng: Optional[np.random.Generator] = None
) -> tuple[np.ndarray, int]:
    """Boundary points on rays from ``u_L``; also returns the number of rays that failed."""
    points, failures = [], 0
    for direction in ray_directions(ctx.system.dim, n_dirs, rng):
        try:
            points.append(boundary_project(ctx, ctx.u_left, direction))
        except BoundaryNotFoundError:
            failures += 1
    return np.array(points).reshape(-1, ctx.system.dim), failures


def diameter(points: np.ndarray) -> float:
    if len(points) < 2:
        return 0.0
    return float(np.max(pdist(points)))


def sample_pi(
    ctx: ShockContext,
    n: int,
    rng: np.random.Generator,
    half_width: float,
    max_rounds: int = 200,
) -> np.ndarray:
    """Rejection sampling of states in the weighted set inside ``u_L +- half_width``."""
    dim = ctx.system.dim
    accepted: list[np.ndarray] = []
    count = 0
    for _ in range(max_rounds):
        batch = ctx.u_left + rng.uniform(-half_width, half_width, size=(max(4 * n, 64), dim))
        keep = batch[masked_tilde_eta(ctx, batch) < 0.0]
        accepted.append(keep)
        count += len(keep)
        if count >= n:
            break
    samples = np.concatenate(accepted)[:n]
    logger.debug("Accepted %s samples of the weighted set", len(samples))
    return samples


def estimate_cstar(
    ctx: ShockContext, n_samples: int = 10_000, seed: int = 0, margin: float = 2.0
) -> CStarEstimate:
    """Bound on ``|q~(u)| / eta~(u)`` over sampled states outside the set with ``q~ <= 0``.

    Half of the samples lie in the working ball around the basepoint, half in the
    working box. The maximum ratio is multiplied by ``margin``.
    """
    rng = np.random.default_rng(seed)
    dim = ctx.system.dim
    n_ball = n_samples // 2
    dirs = rng.normal(size=(n_ball, dim))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    radii = ctx.radius * rng.uniform(size=(n_ball, 1)) ** (1.0 / dim)
    states = np.concatenate(
        [ctx.basepoint + radii * dirs, ctx.system.box.sample(rng, n_samples - n_ball)]
    )
    states = states[ctx.system.box.contains(states)]
    eta_t = tilde_eta(ctx, states)
    q_t = tilde_q(ctx, states)
    mask = (eta_t > 0.0) & (q_t <= 0.0)
    value = margin * float(np.max(np.abs(q_t[mask]) / eta_t[mask])) if np.any(mask) else 0.0
    return CStarEstimate(
        value=value, n_contributing=int(np.count_nonzero(mask)), n_samples=len(states)
    )


def intersect_shock_curve(ctx: ShockContext) -> ShockPoint:
    """The state where the 1-shock curve through ``u_L`` leaves the weighted set."""

    def eta_on_curve(s: float) -> float:
        return float(tilde_eta(ctx, ctx.solver.solve(s).state))

    s = brentq(eta_on_curve, 0.0, ctx.s0, xtol=1e-15 * ctx.s0, rtol=1e-15)
    return ctx.solver.solve(s)


def pi_diagnostics(  # pylint: disable=too-many-locals
    ctx: ShockContext,
    n_samples: int = 1000,
    n_rays: Optional[int] = None,
    n_depth: int = 50,
    seed: int = 0,
) -> PiDiagnostics:
    """Samples the geometry of the weighted set.

    Reports its diameter, the smallest normal gradient on the boundary, the largest
    ratio ``-eta~(u) / (s0 d(u, boundary))`` over interior samples, the range of
    ``|nu(u) - nu(w)| / (C |u - w|)`` over neighbouring boundary points and the C*
    estimate. ``truncated`` is set when some rays leave the working box.
    """
    dim = ctx.system.dim
    n_rays = n_rays or {1: 2, 2: 64, 3: 256}[dim]
    rng = np.random.default_rng(seed)
    points, failures = boundary_points(ctx, n_rays)
    diam = diameter(points)
    grads = np.linalg.norm(grad_tilde_eta(ctx, points), axis=-1)

    dirs = ray_directions(dim, n_rays)
    samples = sample_pi(ctx, n_depth, rng, half_width=max(diam, ctx.s0))
    depth = 0.0
    for u in samples:
        dist = float(np.min(ray_distances(ctx, u, dirs, reach=2.0 * diam + ctx.s0)))
        if np.isfinite(dist) and dist > 0.0:
            depth = max(depth, float(-tilde_eta(ctx, u)) / (ctx.s0 * dist))

    ratios = []
    if len(points) >= 2 and dim > 1:
        nus = normal(ctx, points)
        nxt = np.roll(np.arange(len(points)), -1)
        sep = np.linalg.norm(points - points[nxt], axis=1)
        keep = sep > 0.0
        ratios = np.linalg.norm(nus - nus[nxt], axis=1)[keep] / (ctx.C * sep[keep])
    lipschitz = (float(np.min(ratios)), float(np.max(ratios))) if len(ratios) else (0.0, 0.0)

    report = PiDiagnostics(
        diameter=diam,
        min_normal=float(np.min(grads)) if len(grads) else 0.0,
        max_depth_ratio=depth,
        normal_lipschitz=lipschitz,
        cstar=estimate_cstar(ctx, n_samples, seed),
        n_rays=n_rays,
        truncated=failures > 0,
        C=ctx.C,
        s0=ctx.s0,
    )
    logger.info("Weighted set diameter %s (C * diam = %s)", diam, report.diameter_times_c)
    return report
