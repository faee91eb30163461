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
Module defining the executable audit of the structural assumptions on a system:
eigenvalue gaps, genuine nonlinearity, convexity and compatibility of the entropy,
bounded wave speeds, and the admissibility and monotonicity of extremal shock curves.

"""
from __future__ import annotations

import logging
from dataclasses import replace
from typing import Optional

import numpy as np

from .elements import (
    AssumptionCheck,
    AssumptionReport,
    AuditThresholds,
    SystemDescriptor,
    WorkingBox,
)
from .exceptions import DegeneracyError, SystemDomainError
from .operations import (
    eigenstructure,
    eigenvalues,
    entropy_gradient,
    entropy_hessian,
    fd_gradient,
    flux_jacobian,
    mirror_system,
)
from .regions import invariant_region_bound

logger = logging.getLogger(__name__)

DESCRIPTIONS = {
    "a": "extremal eigenvalues are simple",
    "b": "extremal families are genuinely nonlinear",
    "c": "entropy is strictly convex and compatible with the flux",
    "d": "1-shock curves are defined across the working box",
    "e": "wave speeds are bounded",
    "f": "1-shocks satisfy sigma > lambda_1(S)",
    "g": "1-shocks satisfy sigma < lambda_1(u)",
    "h": "n-shocks satisfy sigma < lambda_n(S)",
    "i": "n-shocks satisfy sigma > lambda_n(u)",
    "j": "extremal shocks strengthen with s",
}


def relative_entropy_bracket(
    sys: SystemDescriptor, box: WorkingBox, n: int, rng: np.random.Generator
) -> tuple[float, float]:
    """Sampled range of ``eta(u|v) / |u - v|^2`` over pairs of states in a box."""
    from acontraction.relent.functionals import (  # pylint: disable=import-outside-toplevel
        rel_entropy,
    )

    a, b = box.sample(rng, n), box.sample(rng, n)
    dist2 = np.sum((a - b) ** 2, axis=-1)
    keep = dist2 > 0.0
    ratios = rel_entropy(sys, a[keep], b[keep]) / dist2[keep]
    return float(np.min(ratios)), float(np.max(ratios))


def _check(key: str, margin: float, threshold: float, **details) -> AssumptionCheck:
    margin = float(margin)
    return AssumptionCheck(
        key=key,
        description=DESCRIPTIONS[key],
        margin=margin,
        threshold=float(threshold),
        passed=bool(np.isfinite(margin) and margin > threshold),
        details=details,
    )


def _stub_margins(  # pylint: disable=too-many-locals
    sys: SystemDescriptor, bases: np.ndarray, thresholds: AuditThresholds
) -> dict[str, float]:
    # pylint: disable-next=import-outside-toplevel
    from acontraction.hugoniot.exceptions import ContinuationError

    # pylint: disable-next=import-outside-toplevel
    from acontraction.hugoniot.solver import trace_shock_curve

    ds = thresholds.stub_length / 20.0
    extents, failures = [], 0
    upper_liu, lower_liu, strengthen, speed_decay = [], [], [], []
    for base in bases:
        try:
            curve = trace_shock_curve(sys, base, 1, s_max=thresholds.stub_length, ds=ds)
        except ContinuationError as err:
            failures += 1
            curve = err.partial
            if curve is None:
                extents.append(0.0)
                continue
        extents.append(curve.extent)
        above, below = curve.liu_margins()
        interior = curve.s > 10.0 * ds - 1e-14
        if not np.any(interior):
            continue
        s = curve.s[interior]
        upper_liu.append(np.min(above[interior] / s))
        lower_liu.append(np.min(below[interior] / s))
        grad_base = entropy_gradient(sys, curve.base)
        for point in (p for p, keep in zip(curve.points, interior) if keep):
            d_state, d_speed = curve.solver.tangent(point)
            growth = (entropy_gradient(sys, point.state) - grad_base) @ d_state
            strengthen.append(growth / point.s)
            speed_decay.append(-d_speed)

    def worst(values: list[float]) -> float:
        return float(np.min(values)) if values else 0.0

    return {
        "extent": worst(extents) / thresholds.stub_length,
        "failures": float(failures),
        "liu_upper": worst(upper_liu),
        "liu_lower": worst(lower_liu),
        "strengthen": worst(strengthen),
        "speed_decay": worst(speed_decay),
    }


def verify_assumptions(  # pylint: disable=too-many-locals
    sys: SystemDescriptor,
    box: Optional[WorkingBox] = None,
    n_samples: int = 1000,
    thresholds: Optional[AuditThresholds] = None,
    seed: int = 0,
) -> AssumptionReport:
    """Audits the structural assumptions on a sampled working box.

    Shock-curve checks run on short stubs issued from states of the half-size box,
    for the 1-family of the system and of its mirror. Failures are report entries,
    never exceptions.

    Args:
        sys: The system to audit.
        box: Working box to sample; the system's own box by default.
        n_samples: Number of sampled states.
        thresholds: Margins each check must exceed.
        seed: Seed of the sampler.

    Returns:
        The assumption report.
    """
    if n_samples < 1:
        raise SystemDomainError("The audit needs at least one sample")
    thresholds = thresholds or AuditThresholds()
    if box is not None:
        sys = replace(sys, box=box)
    rng = np.random.default_rng(seed)
    states = sys.box.sample(rng, n_samples)
    n = sys.dim
    logger.info("Auditing '%s' on %s samples", sys.name, n_samples)

    checks: dict[str, AssumptionCheck] = {}
    lam = eigenvalues(sys, states)
    if n >= 2:
        gaps = np.minimum(lam[:, 1] - lam[:, 0], lam[:, -1] - lam[:, -2])
        checks["a"] = _check("a", np.min(gaps), thresholds.gap)
    else:
        checks["a"] = _check("a", 1.0, thresholds.gap, vacuous=True)

    nonlinear = []
    for u in states:
        try:
            basis = eigenstructure(sys, u)
        except DegeneracyError:
            nonlinear.append(0.0)
            continue
        nonlinear.append(min(abs(basis.nonlinearity[0]), abs(basis.nonlinearity[-1])))
    checks["b"] = _check("b", np.min(nonlinear), thresholds.nonlinearity)

    min_convexity = float(np.min(np.linalg.eigvalsh(entropy_hessian(sys, states))))
    grad_q = fd_gradient(sys.entropy_flux_fn, states)
    target = np.einsum("ni,nij->nj", entropy_gradient(sys, states), flux_jacobian(sys, states))
    compat = float(
        np.max(np.linalg.norm(grad_q - target, axis=-1) / (1.0 + np.linalg.norm(grad_q, axis=-1)))
    )
    convex = _check("c", min_convexity, thresholds.convexity, compatibility_residual=compat)
    if compat >= thresholds.compatibility:
        convex = replace(convex, passed=False)
    checks["c"] = convex

    wave_bound = 1.1 * float(np.max(np.abs(lam)))
    extra = {}
    if (sys.mirrored_from or sys).name == "isentropic_euler":
        extra["invariant_region_bound"] = invariant_region_bound(sys, states)
    checks["e"] = _check("e", wave_bound, 0.0, **extra)

    bases = sys.box.shrink(0.5).sample(rng, thresholds.n_stubs)
    forward = _stub_margins(sys, bases, thresholds)
    backward = _stub_margins(mirror_system(sys), bases, thresholds)

    stub_extent = min(forward["extent"], backward["extent"])
    checks["d"] = _check(
        "d",
        stub_extent if forward["failures"] + backward["failures"] == 0 else 0.0,
        0.0,
        exit_fraction=stub_extent,
        continuation_failures=forward["failures"] + backward["failures"],
    )
    checks["f"] = _check("f", forward["liu_upper"], thresholds.liu)
    checks["g"] = _check("g", forward["liu_lower"], thresholds.liu)
    checks["h"] = _check("h", backward["liu_upper"], thresholds.liu)
    checks["i"] = _check("i", backward["liu_lower"], thresholds.liu)
    checks["j"] = _check(
        "j",
        min(
            forward["strengthen"],
            forward["speed_decay"],
            backward["strengthen"],
            backward["speed_decay"],
        ),
        thresholds.monotonicity,
        relative_entropy_growth=min(forward["strengthen"], backward["strengthen"]),
        speed_decay=min(forward["speed_decay"], backward["speed_decay"]),
    )

    report = AssumptionReport(
        system=sys.name,
        box=sys.box.to_dict(),
        n_samples=n_samples,
        checks={key: checks[key] for key in sorted(checks)},
        wave_speed_bound=wave_bound,
        entropy_bracket=relative_entropy_bracket(sys, sys.box, n_samples, rng),
    )
    if report.passed:
        logger.info("All assumptions hold for '%s'", sys.name)
    else:
        logger.warning("Assumptions %s fail for '%s'", report.failed(), sys.name)
    return report
