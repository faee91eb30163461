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
Module defining the pointwise operations on a hyperbolic system: fluxes, entropies,
their derivatives and the normalised eigenstructure.

"""
from __future__ import annotations

import logging
from dataclasses import replace
from typing import Any, Callable, Optional

import numpy as np

from acontraction.exceptions import raise_acontraction_error

from .elements import EigenBasis, StateFn, SystemDescriptor, check_admissible
from .exceptions import DegeneracyError

logger = logging.getLogger(__name__)

FD_REL_STEP = 1e-6
DEGENERACY_GAP = 1e-8
HYPERBOLICITY_TOL = 1e-10


def fd_step(u: np.ndarray) -> np.ndarray:
    """Central finite-difference step ``h = 1e-6 (1 + |u|)`` per component."""
    return FD_REL_STEP * (1.0 + np.abs(u))


def fd_jacobian(fn: Callable[[np.ndarray], np.ndarray], u: np.ndarray) -> np.ndarray:
    """Central finite-difference Jacobian of a vector field, vectorised over ``(..., n)``."""
    u = np.asarray(u, dtype=float)
    h = fd_step(u)
    eye = np.eye(u.shape[-1])
    cols = []
    for k in range(u.shape[-1]):
        step = eye[k] * h[..., k : k + 1]
        cols.append((fn(u + step) - fn(u - step)) / (2.0 * h[..., k : k + 1]))
    return np.stack(cols, axis=-1)


def fd_gradient(fn: Callable[[np.ndarray], np.ndarray], u: np.ndarray) -> np.ndarray:
    """Central finite-difference gradient of a scalar field, vectorised over ``(..., n)``."""
    u = np.asarray(u, dtype=float)
    h = fd_step(u)
    eye = np.eye(u.shape[-1])
    parts = []
    for k in range(u.shape[-1]):
        step = eye[k] * h[..., k : k + 1]
        parts.append((fn(u + step) - fn(u - step)) / (2.0 * h[..., k]))
    return np.stack(parts, axis=-1)


def flux(sys: SystemDescriptor, u: Any) -> np.ndarray:
    """Evaluates the flux f(u).

    Raises:
        SystemDomainError: If a state is inadmissible.
    """
    return sys.flux_fn(check_admissible(sys, u))


def flux_jacobian(sys: SystemDescriptor, u: Any) -> np.ndarray:
    """Evaluates f'(u), analytically when available and by central differences otherwise."""
    u = check_admissible(sys, u)
    if sys.jacobian_fn is not None:
        return sys.jacobian_fn(u)
    return fd_jacobian(sys.flux_fn, u)


def entropy(sys: SystemDescriptor, u: Any) -> np.ndarray:
    return sys.entropy_fn(check_admissible(sys, u))


def entropy_flux(sys: SystemDescriptor, u: Any) -> np.ndarray:
    return sys.entropy_flux_fn(check_admissible(sys, u))


def entropy_pair(sys: SystemDescriptor, u: Any) -> tuple[Any, Any]:
    """Returns the pair (eta(u), q(u)); floats for a single state, arrays for a batch."""
    u = check_admissible(sys, u)
    eta, q = sys.entropy_fn(u), sys.entropy_flux_fn(u)
    if u.ndim == 1:
        return float(eta), float(q)
    return eta, q


def entropy_gradient(sys: SystemDescriptor, u: Any) -> np.ndarray:
    u = check_admissible(sys, u)
    if sys.entropy_gradient_fn is not None:
        return sys.entropy_gradient_fn(u)
    return fd_gradient(sys.entropy_fn, u)


def entropy_hessian(sys: SystemDescriptor, u: Any) -> np.ndarray:
    u = check_admissible(sys, u)
    if sys.entropy_hessian_fn is not None:
        return sys.entropy_hessian_fn(u)
    grad_fn = sys.entropy_gradient_fn or (lambda v: fd_gradient(sys.entropy_fn, v))
    hess = fd_jacobian(grad_fn, u)
    return 0.5 * (hess + np.swapaxes(hess, -1, -2))


def _real_spectrum(sys: SystemDescriptor, values: np.ndarray, u: np.ndarray) -> np.ndarray:
    scale = 1.0 + np.max(np.abs(values.real))
    if np.max(np.abs(values.imag)) > HYPERBOLICITY_TOL * scale:
        raise_acontraction_error(
            f"Flux Jacobian of '{sys.name}' has complex eigenvalues", DegeneracyError, state=u
        )
    return values.real


def eigenvalues(sys: SystemDescriptor, u: Any) -> np.ndarray:
    """Sorted eigenvalues of f'(u) for a single state or a batch of states.

    Raises:
        DegeneracyError: If the Jacobian is not hyperbolic at some state.
    """
    u = check_admissible(sys, u)
    values = _real_spectrum(sys, np.linalg.eigvals(flux_jacobian(sys, u)), u)
    return np.sort(values, axis=-1)


def _check_gaps(sys: SystemDescriptor, values: np.ndarray, u: np.ndarray) -> None:
    if values.size < 2:
        return
    scale = np.max(np.abs(values))
    gaps = (values[1] - values[0], values[-1] - values[-2])
    if min(gaps) <= DEGENERACY_GAP * scale or scale == 0.0:
        raise_acontraction_error(
            f"Extremal eigenvalues of '{sys.name}' are degenerate (gaps {gaps})",
            DegeneracyError,
            state=u,
        )


def _directional_nonlinearity(
    sys: SystemDescriptor, u: np.ndarray, r: np.ndarray, index: int
) -> float:
    h = float(np.max(fd_step(u)))
    stacked = np.stack([u + h * r, u - h * r])
    if not np.all(sys.admissible_fn(stacked)):
        return 0.0
    lam = eigenvalues(sys, stacked)[:, index]
    return float((lam[0] - lam[1]) / (2.0 * h))


def eigenstructure(
    sys: SystemDescriptor, u: Any, previous: Optional[EigenBasis] = None
) -> EigenBasis:
    """Normalised eigenstructure of f'(u).

    Right and left eigenvectors have unit length and satisfy ``l^i . r_i > 0``. With no
    ``previous`` basis, genuinely nonlinear families are oriented so that
    ``grad(lambda_i) . r_i < 0`` and linearly degenerate ones so that their largest
    component is positive. Along a continuation, passing ``previous`` keeps each field
    continuous instead.

    Raises:
        DegeneracyError: If the Jacobian is not hyperbolic or its extremal eigenvalues collide.
    """
    u = check_admissible(sys, u, batch=False)
    values, vectors = np.linalg.eig(flux_jacobian(sys, u))
    values = _real_spectrum(sys, values, u)
    order = np.argsort(values)
    values = values[order]
    _check_gaps(sys, values, u)

    right = np.real(vectors[:, order])
    right = right / np.linalg.norm(right, axis=0)
    left = np.linalg.inv(right)
    left = left / np.linalg.norm(left, axis=1)[:, None]

    nonlinearity = np.zeros(sys.dim)
    for i in range(sys.dim):
        r = right[:, i]
        slope = _directional_nonlinearity(sys, u, r, i)
        if previous is not None:
            sign = 1.0 if r @ previous.right[:, i] >= 0.0 else -1.0
        elif abs(slope) > 1e-8 * (1.0 + abs(values[i])):
            sign = -np.sign(slope)
        else:
            sign = 1.0 if r[np.argmax(np.abs(r))] > 0.0 else -1.0
        right[:, i] = sign * r
        nonlinearity[i] = sign * slope
        if left[i] @ right[:, i] < 0.0:
            left[i] = -left[i]

    return EigenBasis(values=values, right=right, left=left, nonlinearity=nonlinearity)


def _negated(fn: Optional[StateFn]) -> Optional[StateFn]:
    if fn is None:
        return None
    return lambda u: -fn(u)


def mirror_system(sys: SystemDescriptor) -> SystemDescriptor:
    """Returns the system ``u_t - f(u)_x = 0``, whose 1-shocks are the n-shocks of ``sys``.

    Mirroring twice returns the original descriptor.
    """
    if sys.mirrored_from is not None:
        return sys.mirrored_from
    logger.debug("Mirroring system '%s'", sys.name)
    return replace(
        sys,
        name=f"mirror({sys.name})",
        flux_fn=_negated(sys.flux_fn),
        entropy_flux_fn=_negated(sys.entropy_flux_fn),
        jacobian_fn=_negated(sys.jacobian_fn),
        mirrored_from=sys,
    )
