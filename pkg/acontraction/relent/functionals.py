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
Module defining the relative entropy, the relative entropy flux and their weighted
combinations attached to a shock.

Near the diagonal both relative quantities are evaluated through their integral
(Taylor remainder) representations with Gauss-Legendre quadrature, which keeps full
relative precision where the direct formula cancels catastrophically.

"""
from __future__ import annotations

from typing import TYPE_CHECKING, Any, Union

import numpy as np

from acontraction.systems.elements import SystemDescriptor, check_admissible
from acontraction.systems.operations import entropy_gradient, entropy_hessian, flux_jacobian

if TYPE_CHECKING:
    from .elements import ShockContext

NEAR_DIAGONAL = 1e-3

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(6)
_NODES = 0.5 * (_NODES + 1.0)
_WEIGHTS = 0.5 * _WEIGHTS

Scalar = Union[float, np.ndarray]


def _pair(sys: SystemDescriptor, a: Any, b: Any) -> tuple[np.ndarray, np.ndarray, bool]:
    a = check_admissible(sys, a)
    b = check_admissible(sys, b)
    scalar = a.ndim == 1 and b.ndim == 1
    a, b = np.broadcast_arrays(np.atleast_2d(a), np.atleast_2d(b))
    return a, b, scalar


def _near(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.linalg.norm(a - b, axis=-1) <= NEAR_DIAGONAL * (1.0 + np.linalg.norm(b, axis=-1))


def _entropy_remainder(sys: SystemDescriptor, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    d = a - b
    pts = b[:, None, :] + _NODES[None, :, None] * d[:, None, :]
    hess = entropy_hessian(sys, pts)
    quad = np.einsum("mi,mkij,mj->mk", d, hess, d)
    return quad @ (_WEIGHTS * (1.0 - _NODES))


def _flux_remainder(sys: SystemDescriptor, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    d = a - b
    outer = b[:, None, :] + _NODES[None, :, None] * d[:, None, :]
    jac = flux_jacobian(sys, outer)
    inner = (
        b[:, None, None, :]
        + (_NODES[None, :, None, None] * _NODES[None, None, :, None]) * d[:, None, None, :]
    )
    hess = entropy_hessian(sys, inner)
    # grad eta(b + tau d) - grad eta(b) = tau * int_0^1 H(b + rho tau d) d drho
    hd = np.einsum("mkrij,mj,r->mki", hess, d, _WEIGHTS)
    hd = hd * _NODES[None, :, None]
    jd = np.einsum("mkij,mj->mki", jac, d)
    return np.einsum("mki,mki->mk", hd, jd) @ _WEIGHTS


def rel_entropy(sys: SystemDescriptor, a: Any, b: Any) -> Scalar:
    """Relative entropy ``eta(a|b) = eta(a) - eta(b) - grad eta(b) . (a - b)``.

    Args:
        sys: The system providing the entropy.
        a: State or batch of states of shape ``(..., n)``.
        b: Reference state or batch, broadcast against ``a``.

    Returns:
        A float for two single states, an array otherwise.

    Raises:
        SystemDomainError: If a state is inadmissible.
    """
    a, b, scalar = _pair(sys, a, b)
    value = (
        sys.entropy_fn(a)
        - sys.entropy_fn(b)
        - np.sum(entropy_gradient(sys, b) * (a - b), axis=-1)
    )
    near = _near(a, b)
    if np.any(near):
        value = np.where(near, 0.0, value)
        value[near] = _entropy_remainder(sys, a[near], b[near])
    return float(value[0]) if scalar else value


def rel_entropy_flux(sys: SystemDescriptor, a: Any, b: Any) -> Scalar:
    """Relative entropy flux ``q(a;b) = q(a) - q(b) - grad eta(b) . (f(a) - f(b))``."""
    a, b, scalar = _pair(sys, a, b)
    value = (
        sys.entropy_flux_fn(a)
        - sys.entropy_flux_fn(b)
        - np.sum(entropy_gradient(sys, b) * (sys.flux_fn(a) - sys.flux_fn(b)), axis=-1)
    )
    near = _near(a, b)
    if np.any(near):
        value = np.where(near, 0.0, value)
        value[near] = _flux_remainder(sys, a[near], b[near])
    return float(value[0]) if scalar else value


def tilde_eta(ctx: ShockContext, u: Any) -> Scalar:
    """Weighted relative entropy ``(1 + C s0) eta(u|u_L) - eta(u|u_R)``."""
    sys = ctx.system
    return ctx.a1 * rel_entropy(sys, u, ctx.u_left) - ctx.a2 * rel_entropy(sys, u, ctx.u_right)


def tilde_q(ctx: ShockContext, u: Any) -> Scalar:
    """Weighted relative entropy flux ``(1 + C s0) q(u;u_L) - q(u;u_R)``."""
    sys = ctx.system
    return ctx.a1 * rel_entropy_flux(sys, u, ctx.u_left) - ctx.a2 * rel_entropy_flux(
        sys, u, ctx.u_right
    )


def grad_tilde_eta(ctx: ShockContext, u: Any) -> np.ndarray:
    """Analytic gradient of the weighted relative entropy.

    Equals ``C s0 (grad eta(u) - grad eta(u_L)) + grad eta(u_R) - grad eta(u_L)``.
    """
    sys = ctx.system
    grad_l = entropy_gradient(sys, ctx.u_left)
    grad_r = entropy_gradient(sys, ctx.u_right)
    return (ctx.a1 - ctx.a2) * (entropy_gradient(sys, u) - grad_l) + ctx.a2 * (grad_r - grad_l)
