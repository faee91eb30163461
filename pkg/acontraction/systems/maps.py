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
Module mapping system identifiers to the built-in hyperbolic systems.

"""
from __future__ import annotations

from typing import Any, Callable, Optional, Sequence

import numpy as np

from acontraction.exceptions import raise_acontraction_error

from .elements import SystemDescriptor, WorkingBox
from .exceptions import SystemDomainError


def _identity(u: np.ndarray) -> np.ndarray:
    return np.asarray(u, dtype=float)


def _finite(u: np.ndarray) -> np.ndarray:
    return np.all(np.isfinite(u), axis=-1)


def _check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not gamma > 1.0:
        raise_acontraction_error(
            f"Adiabatic exponent must exceed 1, got {gamma}", SystemDomainError
        )
    return gamma


def burgers() -> SystemDescriptor:
    """Burgers' equation with flux u^2/2 and entropy u^2."""

    def flux_fn(u):
        return 0.5 * u**2

    def entropy_fn(u):
        return u[..., 0] ** 2

    def entropy_flux_fn(u):
        return (2.0 / 3.0) * u[..., 0] ** 3

    def jacobian_fn(u):
        return u[..., :, None]

    def gradient_fn(u):
        return 2.0 * u

    def hessian_fn(u):
        return np.full(u.shape[:-1] + (1, 1), 2.0)

    return SystemDescriptor(
        name="burgers",
        dim=1,
        flux_fn=flux_fn,
        entropy_fn=entropy_fn,
        entropy_flux_fn=entropy_flux_fn,
        admissible_fn=_finite,
        box=WorkingBox((-5.0,), (5.0,), _identity, _identity),
        reference_state=(1.0,),
        jacobian_fn=jacobian_fn,
        entropy_gradient_fn=gradient_fn,
        entropy_hessian_fn=hessian_fn,
    )


def isentropic_euler(gamma: float = 1.4) -> SystemDescriptor:
    """Isentropic Euler equations in (density, momentum) with pressure rho^gamma."""
    gamma = _check_gamma(gamma)

    def flux_fn(u):
        rho, m = u[..., 0], u[..., 1]
        return np.stack([m, m**2 / rho + rho**gamma], axis=-1)

    def entropy_fn(u):
        rho, m = u[..., 0], u[..., 1]
        return m**2 / (2.0 * rho) + rho**gamma / (gamma - 1.0)

    def entropy_flux_fn(u):
        rho, m = u[..., 0], u[..., 1]
        return m**3 / (2.0 * rho**2) + gamma / (gamma - 1.0) * rho ** (gamma - 1.0) * m

    def jacobian_fn(u):
        rho, m = u[..., 0], u[..., 1]
        row0 = np.stack([np.zeros_like(rho), np.ones_like(rho)], axis=-1)
        row1 = np.stack([-(m**2) / rho**2 + gamma * rho ** (gamma - 1.0), 2.0 * m / rho], axis=-1)
        return np.stack([row0, row1], axis=-2)

    def gradient_fn(u):
        rho, m = u[..., 0], u[..., 1]
        return np.stack(
            [-(m**2) / (2.0 * rho**2) + gamma / (gamma - 1.0) * rho ** (gamma - 1.0), m / rho],
            axis=-1,
        )

    def hessian_fn(u):
        rho, m = u[..., 0], u[..., 1]
        off = -m / rho**2
        row0 = np.stack([m**2 / rho**3 + gamma * rho ** (gamma - 2.0), off], axis=-1)
        row1 = np.stack([off, 1.0 / rho], axis=-1)
        return np.stack([row0, row1], axis=-2)

    def admissible_fn(u):
        return _finite(u) & (u[..., 0] > 0.0)

    def to_primitive(u):
        u = np.asarray(u, dtype=float)
        return np.stack([u[..., 0], u[..., 1] / u[..., 0]], axis=-1)

    def to_conserved(w):
        w = np.asarray(w, dtype=float)
        return np.stack([w[..., 0], w[..., 0] * w[..., 1]], axis=-1)

    return SystemDescriptor(
        name="isentropic_euler",
        dim=2,
        flux_fn=flux_fn,
        entropy_fn=entropy_fn,
        entropy_flux_fn=entropy_flux_fn,
        admissible_fn=admissible_fn,
        box=WorkingBox((0.1, -10.0), (10.0, 10.0), to_primitive, to_conserved),
        reference_state=(1.0, 0.0),
        jacobian_fn=jacobian_fn,
        entropy_gradient_fn=gradient_fn,
        entropy_hessian_fn=hessian_fn,
        params={"gamma": gamma},
    )


def full_euler(gamma: float = 1.4) -> SystemDescriptor:
    """Full Euler equations in (density, momentum, total energy) for a polytropic gas."""
    gamma = _check_gamma(gamma)

    def _internal(u):
        rho, m, energy = u[..., 0], u[..., 1], u[..., 2]
        return rho, m, energy, energy - 0.5 * m**2 / rho

    def flux_fn(u):
        rho, m, energy, eps = _internal(u)
        v = m / rho
        p = (gamma - 1.0) * eps
        return np.stack([m, m * v + p, (energy + p) * v], axis=-1)

    def entropy_fn(u):
        rho, _, _, eps = _internal(u)
        return gamma * rho * np.log(rho) - rho * np.log(eps)

    def entropy_flux_fn(u):
        return u[..., 1] / u[..., 0] * entropy_fn(u)

    def jacobian_fn(u):
        rho, m, energy, eps = _internal(u)
        v = m / rho
        enthalpy = (energy + (gamma - 1.0) * eps) / rho
        zero, one = np.zeros_like(rho), np.ones_like(rho)
        row0 = np.stack([zero, one, zero], axis=-1)
        row1 = np.stack(
            [0.5 * (gamma - 3.0) * v**2, (3.0 - gamma) * v, (gamma - 1.0) * one], axis=-1
        )
        row2 = np.stack(
            [
                0.5 * (gamma - 1.0) * v**3 - enthalpy * v,
                enthalpy - (gamma - 1.0) * v**2,
                gamma * v,
            ],
            axis=-1,
        )
        return np.stack([row0, row1, row2], axis=-2)

    def gradient_fn(u):
        rho, m, _, eps = _internal(u)
        return np.stack(
            [
                gamma * np.log(rho) + gamma - np.log(eps) - m**2 / (2.0 * rho * eps),
                m / eps,
                -rho / eps,
            ],
            axis=-1,
        )

    def hessian_fn(u):
        rho, m, _, eps = _internal(u)
        eps2 = eps**2
        h_rr = gamma / rho + m**4 / (4.0 * rho**3 * eps2)
        h_rm = -(m**3) / (2.0 * rho**2 * eps2)
        h_re = -1.0 / eps + m**2 / (2.0 * rho * eps2)
        h_mm = 1.0 / eps + m**2 / (rho * eps2)
        h_me = -m / eps2
        h_ee = rho / eps2
        return np.stack(
            [
                np.stack([h_rr, h_rm, h_re], axis=-1),
                np.stack([h_rm, h_mm, h_me], axis=-1),
                np.stack([h_re, h_me, h_ee], axis=-1),
            ],
            axis=-2,
        )

    def admissible_fn(u):
        ok = _finite(u)
        rho = np.where(ok, u[..., 0], 1.0)
        eps = np.where(ok, u[..., 2] - 0.5 * u[..., 1] ** 2 / np.where(rho > 0.0, rho, 1.0), 1.0)
        return ok & (rho > 0.0) & (eps > 0.0)

    def to_primitive(u):
        u = np.asarray(u, dtype=float)
        rho, m, _, eps = _internal(u)
        return np.stack([rho, m / rho, (gamma - 1.0) * eps], axis=-1)

    def to_conserved(w):
        w = np.asarray(w, dtype=float)
        rho, v, p = w[..., 0], w[..., 1], w[..., 2]
        return np.stack([rho, rho * v, p / (gamma - 1.0) + 0.5 * rho * v**2], axis=-1)

    return SystemDescriptor(
        name="full_euler",
        dim=3,
        flux_fn=flux_fn,
        entropy_fn=entropy_fn,
        entropy_flux_fn=entropy_flux_fn,
        admissible_fn=admissible_fn,
        box=WorkingBox((0.1, -10.0, 0.1), (10.0, 10.0, 10.0), to_primitive, to_conserved),
        reference_state=(1.0, 0.0, 2.5),
        jacobian_fn=jacobian_fn,
        entropy_gradient_fn=gradient_fn,
        entropy_hessian_fn=hessian_fn,
        params={"gamma": gamma},
    )


def linear_system(matrix: Optional[Sequence[Sequence[float]]] = None) -> SystemDescriptor:
    """Linear system f(u) = A u with symmetric A and entropy |u|^2 / 2."""
    a = np.array([[0.0, 1.0], [1.0, 0.0]] if matrix is None else matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or not np.allclose(a, a.T):
        raise_acontraction_error(
            "Linear system matrix must be square and symmetric", SystemDomainError
        )
    n = a.shape[0]

    def flux_fn(u):
        return u @ a.T

    def entropy_fn(u):
        return 0.5 * np.sum(u**2, axis=-1)

    def entropy_flux_fn(u):
        return 0.5 * np.einsum("...i,ij,...j->...", u, a, u)

    def jacobian_fn(u):
        return np.broadcast_to(a, u.shape[:-1] + (n, n)).copy()

    def hessian_fn(u):
        return np.broadcast_to(np.eye(n), u.shape[:-1] + (n, n)).copy()

    return SystemDescriptor(
        name="linear",
        dim=n,
        flux_fn=flux_fn,
        entropy_fn=entropy_fn,
        entropy_flux_fn=entropy_flux_fn,
        admissible_fn=_finite,
        box=WorkingBox((-1.0,) * n, (1.0,) * n, _identity, _identity),
        reference_state=(0.0,) * n,
        jacobian_fn=jacobian_fn,
        entropy_gradient_fn=_identity,
        entropy_hessian_fn=hessian_fn,
        params={"matrix": a.tolist()},
    )


SYSTEM_MAP: dict[str, Callable[..., SystemDescriptor]] = {
    "burgers": burgers,
    "isentropic_euler": isentropic_euler,
    "full_euler": full_euler,
    "linear": linear_system,
}


def map_system_id_to_factory(system_id: str) -> Callable[..., SystemDescriptor]:
    """Maps a system identifier to the factory building it.

    Args:
        system_id: One of the keys of ``SYSTEM_MAP``.

    Returns:
        The factory callable.

    Raises:
        SystemDomainError: If the identifier is not registered.
    """
    try:
        return SYSTEM_MAP[system_id]
    except KeyError as err:
        raise SystemDomainError(f"Unsupported system '{system_id}'") from err


def build_system(
    system_id: str,
    params: Optional[dict[str, Any]] = None,
    box: Optional[dict[str, Sequence[float]]] = None,
) -> SystemDescriptor:
    """Builds a registered system, optionally overriding its working box."""
    factory = map_system_id_to_factory(system_id)
    try:
        sys = factory(**(params or {}))
    except TypeError as err:
        raise SystemDomainError(f"Invalid parameters {params} for system '{system_id}'") from err
    if box is not None:
        sys = sys.with_box(box["lower"], box["upper"])
    return sys
