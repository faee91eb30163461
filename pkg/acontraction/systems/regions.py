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
Module defining the working region of a system and the invariant region of the
isentropic Euler system.

"""
from __future__ import annotations

import math
from typing import Any

import numpy as np

from acontraction.exceptions import raise_acontraction_error

from .elements import SystemDescriptor, check_admissible
from .exceptions import SystemDomainError


def _gamma(sys: SystemDescriptor) -> float:
    base = sys.mirrored_from or sys
    if base.name != "isentropic_euler":
        raise_acontraction_error(
            f"Invariant regions are only defined for isentropic Euler, not '{sys.name}'",
            SystemDomainError,
        )
    return float(base.params["gamma"])


def invariant_region(sys: SystemDescriptor, u: Any) -> np.ndarray:
    """Riemann invariants ``(v - c1 rho^((gamma-1)/2), v + c1 rho^((gamma-1)/2))``.

    The constant is ``c1 = 2 sqrt(gamma) / (gamma - 1)``, so that both invariants are
    constant across rarefaction waves of the opposite family.
    """
    gamma = _gamma(sys)
    u = check_admissible(sys, u)
    c1 = 2.0 * math.sqrt(gamma) / (gamma - 1.0)
    rho, v = u[..., 0], u[..., 1] / u[..., 0]
    sound = c1 * rho ** (0.5 * (gamma - 1.0))
    return np.stack([v - sound, v + sound], axis=-1)


def in_invariant_region(sys: SystemDescriptor, u: Any, bound: float) -> np.ndarray:
    """Whether states satisfy ``-bound < w1 <= w2 < bound``."""
    w = invariant_region(sys, u)
    return (w[..., 0] > -bound) & (w[..., 1] < bound) & (w[..., 0] <= w[..., 1])


def invariant_region_bound(sys: SystemDescriptor, states: np.ndarray) -> float:
    """Smallest bound whose invariant region contains every given state."""
    w = invariant_region(sys, states)
    return float(np.max(np.abs(w)))


def in_working_region(sys: SystemDescriptor, u: Any) -> np.ndarray:
    """Whether states lie in the working box of ``sys`` and in its admissible region."""
    arr = np.asarray(u, dtype=float)
    flat = arr.reshape(-1, arr.shape[-1])
    inside = np.asarray(sys.box.contains(flat), dtype=bool)
    inside[inside] = np.asarray(sys.admissible_fn(flat[inside]), dtype=bool)
    return inside.reshape(arr.shape[:-1])
