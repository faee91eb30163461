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
Module containing finite-difference oracles shared by the unit tests.

"""
from typing import Callable

import numpy as np


def fd5_gradient(fn: Callable[[np.ndarray], float], u: np.ndarray, h: float = 1e-4) -> np.ndarray:
    """Five-point central difference gradient of a scalar function of one state."""
    u = np.asarray(u, dtype=float)
    grad = np.zeros_like(u)
    for k in range(u.size):
        e = np.zeros_like(u)
        e[k] = h
        grad[k] = (-fn(u + 2 * e) + 8 * fn(u + e) - 8 * fn(u - e) + fn(u - 2 * e)) / (12 * h)
    return grad


def fd5_jacobian(
    fn: Callable[[np.ndarray], np.ndarray], u: np.ndarray, h: float = 1e-4
) -> np.ndarray:
    """Five-point central difference Jacobian of a vector function of one state."""
    u = np.asarray(u, dtype=float)
    cols = []
    for k in range(u.size):
        e = np.zeros_like(u)
        e[k] = h
        cols.append(
            (-fn(u + 2 * e) + 8 * fn(u + e) - 8 * fn(u - e) + fn(u - 2 * e)) / (12 * h)
        )
    return np.stack(cols, axis=-1)


def assert_close(actual, expected, rtol: float = 1e-6, atol: float = 1e-9) -> None:
    """Asserts closeness with a message showing both values."""
    assert np.allclose(actual, expected, rtol=rtol, atol=atol), f"{actual} != {expected}"
