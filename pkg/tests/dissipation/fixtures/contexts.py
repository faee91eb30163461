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
Module containing shock context fixtures for the dissipation tests.

For Burgers' equation with u_L = 1, u_R = 0 and a1 = 11 every functional has a
closed form: eta~(u) = 11 (u - 1)^2 - u^2 and D_cont(u) = [11 (u - 1)^3 - u^3] / 3.

"""
import numpy as np
import pytest

from acontraction.relent import ShockContext
from acontraction.systems import burgers, isentropic_euler

ROOT11 = np.sqrt(11.0)
BURGERS_PI = (ROOT11 / (ROOT11 + 1.0), ROOT11 / (ROOT11 - 1.0))


def burgers_q(a, b):
    """Relative entropy flux of Burgers' equation for the entropy u^2."""
    return (a - b) ** 2 * (2.0 * a + b) / 3.0


def burgers_d_rh(u_minus, u_plus, sigma, a1=11.0):
    """Closed-form dissipation of a Burgers discontinuity for u_L = 1, u_R = 0."""
    right = burgers_q(u_plus, 0.0) - sigma * u_plus**2
    left = burgers_q(u_minus, 1.0) - sigma * (u_minus - 1.0) ** 2
    return right - a1 * left


def burgers_d_max(u, a1=11.0):
    """Closed-form maximal dissipation of a Burgers state of the weighted set."""
    s_star = np.sqrt(u**2 - a1 * (u - 1.0) ** 2)
    return burgers_d_rh(u, u - s_star, u - 0.5 * s_star, a1)


@pytest.fixture
def burgers_context():
    """Returns the Burgers shock from 1 to 0 with C = 10."""
    return ShockContext.from_basepoint(burgers(), [1.0], 1.0, C=10.0)


@pytest.fixture
def burgers_weak_context():
    """Returns a Burgers shock of strength 1e-2 from 1 with C = 50."""
    return ShockContext.from_basepoint(burgers(), [1.0], 1e-2, C=50.0)


@pytest.fixture
def burgers_truncated_context():
    """Returns the Burgers shock from 1 to 0 in a box that excludes u_R."""
    return ShockContext.from_basepoint(burgers().with_box([0.1], [5.0]), [1.0], 1.0, C=10.0)


@pytest.fixture
def euler_context():
    """Returns a weak isentropic Euler 1-shock from rest with C = 100."""
    return ShockContext.from_basepoint(isentropic_euler(1.4), [1.0, 0.0], 1e-2, C=100.0)
