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
Module containing shock context fixtures for unit tests.

The Burgers context has u_L = 1, u_R = 0, sigma = 1/2 and a1 = 11, for which the
weighted set is the interval between sqrt(11) / (sqrt(11) + 1) and
sqrt(11) / (sqrt(11) - 1).

"""
import numpy as np
import pytest

from acontraction.relent import ShockContext
from acontraction.systems import burgers, isentropic_euler

ROOT11 = np.sqrt(11.0)
BURGERS_PI = (ROOT11 / (ROOT11 + 1.0), ROOT11 / (ROOT11 - 1.0))


@pytest.fixture
def burgers_context():
    """Returns the Burgers shock from 1 to 0 with C = 10."""
    return ShockContext.from_basepoint(burgers(), [1.0], 1.0, C=10.0)


@pytest.fixture
def euler_context():
    """Returns a weak isentropic Euler 1-shock from rest with C = 100."""
    return ShockContext.from_basepoint(isentropic_euler(1.4), [1.0, 0.0], 1e-2, C=100.0)


@pytest.fixture
def euler_context_family2():
    """Returns a weak isentropic Euler 2-shock from rest with C = 100."""
    return ShockContext.from_basepoint(
        isentropic_euler(1.4), [1.0, 0.0], 1e-2, C=100.0, family=2
    )
