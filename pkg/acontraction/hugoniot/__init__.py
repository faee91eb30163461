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
Module containing Hugoniot shock curve functionality.

.. currentmodule:: acontraction.hugoniot

Functions
-----------

.. autosummary::
   :toctree: ../stubs/

   trace_shock_curve
   shock_at
   speed_derivative
   check_asymptotics
   lax_identity_residual
   lax_quadrature_orders

Classes
---------

.. autosummary::
   :toctree: ../stubs/

   ShockPoint
   ShockCurve
   ShockSolver
   AsymptoticsReport

Exceptions
-----------

.. autosummary::
   :toctree: ../stubs/

   ContinuationError
   CurveRangeError
   IntegrationError

"""
from .checks import (
    AsymptoticsReport,
    check_asymptotics,
    lax_identity_residual,
    lax_quadrature_orders,
)
from .elements import ShockCurve, ShockPoint
from .exceptions import ContinuationError, CurveRangeError, IntegrationError
from .solver import ShockSolver, shock_at, speed_derivative, trace_shock_curve

__all__ = [
    "AsymptoticsReport",
    "ContinuationError",
    "CurveRangeError",
    "IntegrationError",
    "ShockCurve",
    "ShockPoint",
    "ShockSolver",
    "check_asymptotics",
    "lax_identity_residual",
    "lax_quadrature_orders",
    "shock_at",
    "speed_derivative",
    "trace_shock_curve",
]
