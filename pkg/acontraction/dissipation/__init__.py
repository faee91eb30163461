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
Module containing the entropy dissipation functionals, the maximal shock and the
sweeps verifying the negativity of the dissipation over the weighted set.

.. currentmodule:: acontraction.dissipation

Functions
-----------

.. autosummary::
   :toctree: ../stubs/

   d_cont
   d_rh
   d_left
   d_right
   maximal_shock
   d_max
   d_rh_scan
   grad_d_max
   dmax_gradient_check
   hessian_d_max
   find_dcont_max
   sweep_negativity
   scaling_study

Classes
---------

.. autosummary::
   :toctree: ../stubs/

   MaximalShock
   DcontMaximum
   NegativityReport
   ScalingCell
   ScalingFit

Exceptions
-----------

.. autosummary::
   :toctree: ../stubs/

   InconsistentShockError
   PreconditionError
   TruncationError

"""
from .elements import DcontMaximum, MaximalShock, NegativityReport, ScalingCell, ScalingFit
from .exceptions import InconsistentShockError, PreconditionError, TruncationError
from .functionals import d_cont, d_left, d_rh, d_rh_values, d_right, rh_residual
from .shocks import (
    d_max,
    d_rh_scan,
    dmax_gradient_check,
    grad_d_max,
    hessian_d_max,
    maximal_shock,
    maximality_excess,
)
from .verify import find_dcont_max, scaling_study, sweep_negativity

__all__ = [
    "DcontMaximum",
    "InconsistentShockError",
    "MaximalShock",
    "NegativityReport",
    "PreconditionError",
    "ScalingCell",
    "ScalingFit",
    "TruncationError",
    "d_cont",
    "d_left",
    "d_max",
    "d_rh",
    "d_rh_scan",
    "d_rh_values",
    "d_right",
    "dmax_gradient_check",
    "find_dcont_max",
    "grad_d_max",
    "hessian_d_max",
    "maximal_shock",
    "maximality_excess",
    "rh_residual",
    "scaling_study",
    "sweep_negativity",
]
