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
Module containing the entropic finite-volume solver, the Filippov shift driven by
the velocity functional, and the run harness tracking the weighted pseudo-distance.

.. currentmodule:: acontraction.contraction

Functions
-----------

.. autosummary::
   :toctree: ../stubs/

   fv_step
   make_ic
   level_set_position
   rusanov_flux
   compute_constants
   velocity_functional
   filippov_step
   pseudo_distance
   run_contraction

Classes
---------

.. autosummary::
   :toctree: ../stubs/

   GridSpec
   FVField
   ShiftConstants
   FilippovStep
   ShiftPath
   ContractionRun
   ContractionMonitor

Exceptions
-----------

.. autosummary::
   :toctree: ../stubs/

   BlowUpError
   ShiftDomainError
   UnknownInitialDataError

"""
from .elements import (
    ContractionRun,
    FilippovStep,
    FVField,
    GridSpec,
    ShiftConstants,
    ShiftPath,
)
from .exceptions import BlowUpError, ShiftDomainError, UnknownInitialDataError
from .monitor import ContractionMonitor
from .run import default_k_tol, run_contraction
from .scheme import fv_step, level_set_position, make_ic, max_wave_speed, rusanov_flux, stable_dt
from .shift import compute_constants, filippov_step, pseudo_distance, velocity_functional

__all__ = [
    "BlowUpError",
    "ContractionMonitor",
    "ContractionRun",
    "FVField",
    "FilippovStep",
    "GridSpec",
    "ShiftConstants",
    "ShiftDomainError",
    "ShiftPath",
    "UnknownInitialDataError",
    "compute_constants",
    "default_k_tol",
    "filippov_step",
    "fv_step",
    "level_set_position",
    "make_ic",
    "max_wave_speed",
    "pseudo_distance",
    "run_contraction",
    "rusanov_flux",
    "stable_dt",
    "velocity_functional",
]
