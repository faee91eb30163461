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
Module containing relative entropy functionals and the geometry of the weighted
sublevel set attached to a shock.

.. currentmodule:: acontraction.relent

Functions
-----------

.. autosummary::
   :toctree: ../stubs/

   rel_entropy
   rel_entropy_flux
   tilde_eta
   tilde_q
   grad_tilde_eta
   in_pi
   boundary_project
   normal
   sample_pi
   pi_diagnostics
   estimate_cstar
   intersect_shock_curve

Classes
---------

.. autosummary::
   :toctree: ../stubs/

   ShockContext
   PiDiagnostics
   CStarEstimate

Exceptions
-----------

.. autosummary::
   :toctree: ../stubs/

   ShockContextError
   WeightWindowError
   BoundaryNotFoundError

"""
from .elements import CStarEstimate, PiDiagnostics, ShockContext
from .exceptions import BoundaryNotFoundError, ShockContextError, WeightWindowError
from .functionals import grad_tilde_eta, rel_entropy, rel_entropy_flux, tilde_eta, tilde_q
from .geometry import (
    boundary_points,
    boundary_project,
    boundary_tolerance,
    box_exit_distance,
    diameter,
    estimate_cstar,
    in_pi,
    intersect_shock_curve,
    masked_tilde_eta,
    normal,
    pi_diagnostics,
    ray_directions,
    ray_distances,
    sample_pi,
)

__all__ = [
    "BoundaryNotFoundError",
    "CStarEstimate",
    "PiDiagnostics",
    "ShockContext",
    "ShockContextError",
    "WeightWindowError",
    "boundary_points",
    "boundary_project",
    "boundary_tolerance",
    "box_exit_distance",
    "diameter",
    "estimate_cstar",
    "grad_tilde_eta",
    "in_pi",
    "intersect_shock_curve",
    "masked_tilde_eta",
    "normal",
    "pi_diagnostics",
    "ray_directions",
    "ray_distances",
    "rel_entropy",
    "rel_entropy_flux",
    "sample_pi",
    "tilde_eta",
    "tilde_q",
]
