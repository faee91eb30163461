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
Module containing hyperbolic system descriptors, their eigenstructure and
entropy operations, the built-in systems, and the structural assumption audit.

.. currentmodule:: acontraction.systems

Functions
-----------

.. autosummary::
   :toctree: ../stubs/

   build_system
   burgers
   isentropic_euler
   full_euler
   linear_system
   flux
   flux_jacobian
   entropy
   entropy_flux
   entropy_pair
   entropy_gradient
   entropy_hessian
   eigenvalues
   eigenstructure
   mirror_system
   invariant_region
   in_working_region
   verify_assumptions

Classes
---------

.. autosummary::
   :toctree: ../stubs/

   SystemDescriptor
   WorkingBox
   EigenBasis
   AuditThresholds
   AssumptionCheck
   AssumptionReport

Exceptions
-----------

.. autosummary::
   :toctree: ../stubs/

   SystemDomainError
   DegeneracyError

"""
from .elements import (
    AssumptionCheck,
    AssumptionReport,
    AuditThresholds,
    EigenBasis,
    SystemDescriptor,
    WorkingBox,
    as_state,
    check_admissible,
)
from .exceptions import DegeneracyError, SystemDomainError
from .maps import (
    SYSTEM_MAP,
    build_system,
    burgers,
    full_euler,
    isentropic_euler,
    linear_system,
    map_system_id_to_factory,
)
from .operations import (
    eigenstructure,
    eigenvalues,
    entropy,
    entropy_flux,
    entropy_gradient,
    entropy_hessian,
    entropy_pair,
    fd_gradient,
    fd_jacobian,
    flux,
    flux_jacobian,
    mirror_system,
)
from .regions import (
    in_invariant_region,
    in_working_region,
    invariant_region,
    invariant_region_bound,
)
from .audit import relative_entropy_bracket, verify_assumptions  # isort: skip

__all__ = [
    "AssumptionCheck",
    "AssumptionReport",
    "AuditThresholds",
    "DegeneracyError",
    "EigenBasis",
    "SYSTEM_MAP",
    "SystemDescriptor",
    "SystemDomainError",
    "WorkingBox",
    "as_state",
    "build_system",
    "burgers",
    "check_admissible",
    "eigenstructure",
    "eigenvalues",
    "entropy",
    "entropy_flux",
    "entropy_gradient",
    "entropy_hessian",
    "entropy_pair",
    "fd_gradient",
    "fd_jacobian",
    "flux",
    "flux_jacobian",
    "full_euler",
    "in_invariant_region",
    "in_working_region",
    "invariant_region",
    "invariant_region_bound",
    "isentropic_euler",
    "linear_system",
    "map_system_id_to_factory",
    "mirror_system",
    "relative_entropy_bracket",
    "verify_assumptions",
]
