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
Module defining exceptions for errors raised by hyperbolic system evaluations.

"""
from acontraction.exceptions import AContractionError


class SystemDomainError(AContractionError):
    """Class for errors raised when a state lies outside the admissible region of its system."""


class DegeneracyError(AContractionError):
    """Class for errors raised when the eigenstructure of a system degenerates."""
