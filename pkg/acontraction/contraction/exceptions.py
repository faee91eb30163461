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
Module defining exceptions for errors raised by the finite-volume solver and the shift.

"""
from acontraction.exceptions import AContractionError, ConfigError


class BlowUpError(AContractionError):
    """Class for errors raised when a cell state leaves the admissible region or the working box."""


class ShiftDomainError(AContractionError):
    """Class for errors raised when the shift leaves the grid interior or its constants conflict."""


class UnknownInitialDataError(ConfigError):
    """Class for errors raised when an unsupported kind of initial data is requested."""
