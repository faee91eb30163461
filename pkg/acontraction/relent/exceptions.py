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
Module defining exceptions for errors raised by relative entropy functionals and the
geometry of the weighted sublevel set.

"""
from acontraction.exceptions import AContractionError, ConfigError


class ShockContextError(AContractionError):
    """Class for errors raised when a shock violates Rankine-Hugoniot or Liu admissibility."""


class WeightWindowError(ConfigError):
    """Class for errors raised when the weight ratio lies outside its admissible window."""


class BoundaryNotFoundError(AContractionError):
    """Class for errors raised when a ray never crosses the boundary of the weighted set."""
