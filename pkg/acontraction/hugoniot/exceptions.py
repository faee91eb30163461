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
Module defining exceptions for errors raised while tracing Hugoniot curves.

"""
from __future__ import annotations

from typing import TYPE_CHECKING, Optional

from acontraction.exceptions import AContractionError

if TYPE_CHECKING:
    from .elements import ShockCurve


class ContinuationError(AContractionError):
    """Class for errors raised when Newton continuation of a shock curve fails.

    The curve traced up to the failure is kept in ``partial`` when available.
    """

    def __init__(self, message: Optional[str] = None, partial: Optional[ShockCurve] = None):
        super().__init__(message)
        self.partial = partial


class CurveRangeError(AContractionError):
    """Class for errors raised when a strength lies outside the traced part of a curve."""


class IntegrationError(AContractionError):
    """Class for errors raised when adaptive quadrature fails to reach its tolerance."""
