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
Module defining exceptions for errors raised by acontraction.

"""
from __future__ import annotations

import logging
from typing import Any, Optional, Type

import numpy as np


class AContractionError(Exception):
    """Base class for errors raised by acontraction."""


class ConfigError(AContractionError):
    """Class for errors raised when a run configuration is malformed or inconsistent."""


class VerificationError(AContractionError):
    """Class for errors raised when a verification check must abort its stage."""


def raise_acontraction_error(
    message: Optional[str] = None,
    err_type: Type[Exception] = AContractionError,
    state: Optional[Any] = None,
    raised_from: Optional[Exception] = None,
) -> None:
    """Raises an acontraction error with optional chaining from another exception.

    Args:
        message: The error message. If not provided, a default message will be used.
        err_type: The type of error to raise.
        state: The state vector at which the error occurred, logged when given.
        raised_from: Optional exception from which this error was raised (chaining).

    Raises:
        err_type: The error type initialized with the specified message and chained exception.
    """
    if state is not None:
        logging.error("Error at state %s", np.array2string(np.asarray(state), precision=12))

    if raised_from:
        raise err_type(message) from raised_from
    raise err_type(message)
