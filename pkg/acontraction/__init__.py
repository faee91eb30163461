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
This top level module contains the a-contraction verification engine: hyperbolic
systems, relative entropy, shock curves, dissipation functionals and shifted
contraction runs.

.. currentmodule:: acontraction

Functions
-----------

.. autosummary::
   :toctree: ../stubs/

   dumps
   raise_acontraction_error


Exceptions
-----------

.. autosummary::
   :toctree: ../stubs/

   AContractionError
   ConfigError
   VerificationError

"""
import importlib
from typing import TYPE_CHECKING

from ._version import __version__
from .exceptions import (
    AContractionError,
    ConfigError,
    VerificationError,
    raise_acontraction_error,
)
from .serialization import dumps

__all__ = [
    "__version__",
    "AContractionError",
    "ConfigError",
    "VerificationError",
    "dumps",
    "raise_acontraction_error",
    "build_system",
    "verify_assumptions",
    "ShockContext",
    "trace_shock_curve",
    "sweep_negativity",
    "scaling_study",
    "run_contraction",
    "RunConfig",
]

_lazy = {
    "systems": ["build_system", "verify_assumptions"],
    "relent": ["ShockContext"],
    "hugoniot": ["trace_shock_curve"],
    "dissipation": ["sweep_negativity", "scaling_study"],
    "contraction": ["run_contraction"],
    "cli": ["RunConfig"],
}

if TYPE_CHECKING:
    from .cli import RunConfig
    from .contraction import run_contraction
    from .dissipation import scaling_study, sweep_negativity
    from .hugoniot import trace_shock_curve
    from .relent import ShockContext
    from .systems import build_system, verify_assumptions


def __getattr__(name):
    for mod_name, objects in _lazy.items():
        if name == mod_name:
            module = importlib.import_module(f".{mod_name}", __name__)
            globals()[mod_name] = module
            return module

        if name in objects:
            module = importlib.import_module(f".{mod_name}", __name__)
            obj = getattr(module, name)
            globals()[name] = obj
            return obj

    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


def __dir__():
    return sorted(
        __all__ + list(_lazy.keys()) + [item for sublist in _lazy.values() for item in sublist]
    )
