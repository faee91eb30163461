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
Module containing the command-line driver: run configurations, the verification
stages and report bundling.

.. currentmodule:: acontraction.cli

Functions
-----------

.. autosummary::
   :toctree: ../stubs/

   main
   load_config
   config_hash
   run_stages
   write_bundle
   build_context
   cmd_verify_assumptions
   cmd_verify_dissipation
   cmd_scaling_study
   cmd_contract

Classes
---------

.. autosummary::
   :toctree: ../stubs/

   RunConfig
   SystemConfig
   ShockConfig
   SweepConfig
   ContractConfig
   ToleranceConfig
   ReportBundle
   StageReport
   StageFailure
   DissipationReport

"""
from .config import (
    STAGES,
    ContractConfig,
    RunConfig,
    ShockConfig,
    SweepConfig,
    SystemConfig,
    ToleranceConfig,
    config_hash,
    load_config,
)
from .elements import DissipationReport, ReportBundle, StageFailure, StageReport
from .commands import (  # isort: skip
    build_context,
    cmd_contract,
    cmd_scaling_study,
    cmd_verify_assumptions,
    cmd_verify_dissipation,
    main,
    run_stages,
    write_bundle,
)

__all__ = [
    "STAGES",
    "ContractConfig",
    "DissipationReport",
    "ReportBundle",
    "RunConfig",
    "ShockConfig",
    "StageFailure",
    "StageReport",
    "SweepConfig",
    "SystemConfig",
    "ToleranceConfig",
    "build_context",
    "cmd_contract",
    "cmd_scaling_study",
    "cmd_verify_assumptions",
    "cmd_verify_dissipation",
    "config_hash",
    "load_config",
    "main",
    "run_stages",
    "write_bundle",
]
