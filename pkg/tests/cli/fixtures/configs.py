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
Module containing run configuration fixtures for the command-line tests.

"""
import json

import pytest


@pytest.fixture
def burgers_config_data():
    """Returns a small configuration of the Burgers shock from 1 to 0 with C = 10."""
    return {
        "system": {"id": "burgers"},
        "shock": {"s0": 1.0, "C": 10.0},
        "sweep": {
            "C_list": [10.0, 20.0],
            "s0_list": [0.5, 1.0],
            "n_samples": 300,
            "n_dmax": 20,
            "n_scan": 3,
            "audit_samples": 100,
            "n_stubs": 3,
        },
        "contract": {
            "n_cells": 100,
            "t_end": 0.1,
            "ic": "exact-shock",
            "constants_samples": 1000,
        },
        "seed": 0,
    }


@pytest.fixture
def write_config(tmp_path):
    """Returns a factory writing a configuration to a JSON file."""

    def _write(data, name="config.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return _write
