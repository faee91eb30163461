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
Module containing unit tests for the contraction run harness.

"""
import numpy as np
import pytest

from acontraction.contraction import (
    BlowUpError,
    GridSpec,
    compute_constants,
    default_k_tol,
    make_ic,
    run_contraction,
)
from acontraction.exceptions import ConfigError
from acontraction.relent import ShockContext
from acontraction.systems import isentropic_euler


def test_exact_burgers_shock_contracts(burgers_context, grid, burgers_constants):
    """Test that every check holds for an exact Burgers shock."""
    ic = make_ic("exact-shock", burgers_context, grid)
    run = run_contraction(burgers_context, ic, 0.2, burgers_constants)
    assert run.passed, run.failed()
    assert run.terminated is None
    assert run.energies[0] == pytest.approx(0.0, abs=1e-14)
    assert len(run.energies) == len(run.path) + 1
    assert run.times[-1] == pytest.approx(0.2)
    assert run.path.steps[-1].h_next == pytest.approx(0.1, abs=4 * grid.dx)
    assert run.case2_violations == 0
    assert run.k_tol <= run.k_tol_allowed == default_k_tol(burgers_context)
    assert run.checks["interface_dissipation"]
    assert run.dissipation_tol == pytest.approx(run.k_tol_allowed * grid.dx)
    assert "energy_decay" not in run.checks


def test_perturbed_burgers_shock(burgers_context, grid, burgers_constants):
    """Test that every check holds for a perturbed Burgers shock."""
    ic = make_ic("perturbed-shock", burgers_context, grid, {"amplitude": 0.05}, seed=2)
    run = run_contraction(burgers_context, ic, 0.1, burgers_constants)
    assert run.passed, run.failed()
    assert run.flagged_steps == 0
    assert run.case2_violations == 0


def test_exact_euler_shock(euler_context, grid):
    """Test that the shift follows a weak isentropic Euler shock."""
    constants = compute_constants(euler_context, n_samples=2000, seed=0)
    ic = make_ic("exact-shock", euler_context, grid)
    run = run_contraction(euler_context, ic, 0.05, constants)
    assert run.passed, run.failed()
    expected = euler_context.sigma * 0.05
    assert run.path.steps[-1].h_next == pytest.approx(expected, abs=4 * grid.dx)


def test_perturbed_euler_shock_contracts():
    """Test that the pseudo-distance decays for a perturbed isentropic Euler shock."""
    ctx = ShockContext.from_basepoint(isentropic_euler(1.4), [1.0, 0.0], 0.05, C=100.0)
    grid = GridSpec(-1.0, 1.0, 400)
    ic = make_ic("perturbed-shock", ctx, grid, seed=0)
    run = run_contraction(ctx, ic, 0.5, compute_constants(ctx, seed=0), expect_decay=True)
    assert run.passed, run.failed()
    assert run.checks["energy_decay"]
    assert run.energies[-1] < run.energies[0]
    assert run.dissipation_max <= 0.0
    assert run.case2_violations == 0


def test_interface_dissipation_above_tolerance_fails(burgers_context, grid, burgers_constants):
    """Test that a step dissipating above the tolerance fails the run."""
    ic = make_ic("exact-shock", burgers_context, grid)
    run = run_contraction(burgers_context, ic, 0.02, burgers_constants, dissipation_tol=-1.0)
    assert not run.checks["interface_dissipation"]
    assert "interface_dissipation" in run.failed()
    assert not run.passed


def test_energy_decay_required_on_request(burgers_context, grid, burgers_constants):
    """Test that a run whose pseudo-distance grows fails when decay is required."""
    ic = make_ic("exact-shock", burgers_context, grid)
    run = run_contraction(burgers_context, ic, 0.05, burgers_constants, expect_decay=True)
    assert run.energies[-1] > run.energies[0]
    assert run.failed() == ["energy_decay"]


def test_run_stops_when_shift_leaves_grid(burgers_context, burgers_constants):
    """Test that a shift reaching the end of the grid terminates the run."""
    grid = GridSpec(-0.2, 0.2, 20)
    ic = make_ic("exact-shock", burgers_context, grid)
    run = run_contraction(burgers_context, ic, 1.0, burgers_constants)
    assert run.terminated is not None
    assert "left the grid interior" in run.terminated
    assert not run.checks["completed"]
    assert not run.passed
    assert run.times[-1] < 1.0


def test_run_rejects_nonpositive_time(burgers_context, grid, burgers_constants):
    """Test that the final time must be positive."""
    ic = make_ic("exact-shock", burgers_context, grid)
    with pytest.raises(ConfigError, match="Final time"):
        run_contraction(burgers_context, ic, 0.0, burgers_constants)


def test_run_rejects_data_outside_box(burgers_context, grid, burgers_constants):
    """Test that initial data leaving the working box raises."""
    ic = make_ic("perturbed-shock", burgers_context, grid, {"amplitude": 100.0})
    with pytest.raises(BlowUpError, match="left the working box"):
        run_contraction(burgers_context, ic, 0.1, burgers_constants)


def test_run_snapshots_and_rows(burgers_context, grid, burgers_constants):
    """Test the snapshots and the per-step rows of a run."""
    ic = make_ic("exact-shock", burgers_context, grid)
    run = run_contraction(burgers_context, ic, 0.02, burgers_constants, snapshot_every=10)
    assert len(run.snapshots) == 1 + len(run.path) // 10
    assert len(run.snapshot_rows()) == len(run.snapshots) * grid.n_cells
    rows = run.csv_rows()
    assert len(rows) == len(run.path)
    assert set(rows[0]) == {"t", "h", "h_dot", "E", "case", "dissipation"}

    summary = run.to_dict()
    assert summary["n_steps"] == len(run.path)
    assert summary["E0"] == pytest.approx(run.energies[0])
    assert sum(summary["cases"].values()) == len(run.path)
    np.testing.assert_array_equal(run.final.shape, (grid.n_cells, 1))
