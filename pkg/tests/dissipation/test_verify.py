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
Module containing unit tests for the negativity sweeps and the scaling study.

"""
import json

import numpy as np
import pytest

from acontraction.dissipation import d_cont, find_dcont_max, scaling_study, sweep_negativity
from acontraction.dissipation.verify import SLOPE_WINDOW
from acontraction.exceptions import ConfigError
from acontraction.relent import ShockContext, sample_pi
from acontraction.systems import burgers, isentropic_euler

from .fixtures.contexts import BURGERS_PI, ROOT11


def test_dcont_maximum_burgers(burgers_context):
    """Test that the Burgers maximum sits on the root closer to u_R."""
    found = find_dcont_max(burgers_context)
    assert found.value == pytest.approx(-11.0 / (3.0 * (ROOT11 + 1.0) ** 2), rel=1e-8)
    assert found.u_star[0] == pytest.approx(BURGERS_PI[0], rel=1e-8)
    assert found.outward > 0.0
    assert found.normal_angle == pytest.approx(0.0, abs=1e-12)
    assert found.diameter == pytest.approx(BURGERS_PI[1] - BURGERS_PI[0], rel=1e-8)
    assert found.passed


def test_dcont_maximum_euler(euler_context):
    """Test the maximiser of the continuous dissipation for isentropic Euler."""
    found = find_dcont_max(euler_context, n_rays=32)
    assert found.value < 0.0
    assert found.outward > 0.0
    assert found.eta_residual < 1e-10
    assert found.normal_angle < 1e-3

    samples = sample_pi(euler_context, 300, np.random.default_rng(2))
    values = d_cont(euler_context, samples)
    assert np.max(values) <= found.value + 1e-9 * abs(found.value)


def test_sweep_burgers_passes(burgers_weak_context):
    """Test that every criterion of the sweep holds for a weak Burgers shock."""
    report = sweep_negativity(burgers_weak_context, n_samples=500, n_dmax=40, n_scan=5, seed=1)
    assert report.passed, report.failed()
    assert report.max_dcont < 0.0
    assert report.max_dmax <= 1e-14
    assert report.k_fit > 0.0
    assert report.u0 is not None
    assert report.dcont_u0 < 0.0
    assert not report.truncated
    assert not report.failures
    np.testing.assert_allclose(report.argmax_dmax, burgers_weak_context.u_left, atol=1e-5)


def test_sweep_euler_passes(euler_context):
    """Test the sign criteria of the sweep for a weak isentropic Euler shock."""
    report = sweep_negativity(
        euler_context, n_samples=300, n_dmax=20, n_scan=3, seed=4, n_rays=16, locate_max=False
    )
    assert report.passed, report.failed()
    assert "u_star" not in report.checks
    assert report.dcont_max is None


def test_sweep_is_deterministic(burgers_weak_context):
    """Test that the same seed reproduces the same report."""
    first = sweep_negativity(burgers_weak_context, n_samples=200, n_dmax=10, n_scan=2, seed=9)
    second = sweep_negativity(burgers_weak_context, n_samples=200, n_dmax=10, n_scan=2, seed=9)
    assert json.dumps(first.to_dict()) == json.dumps(second.to_dict())
    assert first.csv_rows() == second.csv_rows()


def test_sweep_records_truncation(burgers_truncated_context):
    """Test that a maximal shock leaving the box is reported instead of raised."""
    report = sweep_negativity(burgers_truncated_context, n_samples=100, n_dmax=10, n_scan=2)
    assert not report.passed
    assert not report.checks["all_evaluated"]
    assert not report.checks["dmax_zero_at_left"]
    assert any("leaves the working box" in failure for failure in report.failures)


def test_sweep_rows_describe_samples(burgers_weak_context):
    """Test the per-sample rows of the sweep."""
    report = sweep_negativity(burgers_weak_context, n_samples=100, n_dmax=10, n_scan=1)
    rows = report.csv_rows()
    assert len(rows) == report.n_dmax
    assert set(rows[0]) == {"u0", "eta_tilde", "d_cont", "d_max", "s_star"}
    assert rows[0]["s_star"] == pytest.approx(burgers_weak_context.s0, rel=1e-8)


def test_scaling_study_burgers():
    """Test the cubic scaling of the continuous dissipation for Burgers."""
    fit = scaling_study(burgers(), [1.0], 1, [50.0, 100.0, 200.0], [1e-3, 3e-3, 1e-2])
    assert len(fit.cells) == 9
    assert fit.checks["cells"]
    assert fit.checks["hessian"]
    assert fit.checks["diameter"]
    lo, hi = SLOPE_WINDOW
    for slope in fit.slopes.values():
        assert lo <= slope <= hi
    assert fit.diameter_spread < 2.0
    assert len(fit.csv_rows()) == 9


def test_scaling_study_records_failed_cells():
    """Test that a failing cell is recorded and the study continues."""
    sys = burgers().with_box([0.995], [5.0])
    fit = scaling_study(sys, [1.0], 1, [50.0], [1e-3, 1e-2])
    assert len(fit.cells) == 2
    assert fit.cells[0].ok
    assert not fit.cells[1].ok
    assert not fit.checks["cells"]
    assert not fit.passed
    assert np.isnan(fit.slopes[50.0])


def test_scaling_study_rejects_empty_lists():
    """Test that empty lists are rejected."""
    with pytest.raises(ConfigError, match="nonempty lists"):
        scaling_study(burgers(), [1.0], 1, [], [1e-2])


def test_sweep_flags_equal_weights():
    """Test that equal weights on both sides of an Euler shock violate negativity."""
    ctx = ShockContext.from_basepoint(isentropic_euler(1.4), [1.0, 0.0], 1e-2, ratio=1.0)
    assert ctx.a1 == pytest.approx(ctx.a2)
    report = sweep_negativity(ctx, n_samples=2000, n_dmax=20, n_scan=3, locate_max=False)
    assert not report.checks["dcont_negative"]
    assert report.max_dcont > 0.0
    assert "dcont_negative" in report.failed()
    assert not report.passed
