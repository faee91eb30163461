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
Module containing unit tests for the structural assumption audit.

"""
import numpy as np
import pytest

from acontraction.systems import (
    AuditThresholds,
    SystemDomainError,
    full_euler,
    isentropic_euler,
    relative_entropy_bracket,
    verify_assumptions,
)

# pylint: disable=redefined-outer-name

SMALL = AuditThresholds(n_stubs=3)


def test_audit_burgers_passes(burgers_system):
    """Test that Burgers' equation satisfies every assumption."""
    report = verify_assumptions(burgers_system, n_samples=100, thresholds=SMALL)
    assert report.passed, report.failed()
    assert sorted(report.checks) == list("abcdefghij")
    assert report.checks["a"].details["vacuous"]
    assert report.checks["b"].margin == pytest.approx(1.0, rel=1e-4)
    assert report.checks["c"].margin == pytest.approx(2.0)
    assert report.checks["f"].margin == pytest.approx(0.5, rel=1e-6)
    assert report.checks["g"].margin == pytest.approx(0.5, rel=1e-6)
    assert np.allclose(report.entropy_bracket, (1.0, 1.0))


def test_audit_isentropic_euler_passes(euler_system):
    """Test that isentropic Euler satisfies every assumption on its default box."""
    report = verify_assumptions(euler_system, n_samples=200, thresholds=SMALL)
    assert report.passed, report.failed()
    assert report.wave_speed_bound > 0.0
    assert "invariant_region_bound" in report.checks["e"].details
    assert report.checks["d"].details["continuation_failures"] == 0


@pytest.mark.parametrize(
    "system",
    [isentropic_euler(1.4), isentropic_euler(2.0), isentropic_euler(3.0), full_euler(1.4)],
    ids=["isentropic-1.4", "isentropic-2", "isentropic-3", "full-1.4"],
)
def test_audit_passes(system):
    """Test that the Euler systems satisfy every assumption with positive margins."""
    report = verify_assumptions(system, n_samples=200, thresholds=SMALL)
    assert report.passed, report.failed()
    assert sorted(report.checks) == list("abcdefghij")
    assert all(check.margin >= check.threshold for check in report.checks.values())


def test_audit_linear_flags_nonlinearity(linear_flux_system):
    """Test that a linearly degenerate system fails the genuine nonlinearity check."""
    report = verify_assumptions(linear_flux_system, n_samples=50, thresholds=SMALL)
    assert not report.passed
    assert "b" in report.failed()
    assert report.checks["b"].margin < 1e-6


def test_audit_is_deterministic(burgers_system):
    """Test that the same seed gives the same report."""
    first = verify_assumptions(burgers_system, n_samples=40, thresholds=SMALL, seed=7)
    second = verify_assumptions(burgers_system, n_samples=40, thresholds=SMALL, seed=7)
    assert first.to_dict() == second.to_dict()


def test_audit_report_rows(burgers_system):
    """Test the tabular rows of the report."""
    report = verify_assumptions(burgers_system, n_samples=20, thresholds=SMALL)
    rows = report.csv_rows()
    assert [row["assumption"] for row in rows] == list("abcdefghij")
    assert set(rows[0]) == {"assumption", "margin", "threshold", "passed"}
    assert report.to_dict()["passed"] is True


def test_audit_rejects_empty_sample(burgers_system):
    """Test that an audit needs at least one sample."""
    with pytest.raises(SystemDomainError, match="at least one sample"):
        verify_assumptions(burgers_system, n_samples=0)


def test_audit_thresholds_validation():
    """Test that negative thresholds are rejected."""
    with pytest.raises(SystemDomainError, match="must be non-negative"):
        AuditThresholds(gap=-1.0)
    with pytest.raises(SystemDomainError, match="positive length"):
        AuditThresholds(n_stubs=0)


def test_relative_entropy_bracket_euler(euler_system):
    """Test that the relative entropy is comparable to the squared distance."""
    rng = np.random.default_rng(0)
    low, high = relative_entropy_bracket(euler_system, euler_system.box.shrink(0.2), 200, rng)
    assert 0.0 < low <= high < np.inf
