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
Module containing unit tests for the shock context.

"""
import numpy as np
import pytest

from acontraction.exceptions import ConfigError
from acontraction.relent import ShockContext, ShockContextError, WeightWindowError
from acontraction.systems import SystemDomainError, burgers, isentropic_euler

# pylint: disable=redefined-outer-name


def test_burgers_context_from_basepoint(burgers_context):
    """Test the Burgers shock of strength 1 from u_L = 1."""
    ctx = burgers_context
    assert np.allclose(ctx.u_left, [1.0])
    assert np.allclose(ctx.u_right, [0.0], atol=1e-12)
    assert ctx.sigma == pytest.approx(0.5)
    assert ctx.a1 == pytest.approx(11.0)
    assert ctx.a2 == 1.0
    assert ctx.ratio == pytest.approx(11.0)
    assert not ctx.mirrored


def test_burgers_context_from_states():
    """Test that the speed defaults to the Rankine-Hugoniot speed."""
    ctx = ShockContext.from_states(burgers(), [1.0], [0.0], C=10.0)
    assert ctx.sigma == pytest.approx(0.5)
    assert ctx.s0 == pytest.approx(1.0)
    assert ctx.to_dict()["C"] == 10.0


def test_weight_from_ratio():
    """Test that a weight ratio fixes C through a1 = 1 + C s0."""
    ctx = ShockContext.from_basepoint(burgers(), [1.0], 0.5, ratio=1.5)
    assert ctx.C == pytest.approx(1.0)
    assert ctx.a1 == pytest.approx(1.5)


def test_euler_context_is_admissible(euler_context):
    """Test the Rankine-Hugoniot condition and the Liu inequalities of a weak Euler shock."""
    ctx = euler_context
    sys = ctx.system
    jump = sys.flux_fn(ctx.u_right) - sys.flux_fn(ctx.u_left)
    assert np.allclose(jump, ctx.sigma * (ctx.u_right - ctx.u_left), atol=1e-12)
    assert np.linalg.norm(ctx.u_right - ctx.u_left) == pytest.approx(1e-2)
    assert ctx.u_right[0] > ctx.u_left[0]


def test_family2_context_is_mirrored(euler_context_family2):
    """Test that a 2-shock is stored as a 1-shock of the mirrored system."""
    ctx = euler_context_family2
    assert ctx.mirrored
    assert ctx.system.name == "mirror(isentropic_euler)"
    assert ctx.base_system.name == "isentropic_euler"
    assert ctx.to_dict()["mirrored"] is True
    base = ctx.base_system
    jump = base.flux_fn(ctx.u_right) - base.flux_fn(ctx.u_left)
    assert np.allclose(jump, -ctx.sigma * (ctx.u_right - ctx.u_left), atol=1e-12)


def test_family2_context_from_states(euler_context_family2):
    """Test that the states of a 2-shock in the configured system are swapped back."""
    mirrored = euler_context_family2
    ctx = ShockContext.from_states(
        isentropic_euler(1.4), mirrored.u_right, mirrored.u_left, C=100.0, family=2
    )
    assert np.allclose(ctx.u_left, mirrored.u_left)
    assert np.allclose(ctx.u_right, mirrored.u_right)
    assert ctx.sigma == pytest.approx(mirrored.sigma, rel=1e-9)


def test_rankine_hugoniot_violation():
    """Test that a wrong shock speed is rejected."""
    with pytest.raises(ShockContextError, match="Rankine-Hugoniot"):
        ShockContext.from_states(burgers(), [1.0], [0.0], sigma=0.3, C=10.0)


def test_liu_violation():
    """Test that a rarefaction jump is rejected."""
    with pytest.raises(ShockContextError, match="Liu criterion"):
        ShockContext.from_states(burgers(), [0.0], [1.0], C=10.0)


def test_nonpositive_strength():
    """Test that a nonpositive strength is rejected."""
    with pytest.raises(ShockContextError, match="must be positive"):
        ShockContext.from_basepoint(burgers(), [1.0], 0.0, C=10.0)
    with pytest.raises(ShockContextError, match="coincide"):
        ShockContext.from_states(burgers(), [1.0], [1.0], C=10.0)


def test_non_extremal_family():
    """Test that a middle family is rejected."""
    with pytest.raises(ShockContextError, match="not extremal"):
        ShockContext.from_basepoint(isentropic_euler(), [1.0, 0.0], 1e-2, C=100.0, family=3)


@pytest.mark.parametrize("C", [10.0, 400.0])
def test_weight_window(C):
    """Test that a weight ratio outside the window is rejected."""
    with pytest.raises(WeightWindowError, match="outside the window"):
        ShockContext.from_basepoint(burgers(), [1.0], 1e-2, C=C, c1=100.0)


def test_weight_window_is_config_error():
    """Test that window violations are configuration errors."""
    assert issubclass(WeightWindowError, ConfigError)
    ctx = ShockContext.from_basepoint(burgers(), [1.0], 1e-2, C=100.0, c1=100.0)
    assert ctx.ratio == pytest.approx(2.0)


def test_weight_must_be_unique():
    """Test that exactly one of C and the ratio is accepted."""
    with pytest.raises(WeightWindowError, match="Exactly one"):
        ShockContext.from_basepoint(burgers(), [1.0], 0.5)
    with pytest.raises(WeightWindowError, match="Exactly one"):
        ShockContext.from_basepoint(burgers(), [1.0], 0.5, C=1.0, ratio=1.5)


def test_inadmissible_basepoint():
    """Test that a basepoint outside the admissible region is rejected."""
    with pytest.raises(SystemDomainError):
        ShockContext.from_basepoint(isentropic_euler(), [-1.0, 0.0], 1e-2, C=100.0)
