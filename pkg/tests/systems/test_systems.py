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
Module containing unit tests for the system registry and the flux and entropy operations.

"""
import numpy as np
import pytest

from acontraction.systems import (
    SystemDomainError,
    as_state,
    build_system,
    check_admissible,
    eigenstructure,
    eigenvalues,
    entropy_gradient,
    entropy_hessian,
    entropy_pair,
    flux,
    flux_jacobian,
    in_invariant_region,
    in_working_region,
    invariant_region,
    invariant_region_bound,
    isentropic_euler,
    mirror_system,
)
from tests.fd_utils import fd5_gradient, fd5_jacobian

# pylint: disable=redefined-outer-name

all_systems = ["burgers_system", "euler_system", "full_euler_system", "linear_flux_system"]


@pytest.mark.parametrize(
    "system_id,dim", [("burgers", 1), ("isentropic_euler", 2), ("full_euler", 3), ("linear", 2)]
)
def test_build_registered_system(system_id, dim):
    """Test building every registered system by id."""
    sys = build_system(system_id)
    assert sys.name == system_id
    assert sys.dim == dim
    assert len(sys.reference_state) == dim


def test_build_unknown_system():
    """Test that an unknown system id is rejected."""
    with pytest.raises(SystemDomainError, match="Unsupported system 'shallow_water'"):
        build_system("shallow_water")


def test_build_system_invalid_params():
    """Test that parameters a factory does not accept are rejected."""
    with pytest.raises(SystemDomainError, match="Invalid parameters"):
        build_system("burgers", {"gamma": 1.4})


def test_build_system_with_box():
    """Test overriding the working box of a system."""
    sys = build_system("isentropic_euler", {"gamma": 1.4}, {"lower": [0.5, -1], "upper": [2, 1]})
    assert sys.box.lower == (0.5, -1.0)
    assert sys.box.upper == (2.0, 1.0)
    assert sys.box.contains(np.array([1.0, 0.5]))
    assert not sys.box.contains(np.array([1.0, 1.5]))


@pytest.mark.parametrize("gamma", [1.0, 0.5])
def test_isentropic_euler_rejects_gamma(gamma):
    """Test that an adiabatic exponent not exceeding 1 is rejected."""
    with pytest.raises(SystemDomainError, match="must exceed 1"):
        isentropic_euler(gamma)


def test_euler_flux_at_rest(euler_system):
    """Test the isentropic Euler flux of a fluid at rest."""
    assert np.allclose(flux(euler_system, [1.0, 0.0]), [0.0, 1.0])
    assert np.allclose(flux(euler_system, [2.0, 2.0]), [2.0, 2.0 + 2.0**1.4])


def test_euler_eigenvalues_at_rest(euler_system, full_euler_system):
    """Test characteristic speeds at the reference states."""
    c = np.sqrt(1.4)
    assert np.allclose(eigenvalues(euler_system, [1.0, 0.0]), [-c, c])
    assert np.allclose(eigenvalues(full_euler_system, [1.0, 0.0, 2.5]), [-c, 0.0, c])


@pytest.mark.parametrize("system_name", all_systems)
def test_flux_jacobian_matches_finite_differences(system_name, sample_states, request):
    """Test analytic flux Jacobians against a five-point stencil."""
    sys = request.getfixturevalue(system_name)
    for u in sample_states(sys, n=4):
        expected = fd5_jacobian(sys.flux_fn, u, h=1e-4)
        assert np.allclose(flux_jacobian(sys, u), expected, rtol=1e-7, atol=1e-7)


@pytest.mark.parametrize("system_name", all_systems)
def test_entropy_derivatives_match_finite_differences(system_name, sample_states, request):
    """Test analytic entropy gradients and Hessians against a five-point stencil."""
    sys = request.getfixturevalue(system_name)
    for u in sample_states(sys, n=4):
        grad = fd5_gradient(lambda v: float(sys.entropy_fn(v)), u, h=1e-4)
        assert np.allclose(entropy_gradient(sys, u), grad, rtol=1e-7, atol=1e-7)
        hess = fd5_jacobian(sys.entropy_gradient_fn, u, h=1e-4)
        assert np.allclose(entropy_hessian(sys, u), hess, rtol=1e-6, atol=1e-6)


@pytest.mark.parametrize("system_name", all_systems)
def test_entropy_flux_compatibility(system_name, sample_states, request):
    """Test that grad q = grad eta f' holds on sampled states."""
    sys = request.getfixturevalue(system_name)
    for u in sample_states(sys, n=4):
        grad_q = fd5_gradient(lambda v: float(sys.entropy_flux_fn(v)), u, h=1e-4)
        expected = entropy_gradient(sys, u) @ flux_jacobian(sys, u)
        assert np.allclose(grad_q, expected, rtol=1e-7, atol=1e-7)


@pytest.mark.parametrize("system_name", all_systems)
def test_entropy_hessian_positive_definite(system_name, sample_states, request):
    """Test strict convexity of the entropy on sampled states."""
    sys = request.getfixturevalue(system_name)
    hess = entropy_hessian(sys, sample_states(sys, n=16))
    assert np.all(np.linalg.eigvalsh(hess) > 0.0)


def test_entropy_pair_single_and_batch(burgers_system):
    """Test that the entropy pair is scalar for one state and batched otherwise."""
    eta, q = entropy_pair(burgers_system, [3.0])
    assert isinstance(eta, float)
    assert eta == pytest.approx(9.0)
    assert q == pytest.approx(18.0)
    eta, q = entropy_pair(burgers_system, [[1.0], [2.0]])
    assert np.allclose(eta, [1.0, 4.0])
    assert np.allclose(q, [2.0 / 3.0, 16.0 / 3.0])


def test_inadmissible_state_rejected(euler_system):
    """Test that a negative density is rejected."""
    with pytest.raises(SystemDomainError, match="outside the admissible region"):
        check_admissible(euler_system, [-1.0, 0.0])
    with pytest.raises(SystemDomainError, match="outside the admissible region"):
        flux(euler_system, [[1.0, 0.0], [0.0, 0.0]])


@pytest.mark.parametrize("state", [[1.0, 0.0, 0.0], [[1.0], [2.0]], [np.nan, 1.0]])
def test_malformed_state_rejected(euler_system, state):
    """Test that states of the wrong shape or with non-finite entries are rejected."""
    with pytest.raises(SystemDomainError):
        as_state(euler_system, state)


@pytest.mark.parametrize("system_name", ["euler_system", "full_euler_system"])
def test_eigenstructure_orientation(system_name, sample_states, request):
    """Test eigenvector normalisation and the orientation of genuinely nonlinear fields."""
    sys = request.getfixturevalue(system_name)
    for u in sample_states(sys, n=4):
        basis = eigenstructure(sys, u)
        jac = flux_jacobian(sys, u)
        for i in range(sys.dim):
            r = basis.right[:, i]
            assert np.linalg.norm(r) == pytest.approx(1.0)
            assert np.allclose(jac @ r, basis.values[i] * r, atol=1e-10)
            assert basis.left[i] @ r > 0.0
        assert basis.nonlinearity[0] < 0.0
        assert basis.nonlinearity[-1] < 0.0


def test_linear_system_is_degenerate(linear_flux_system):
    """Test that the linear system has linearly degenerate fields."""
    basis = eigenstructure(linear_flux_system, [0.2, -0.1])
    assert np.allclose(basis.values, [-1.0, 1.0])
    assert np.allclose(basis.nonlinearity, 0.0, atol=1e-6)


@pytest.mark.parametrize("system_name", all_systems)
def test_mirror_system(system_name, sample_states, request):
    """Test that mirroring negates and reverses the spectrum and is an involution."""
    sys = request.getfixturevalue(system_name)
    mirror = mirror_system(sys)
    assert mirror.is_mirror
    assert mirror.name == f"mirror({sys.name})"
    assert mirror_system(mirror) is sys
    states = sample_states(sys, n=4)
    assert np.allclose(eigenvalues(mirror, states), -eigenvalues(sys, states)[:, ::-1])
    assert np.allclose(mirror.entropy_fn(states), sys.entropy_fn(states))


def test_invariant_region(euler_system):
    """Test the Riemann invariants of a fluid at rest."""
    c1 = 2.0 * np.sqrt(1.4) / 0.4
    assert np.allclose(invariant_region(euler_system, [1.0, 0.0]), [-c1, c1])
    states = np.array([[1.0, 0.0], [2.0, 1.0]])
    bound = invariant_region_bound(euler_system, states)
    assert np.all(in_invariant_region(euler_system, states, bound + 1e-12))
    assert not np.all(in_invariant_region(euler_system, states, bound - 1e-6))


def test_invariant_region_requires_isentropic_euler(burgers_system):
    """Test that invariant regions are rejected for other systems."""
    with pytest.raises(SystemDomainError, match="only defined for isentropic Euler"):
        invariant_region(burgers_system, [1.0])


def test_working_region(euler_system):
    """Test that the working region combines the working box with admissibility."""
    states = np.array([[1.0, 0.0], [2.0, 3.0], [0.05, 0.0], [-1.0, 0.0], [20.0, 0.0]])
    np.testing.assert_array_equal(
        in_working_region(euler_system, states), [True, True, False, False, False]
    )
    assert in_working_region(euler_system, [1.0, 0.0])
    assert in_working_region(euler_system, states.reshape(5, 1, 2)).shape == (5, 1)
