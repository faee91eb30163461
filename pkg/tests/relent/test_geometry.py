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
Module containing unit tests for the geometry of the weighted sublevel set.

"""
import numpy as np
import pytest

from acontraction.relent import (
    BoundaryNotFoundError,
    ShockContext,
    boundary_points,
    boundary_project,
    boundary_tolerance,
    box_exit_distance,
    diameter,
    estimate_cstar,
    in_pi,
    intersect_shock_curve,
    masked_tilde_eta,
    normal,
    pi_diagnostics,
    ray_directions,
    ray_distances,
    sample_pi,
    tilde_eta,
)
from acontraction.systems import burgers

from .fixtures.contexts import BURGERS_PI, ROOT11

# pylint: disable=redefined-outer-name


def test_in_pi(burgers_context):
    """Test membership of the weighted set."""
    assert in_pi(burgers_context, [1.0])
    assert not in_pi(burgers_context, [0.0])
    assert np.array_equal(in_pi(burgers_context, [[1.0], [2.0], [0.9]]), [True, False, True])


def test_masked_tilde_eta_outside_box(burgers_context):
    """Test that states outside the working box are masked."""
    values = masked_tilde_eta(burgers_context, [[1.0], [6.0]])
    assert values[0] == pytest.approx(-1.0)
    assert values[1] == np.inf


def test_box_exit_distance(burgers_context):
    """Test the distance from u_L to the edges of the Burgers working box."""
    assert box_exit_distance(burgers_context, np.array([1.0]), np.array([1.0])) == pytest.approx(
        4.0, abs=1e-9
    )
    assert box_exit_distance(burgers_context, np.array([1.0]), np.array([-1.0])) == pytest.approx(
        6.0, abs=1e-9
    )


@pytest.mark.parametrize("direction,expected", [(1.0, BURGERS_PI[1]), (-1.0, BURGERS_PI[0])])
def test_boundary_project_from_inside(burgers_context, direction, expected):
    """Test boundary crossings on rays from u_L."""
    u_bar = boundary_project(burgers_context, [1.0], [direction])
    assert u_bar[0] == pytest.approx(expected, abs=1e-12)
    assert abs(tilde_eta(burgers_context, u_bar)) < boundary_tolerance(burgers_context)


def test_boundary_project_from_outside(burgers_context):
    """Test that a ray from an outside state returns the nearest crossing."""
    u_bar = boundary_project(burgers_context, [0.0], [1.0])
    assert u_bar[0] == pytest.approx(BURGERS_PI[0], abs=1e-12)


def test_boundary_project_never_enters(burgers_context):
    """Test a ray from an outside state pointing away from the set."""
    with pytest.raises(BoundaryNotFoundError, match="never enters"):
        boundary_project(burgers_context, [0.0], [-1.0])


def test_boundary_project_leaves_box():
    """Test an unbounded weighted set produced by inverted weights."""
    ctx = ShockContext.from_basepoint(burgers(), [1.0], 1.0, C=-0.5)
    with pytest.raises(BoundaryNotFoundError, match="leaves the working box"):
        boundary_project(ctx, [1.0], [1.0])


def test_boundary_project_refined(euler_context):
    """Test that refinement aligns the projection with the normal."""
    ctx = euler_context
    u_in = ctx.u_left
    u_bar = boundary_project(ctx, u_in, [0.3, 1.0], refine=True)
    assert abs(tilde_eta(ctx, u_bar)) < 10.0 * boundary_tolerance(ctx)
    offset = (u_bar - u_in) / np.linalg.norm(u_bar - u_in)
    assert offset @ normal(ctx, u_bar) == pytest.approx(1.0, abs=1e-8)


def test_normals(burgers_context):
    """Test outward normals at both Burgers boundary points."""
    assert np.allclose(normal(burgers_context, [BURGERS_PI[1]]), [1.0])
    assert np.allclose(normal(burgers_context, [BURGERS_PI[0]]), [-1.0])


def test_boundary_points_and_diameter(burgers_context):
    """Test that C times the diameter equals 2 sqrt(a1) for Burgers."""
    points, failures = boundary_points(burgers_context, 2)
    assert failures == 0
    assert np.allclose(np.sort(points[:, 0]), BURGERS_PI, atol=1e-12)
    assert diameter(points) * burgers_context.C == pytest.approx(2.0 * ROOT11, rel=1e-10)
    assert diameter(points[:1]) == 0.0


@pytest.mark.parametrize("dim,n_dirs", [(1, 2), (2, 16), (3, 40)])
def test_ray_directions_unit(dim, n_dirs):
    """Test that ray directions are unit vectors."""
    dirs = ray_directions(dim, n_dirs)
    assert dirs.shape == (n_dirs, dim)
    assert np.allclose(np.linalg.norm(dirs, axis=1), 1.0)
    random_dirs = ray_directions(dim, n_dirs, np.random.default_rng(0))
    assert np.allclose(np.linalg.norm(random_dirs, axis=1), 1.0)


def test_ray_distances(burgers_context):
    """Test vectorised crossing distances and the reach cut-off."""
    dirs = np.array([[1.0], [-1.0]])
    dist = ray_distances(burgers_context, np.array([1.0]), dirs, reach=2.0)
    assert np.allclose(dist, [BURGERS_PI[1] - 1.0, 1.0 - BURGERS_PI[0]], atol=1e-12)
    dist = ray_distances(burgers_context, np.array([1.0]), dirs, reach=0.3)
    assert dist[0] == np.inf
    assert np.isfinite(dist[1])


def test_sample_pi(burgers_context):
    """Test that rejection samples lie in the weighted set."""
    samples = sample_pi(burgers_context, 50, np.random.default_rng(1), half_width=1.0)
    assert samples.shape == (50, 1)
    assert np.all(tilde_eta(burgers_context, samples) < 0.0)


def test_intersect_shock_curve(burgers_context):
    """Test that the shock curve through u_L leaves the set at the left root."""
    point = intersect_shock_curve(burgers_context)
    assert point.state[0] == pytest.approx(BURGERS_PI[0], abs=1e-12)
    assert point.s == pytest.approx(1.0 - BURGERS_PI[0], abs=1e-12)


def test_estimate_cstar(burgers_context):
    """Test the sampled bound on q~ / eta~ outside the weighted set."""
    estimate = estimate_cstar(burgers_context, n_samples=500, seed=0)
    assert estimate.value >= 0.0
    assert estimate.n_samples <= 500
    assert estimate.to_dict()["empty"] == (estimate.n_contributing == 0)


def test_pi_diagnostics_burgers(burgers_context):
    """Test the diameter and boundary normal gradient of the Burgers set."""
    report = pi_diagnostics(burgers_context, n_samples=200, n_depth=20)
    assert report.n_rays == 2
    assert not report.truncated
    assert report.diameter_times_c == pytest.approx(2.0 * ROOT11, rel=1e-10)
    assert report.min_normal == pytest.approx(2.0 * ROOT11, rel=1e-8)
    assert report.max_depth_ratio > 0.0
    assert report.to_dict()["diameter_times_C"] == pytest.approx(2.0 * ROOT11, rel=1e-10)
    assert report.csv_rows()[0]["C"] == 10.0


def test_pi_diagnostics_euler(euler_context):
    """Test the weighted-set diagnostics of a weak Euler shock."""
    report = pi_diagnostics(euler_context, n_samples=200, n_rays=32, n_depth=10)
    assert report.n_rays == 32
    assert not report.truncated
    assert 0.0 < report.diameter < 1.0
    assert report.normal_lipschitz[0] <= report.normal_lipschitz[1]
