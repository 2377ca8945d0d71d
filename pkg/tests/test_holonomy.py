import numpy as np
import pytest

from helpers import random_generic_octet, wrap_angle
from su3holo import DegenerateInput, UnderResolvedPath
from su3holo.algebra import matrix_to_octet, octet_to_matrix
from su3holo.holonomy import (
    LoopPath,
    SurfacePatch,
    circle_loop,
    loop_phase,
    phase_sum_rule_check,
    spherical_patch,
    surface_flux,
)

rng = np.random.default_rng(8080)

E8 = np.zeros(8)
E8[7] = 1.0
FRAME123 = np.eye(8)[:3]


def rest_point():
    xi = np.zeros(8)
    xi[2], xi[7] = 0.6, 1.3
    return xi


def small_sphere_cap(theta0, radius=1e-3, shape=(201, 201)):
    return spherical_patch(E8, FRAME123, radius, (0.0, theta0), shape)


def test_loop_path_validation():
    with pytest.raises(DegenerateInput):
        LoopPath(np.stack([rest_point(), E8, rest_point()]))
    with pytest.raises(ValueError):
        LoopPath(rest_point()[None])


def test_constant_path_has_zero_phase():
    path = LoopPath(np.tile(rest_point(), (5, 1)))
    for level in (1, 2, 3):
        assert loop_phase(path, level) == 0.0
    phases, total = phase_sum_rule_check(path)
    assert phases == (0.0, 0.0, 0.0) and total == 0.0


def test_torus_plane_loop_has_zero_phase():
    # only components 3 and 8 vary: the eigenbasis is constant along the loop
    e3 = np.eye(8)[2]
    e8 = np.eye(8)[7]
    path = circle_loop(rest_point(), e3, e8, 0.1, 200)
    for level in (1, 2, 3):
        assert abs(loop_phase(path, level)) < 1e-12


def test_spherical_loop_half_solid_angle_law():
    theta0 = 0.9
    n = 2000
    angles = 2 * np.pi * np.arange(n) / n
    pts = np.tile(E8, (n, 1))
    r = 1e-3
    pts[:, 0] = r * np.sin(theta0) * np.cos(angles)
    pts[:, 1] = r * np.sin(theta0) * np.sin(angles)
    pts[:, 2] = r * np.cos(theta0)
    path = LoopPath(pts)
    expected = np.pi * (1 - np.cos(theta0))
    ph1 = loop_phase(path, 1)
    assert abs(abs(ph1) - expected) < 1e-3
    # surface-flux oracle over the cap the loop bounds
    cap = small_sphere_cap(theta0)
    flux = surface_flux(cap, 1)
    assert abs(wrap_angle(loop_phase(cap.boundary(), 1) - flux)) < 1e-3
    assert flux == pytest.approx(expected, abs=1e-4)


def test_loop_reversal_negates_phase():
    path = circle_loop(rest_point(), np.eye(8)[0], np.eye(8)[4], 0.2, 400)
    for level in (1, 2, 3):
        forward = loop_phase(path, level)
        backward = loop_phase(path.reversed(), level)
        assert abs(wrap_angle(forward + backward)) < 1e-14


def test_loop_refinement_convergence():
    center = rest_point()
    phases = {}
    for n in (1000, 2000):
        path = circle_loop(center, np.eye(8)[0], np.eye(8)[5], 0.3, n)
        phases[n] = loop_phase(path, 2)
    assert abs(phases[1000] - phases[2000]) < 1e-4


def test_overlap_guard_trips_on_level_crossing_jump():
    # two points whose level-1 eigenvectors are orthogonal
    a = rest_point()
    h = octet_to_matrix(a)
    perm = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]], dtype=complex)
    b = matrix_to_octet(perm @ h @ perm.T)
    path = LoopPath(np.stack([a, b, a, b]))
    with pytest.raises(UnderResolvedPath):
        loop_phase(path, 1)


def test_zero_area_patch_has_zero_flux():
    grid = np.tile(rest_point(), (4, 4, 1))
    patch = SurfacePatch(grid)
    for level in (1, 2, 3):
        assert surface_flux(patch, level) == 0.0


def test_patch_validation_and_interpolation():
    with pytest.raises(DegenerateInput):
        SurfacePatch(np.tile(E8, (3, 3, 1)))
    base = rest_point()
    d1, d2 = np.eye(8)[0], np.eye(8)[4]

    def mapping(u, v):
        return base + 0.1 * (u * d1 + v * d2)

    patch = SurfacePatch.from_function(mapping, (9, 9))
    np.testing.assert_allclose(patch.value(0.0, 0.0), mapping(0, 0), atol=1e-15)
    np.testing.assert_allclose(patch.value(1.0, 1.0), mapping(1, 1), atol=1e-15)
    np.testing.assert_allclose(patch.value(0.5, 0.25), mapping(0.5, 0.25), atol=1e-12)


def test_closed_surface_flux_vanishes_in_generic_region():
    frame = np.eye(8)[[0, 3, 5]]
    patch = spherical_patch(rest_point(), frame, 0.05, (0.0, np.pi), (101, 201))
    for level in (1, 2, 3):
        assert abs(surface_flux(patch, level)) < 1e-4


def test_closed_surface_flux_quantized_around_degeneracy():
    sphere = spherical_patch(E8, FRAME123, 1e-3, (0.0, np.pi), (201, 201))
    f1 = surface_flux(sphere, 1)
    assert abs(abs(f1) - 2 * np.pi) < 1e-2
    # its boundary is degenerate, so the loop phase is 0 = flux (mod 2 pi)
    assert abs(wrap_angle(f1)) < 1e-2


def test_stokes_consistency_on_random_patches():
    for k in range(6):
        center = random_generic_octet(rng, margin=0.25)
        center /= np.linalg.norm(center)
        basis = np.linalg.qr(rng.standard_normal((8, 2)))[0].T

        def mapping(u, v):
            return center + 0.05 * ((u - 0.5) * basis[0] + (v - 0.5) * basis[1])

        patch = SurfacePatch.from_function(mapping, (201, 201))
        level = 1 + (k % 3)
        flux = surface_flux(patch, level)
        phase = loop_phase(patch.boundary(), level)
        assert abs(wrap_angle(phase - flux)) < 1e-3


def test_phase_sum_rule_on_generic_loop():
    path = circle_loop(rest_point(), np.eye(8)[1], np.eye(8)[6], 0.25, 1200)
    phases, total = phase_sum_rule_check(path)
    assert abs(total) < 1e-3
    assert abs(wrap_angle(sum(phases))) < 1e-3


def test_phase_sum_rule_near_upper_degeneracy():
    theta0 = 1.1
    n = 1500
    angles = 2 * np.pi * np.arange(n) / n
    pts = np.tile(E8, (n, 1))
    r = 1e-3
    pts[:, 0] = r * np.sin(theta0) * np.cos(angles)
    pts[:, 1] = r * np.sin(theta0) * np.sin(angles)
    pts[:, 2] = r * np.cos(theta0)
    phases, total = phase_sum_rule_check(LoopPath(pts))
    assert abs(total) < 1e-3
    assert phases[0] == pytest.approx(-phases[1], abs=1e-3)
    assert abs(phases[2]) < 1e-3
