import numpy as np
import pytest

from helpers import random_special_unitary
from su3holo.algebra import adjoint_matrix
from su3holo.curvature import curvature_spectral
from su3holo.limits import gap_asymptotic, monopole_flux, singular_expansion
from su3holo.spectrum import energy_gaps
from su3holo.tensors import (
    IrreducibleParts,
    project_irreducible,
    reconstitute,
)

rng = np.random.default_rng(616)
TWO_PI = 2 * np.pi


def e(r):
    out = np.zeros(8)
    out[r - 1] = 1.0
    return out


def test_gap_asymptotic_near_upper_surface():
    delta = 1e-3
    xi = delta * e(3) + e(8)
    predicted, actual = gap_asymptotic(xi)
    assert actual == pytest.approx(delta, rel=1e-9)
    assert abs(predicted - actual) / actual < 0.01


def test_gap_asymptotic_on_surface_and_mirror():
    predicted, actual = gap_asymptotic(e(8))
    assert predicted == 0.0 and actual == 0.0
    delta = 1e-3
    mirror = (np.sqrt(3) / 2 - delta) * e(3) + 0.5 * e(8)
    predicted, actual = gap_asymptotic(mirror)
    assert actual == pytest.approx(delta / 2, rel=1e-9)
    assert abs(predicted - actual) / actual < 0.01
    with pytest.raises(ValueError):
        gap_asymptotic(0.4 * e(3) + e(8))  # comfortably generic, near neither


def test_gap_asymptotic_error_vanishes_on_approach():
    errs = []
    for delta in (1e-2, 1e-3, 1e-4):
        predicted, actual = gap_asymptotic(delta * e(3) + e(8))
        errs.append(abs(predicted - actual) / actual)
    assert errs[0] > errs[1] > errs[2]


def test_singular_expansion_tables():
    eps, e13 = 1e-3, 1.0
    lead = 1.0 / eps**2
    for level, sign in ((1, 1.0), (2, -1.0)):
        exp = singular_expansion(eps, e13, level)
        assert exp.octet[(1, 2)] == pytest.approx(sign * lead / 3)
        assert exp.decouplet[(1, 2)] == pytest.approx(sign * lead / 6)
        assert exp.total[(1, 2)] == pytest.approx(sign * lead / 2)
        assert exp.total[(4, 5)] == 0.0
        assert exp.total[(6, 7)] == 0.0
    exp3 = singular_expansion(eps, e13, 3)
    assert all(v == 0.0 for part in (exp3.octet, exp3.decouplet, exp3.total)
               for v in part.values())
    with pytest.raises(ValueError):
        singular_expansion(-1e-3, e13, 1)
    with pytest.raises(ValueError):
        singular_expansion(0.5, e13, 1)


def test_singular_expansion_matches_exact_parts():
    # split the exact rest-frame curvature into octet and decouplet pieces
    # and compare their slot-(1,2) values with the leading coefficients
    eps = 1e-4
    xi = eps * e(3) + e(8)
    e13 = energy_gaps(xi)[2]
    v = curvature_spectral(xi, 1).coeffs
    parts = project_irreducible(v)
    zero3 = np.zeros((3, 3, 3), complex)
    octet_part = reconstitute(IrreducibleParts(zero3, zero3, parts.octet)).coefficients
    decouplet_part = v - octet_part
    exp = singular_expansion(eps, e13, 1)
    assert octet_part[0, 1] == pytest.approx(exp.octet[(1, 2)], rel=2e-3)
    assert decouplet_part[0, 1] == pytest.approx(exp.decouplet[(1, 2)], rel=2e-3)
    assert v[0, 1] == pytest.approx(exp.total[(1, 2)], rel=1e-3)
    # the singular parts at slots (4,5)/(6,7) cancel: totals stay bounded
    assert abs(v[3, 4]) * eps**2 < 1e-3
    assert abs(v[5, 6]) * eps**2 < 1e-3


def test_monopole_approach_law():
    delta = 1e-3
    xi = delta * e(3) + e(8)
    v1 = curvature_spectral(xi, 1).coeffs
    assert 0.495 <= v1[0, 1] * delta**2 <= 0.505
    assert abs(v1[3, 4]) * delta**2 < 1e-3
    assert abs(v1[5, 6]) * delta**2 < 1e-3


def test_monopole_flux_quantization_at_rest_direction():
    f1 = monopole_flux(e(8), 1e-3, 1)
    f2 = monopole_flux(e(8), 1e-3, 2)
    f3 = monopole_flux(e(8), 1e-3, 3)
    assert abs(abs(f1) - TWO_PI) < 0.01 * TWO_PI
    assert abs(abs(f2) - TWO_PI) < 0.01 * TWO_PI
    assert f1 == pytest.approx(-f2, rel=1e-6)
    assert abs(f3) < 1e-3


def test_monopole_flux_on_transported_directions():
    for _ in range(3):
        d = adjoint_matrix(random_special_unitary(rng))
        direction = d @ e(8)
        f1 = monopole_flux(direction, 1e-3, 1)
        assert abs(abs(f1) - TWO_PI) < 0.01 * TWO_PI
        assert abs(monopole_flux(direction, 1e-3, 3)) < 1e-3


def test_monopole_flux_zero_when_sphere_misses_the_ray():
    f = monopole_flux(e(8), 1e-3, 1, center_offset=[0.0, 0.0, 1e-2])
    assert abs(f) < 1e-3


def test_monopole_flux_input_validation():
    with pytest.raises(ValueError):
        monopole_flux(e(3), 1e-3, 1)  # generic direction, not on the cone
    with pytest.raises(ValueError):
        monopole_flux(2.0 * e(8), 1e-3, 1)  # not unit
    with pytest.raises(ValueError):
        monopole_flux(e(8), 0.5, 1)  # sphere reaches the lower degeneracy
    with pytest.raises(ValueError):
        monopole_flux(e(8), -1e-3, 1)


def test_flux_quantization_across_random_directions():
    # |flux| is 0 or 2 pi within 1% across 10 transported spheres
    for k in range(10):
        d = adjoint_matrix(random_special_unitary(rng))
        direction = d @ e(8)
        level = 1 + (k % 2)
        f = abs(monopole_flux(direction, 1e-3, level))
        assert abs(f - TWO_PI) < 0.01 * TWO_PI
        if k % 3 == 0:
            off = monopole_flux(direction, 1e-3, 1, center_offset=[1e-2, 0.0, 0.0])
            assert abs(off) < 1e-3
