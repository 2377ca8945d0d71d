"""The three geometric-phase curvature two-forms V^(a) on octet space.

Three independent evaluation routes are provided and must agree:

* ``curvature_spectral`` sums eigenvector matrix elements over the
  complementary levels with inverse-square gap weights,
* ``curvature_transported`` fills the closed-form rest-frame table and
  conjugates it with the adjoint image of the diagonalizer,
* ``tensors.curvature_from_parts`` reassembles the form from its
  irreducible octet/decouplet pieces.

All routes are gauge-independent: re-phasing eigenvectors changes nothing.
The weighted level sum equals the orbit symplectic two-form (checked here by
central finite differences of the gauge-pinned diagonalizer), and the
unweighted level sum vanishes identically.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import GELL_MANN, adjoint_matrix
from .errors import DegenerateInput
from .spectrum import (
    DEFAULT_CLASSIFY_TOL,
    DegeneracyClass,
    SpectralData,
    _frames,
    classify,
    diagonalizer,
    eigenvalues,
    energy_levels,
    octet_norm,
)

__all__ = [
    "CurvatureTwoForm",
    "curvature_spectral",
    "curvature_rest_frame",
    "curvature_transported",
    "weighted_sum",
    "level_sum",
    "symplectic_two_form_fd",
]


@dataclass
class CurvatureTwoForm:
    """Level label plus the real antisymmetric coefficient array ``V_rs``."""

    level: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.level not in (1, 2, 3):
            raise ValueError(f"level must be 1, 2 or 3, got {self.level}")
        c = np.asarray(self.coeffs, dtype=float)
        if c.shape != (8, 8):
            raise ValueError(f"coefficients must be 8x8, got shape {c.shape}")
        self.coeffs = (c - c.T) / 2.0  # exactly antisymmetric


def _require_generic(xi, tol: float, what: str) -> None:
    klass = classify(xi, tol)
    if klass is not DegeneracyClass.GENERIC:
        raise DegenerateInput(f"{what} requires a generic spectrum, got {klass.value}")


def _coeffs_from_frames(e: np.ndarray, a_mat: np.ndarray, level: int) -> np.ndarray:
    """Curvature coefficients from eigenvalues (..., 3) and eigenvector
    column matrices (..., 3, 3) for one level; shape (..., 8, 8)."""
    idx = level - 1
    va = a_mat[..., :, idx]
    bra = np.einsum("...i,rij->...rj", va.conj(), GELL_MANN)
    g = bra @ a_mat  # g[..., r, b] = <a|lam_r|b>
    gaps = e[..., idx, None] - e
    with np.errstate(divide="ignore"):
        w = np.where(np.arange(3) == idx, 0.0, 1.0 / gaps**2)
    term = (g * w[..., None, :]) @ np.swapaxes(g.conj(), -1, -2)
    return term.imag / 2.0


def curvature_spectral(xi, level: int, tol: float = DEFAULT_CLASSIFY_TOL) -> CurvatureTwoForm:
    """Spectral-route curvature

        ``V_rs = (1/4) Im sum_{b != a} [<a|l_r|b><b|l_s|a> - (r <-> s)] / E_ab^2``

    using the closed-form eigenvectors.  The value is independent of the
    eigenvector gauge."""
    _require_generic(xi, tol, "curvature_spectral")
    e, a_mat = _frames(np.asarray(xi, dtype=float))
    return CurvatureTwoForm(level, _coeffs_from_frames(e, a_mat, level))


def curvature_rest_frame(spectral: SpectralData, level: int) -> CurvatureTwoForm:
    """Closed-form rest-frame curvature table.

    The only independent nonvanishing entries sit at slots (1,2), (4,5),
    (6,7); the slots (3,8) allowed by torus invariance are identically zero.

    ========  ============   ============   ============
    level     V_12           V_45           V_67
    ========  ============   ============   ============
    1          1/(2 E12^2)    1/(2 E13^2)   0
    2         -1/(2 E12^2)   0               1/(2 E23^2)
    3         0              -1/(2 E13^2)   -1/(2 E23^2)
    ========  ============   ============   ============
    """
    if spectral.degeneracy is not DegeneracyClass.GENERIC:
        raise DegenerateInput(
            f"rest-frame table requires nonzero gaps, got {spectral.degeneracy.value}"
        )
    e12, e23, e13 = spectral.e12, spectral.e23, spectral.e13
    v = np.zeros((8, 8))
    if level == 1:
        v[0, 1] = 1.0 / (2.0 * e12**2)
        v[3, 4] = 1.0 / (2.0 * e13**2)
    elif level == 2:
        v[0, 1] = -1.0 / (2.0 * e12**2)
        v[5, 6] = 1.0 / (2.0 * e23**2)
    elif level == 3:
        v[3, 4] = -1.0 / (2.0 * e13**2)
        v[5, 6] = -1.0 / (2.0 * e23**2)
    else:
        raise ValueError(f"level must be 1, 2 or 3, got {level}")
    return CurvatureTwoForm(level, v - v.T)


def curvature_transported(xi, level: int, tol: float = DEFAULT_CLASSIFY_TOL) -> CurvatureTwoForm:
    """Adjoint transport of the rest-frame table:
    ``V(xi) = D(A(xi)) V(rest) D(A(xi))^T``.

    Well defined despite the residual torus gauge freedom of the
    diagonalizer (the rest-frame table is torus-invariant), and equal to
    the spectral route."""
    _require_generic(xi, tol, "curvature_transported")
    spectral = eigenvalues(np.asarray(xi, dtype=float), tol)
    v0 = curvature_rest_frame(spectral, level)
    d = adjoint_matrix(diagonalizer(xi, tol))
    return CurvatureTwoForm(level, d @ v0.coeffs @ d.T)


def _all_levels(xi, tol: float) -> tuple[np.ndarray, np.ndarray]:
    _require_generic(xi, tol, "curvature")
    xi = np.asarray(xi, dtype=float)
    e, a_mat = _frames(xi)
    stack = np.stack([_coeffs_from_frames(e, a_mat, a) for a in (1, 2, 3)])
    return e, stack


def weighted_sum(xi, tol: float = DEFAULT_CLASSIFY_TOL) -> np.ndarray:
    """Energy-weighted level sum ``sum_a E_a V^(a)(xi)`` as an 8 x 8 array.

    In the rest frame its independent nonzero entries are ``1/(2 E12)``,
    ``1/(2 E13)``, ``1/(2 E23)`` at slots (1,2), (4,5), (6,7); in general
    it equals the orbit symplectic two-form (see
    ``symplectic_two_form_fd``)."""
    e, stack = _all_levels(xi, tol)
    return np.einsum("a,ars->rs", e, stack)


def level_sum(xi, tol: float = DEFAULT_CLASSIFY_TOL) -> np.ndarray:
    """Unweighted level sum ``sum_a V^(a)(xi)``; vanishes identically."""
    _, stack = _all_levels(xi, tol)
    return stack.sum(axis=0)


def symplectic_two_form_fd(xi, step: float | None = None,
                           tol: float = DEFAULT_CLASSIFY_TOL) -> np.ndarray:
    """Coefficients of the orbit symplectic two-form at ``xi``, evaluated by
    central finite differences of the diagonalizer:

        ``S_rs = -Im Tr(H0 [theta_r, theta_s])``,
        ``theta_r = A(xi)^dagger d A / d xi_r``,  ``H0 = diag(E1, E2, E3)``.

    The sign convention is fixed so that ``S`` matches ``weighted_sum``
    (both give ``+1/(2 E12)`` at rest-frame slot (1,2)).  The diagonalizer
    gauge is pinned to the center point's pivot rows so the rule stays
    smooth across the stencil.  Default step: ``1e-5 * |xi|``.
    """
    xi = np.asarray(xi, dtype=float)
    _require_generic(xi, tol, "symplectic_two_form_fd")
    if step is None:
        step = 1e-5 * octet_norm(xi)
    h0 = np.diag(energy_levels(xi))
    a0 = diagonalizer(xi, tol)
    pivots = (int(np.argmax(np.abs(a0[:, 0]))), int(np.argmax(np.abs(a0[:, 1]))))
    a0 = diagonalizer(xi, tol, pivots)
    thetas = np.empty((8, 3, 3), dtype=complex)
    for r in range(8):
        offset = np.zeros(8)
        offset[r] = step
        a_plus = diagonalizer(xi + offset, tol, pivots)
        a_minus = diagonalizer(xi - offset, tol, pivots)
        thetas[r] = a0.conj().T @ ((a_plus - a_minus) / (2.0 * step))
    prod = np.einsum("rij,sjk->rsik", thetas, thetas)
    comm = prod - prod.transpose(1, 0, 2, 3)
    return -np.einsum("ij,rsji->rs", h0, comm).imag
