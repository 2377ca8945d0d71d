"""Closed-form spectral data for traceless 3 x 3 Hermitian matrices.

The spectrum of ``H(xi) = (1/2) xi . lambda`` is obtained without any
iterative eigensolver.  Writing the cubic invariant as

    ``(xi * xi) . xi = -|xi|^3 sin(3 phi)``,  ``phi in [pi/6, pi/2]``,

the angle ``phi`` is uniquely determined (and adjoint-invariant), and the
eigenvalues are

    ``E_a = (|xi| / sqrt(3)) sin(phi + 2 pi (a - 1) / 3)``,  a = 1, 2, 3,

which for ``phi`` in the allowed range are automatically nonincreasing and
sum to zero.  The gaps take the closed forms ``E12 = |xi| sin(phi - pi/6)``
and ``E23 = |xi| cos(phi)``; the upper/lower double degeneracies sit at the
interval endpoints ``phi = pi/6`` / ``phi = pi/2`` (equivalently where the
cubic invariant reaches -|xi|^3 / +|xi|^3), and the triple degeneracy only
at ``xi = 0``.

Eigenvectors are likewise computed from the closed-form eigenvalues, by
null-space extraction on ``H - E_a I`` (cross product of the two most
independent rows), not by a generic eigensolver.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .algebra import cubic_invariant, octet_to_matrix
from .errors import DegenerateInput

__all__ = [
    "DEFAULT_CLASSIFY_TOL",
    "DegeneracyClass",
    "SpectralData",
    "octet_norm",
    "phase_angle",
    "energy_levels",
    "energy_gaps",
    "eigenvalues",
    "classify",
    "generic_mask",
    "rest_frame",
    "diagonalizer",
]

DEFAULT_CLASSIFY_TOL = 1e-9

_SHIFTS = 2.0 * np.pi * np.arange(3) / 3.0


class DegeneracyClass(enum.Enum):
    """Degeneracy pattern of a three-level spectrum."""

    GENERIC = "generic"
    UPPER_DEGENERATE = "upper_degenerate"
    LOWER_DEGENERATE = "lower_degenerate"
    TRIPLE_DEGENERATE = "triple_degenerate"


@dataclass(frozen=True)
class SpectralData:
    """Ordered eigenvalues, invariant angle, gaps and degeneracy class.

    ``e1 >= e2 >= e3`` with ``e1 + e2 + e3 = 0``; ``e13 = e12 + e23``.
    ``phi`` is NaN for the zero vector, where the angle is undefined.
    """

    e1: float
    e2: float
    e3: float
    phi: float
    e12: float
    e23: float
    e13: float
    degeneracy: DegeneracyClass

    @property
    def energies(self) -> np.ndarray:
        return np.array([self.e1, self.e2, self.e3])


def _as_octet(xi) -> np.ndarray:
    xi = np.asarray(xi, dtype=float)
    if xi.shape[-1] != 8:
        raise ValueError(f"octet vectors have 8 components, got shape {xi.shape}")
    return xi


def octet_norm(xi) -> float | np.ndarray:
    """Euclidean norm of (batches of) octet vectors."""
    out = np.linalg.norm(_as_octet(xi), axis=-1)
    return float(out) if out.ndim == 0 else out


def _angle(xi: np.ndarray, norm: np.ndarray) -> np.ndarray:
    # sin(3 phi) = -cubic / |xi|^3 with 3 phi in [pi/2, 3 pi/2], where the
    # sine is monotone, so phi = (pi - arcsin(.)) / 3 is the unique solution.
    cubic = cubic_invariant(xi)
    with np.errstate(divide="ignore", invalid="ignore"):
        s3 = np.where(norm > 0.0, -cubic / norm**3, 0.0)
    s3 = np.clip(s3, -1.0, 1.0)
    return (np.pi - np.arcsin(s3)) / 3.0


def phase_angle(xi) -> float | np.ndarray:
    """Adjoint-invariant spectral angle ``phi`` in ``[pi/6, pi/2]``.

    Raises
    ------
    ValueError
        For the zero vector, where the angle is undefined.
    """
    xi = _as_octet(xi)
    norm = np.linalg.norm(xi, axis=-1)
    if np.any(norm == 0.0):
        raise ValueError("phase angle is undefined for the zero vector")
    out = _angle(xi, norm)
    return float(out) if out.ndim == 0 else out


def energy_levels(xi) -> np.ndarray:
    """Closed-form eigenvalues of ``H(xi)``, shape (..., 3), descending.

    The zero vector yields ``(0, 0, 0)``.
    """
    xi = _as_octet(xi)
    norm = np.linalg.norm(xi, axis=-1)
    phi = _angle(xi, norm)
    return (norm[..., None] / np.sqrt(3.0)) * np.sin(phi[..., None] + _SHIFTS)


def energy_gaps(xi) -> np.ndarray:
    """Gaps ``(E12, E23, E13)`` in closed form, shape (..., 3), all >= 0."""
    xi = _as_octet(xi)
    norm = np.linalg.norm(xi, axis=-1)
    phi = _angle(xi, norm)
    e12 = np.clip(norm * np.sin(phi - np.pi / 6.0), 0.0, None)
    e23 = np.clip(norm * np.cos(phi), 0.0, None)
    return np.stack([e12, e23, e12 + e23], axis=-1)


def classify(xi, tol: float = DEFAULT_CLASSIFY_TOL) -> DegeneracyClass:
    """Degeneracy class of a single octet vector at relative tolerance ``tol``.

    Triple-degenerate if ``|xi| <= tol``; otherwise upper/lower degenerate
    when the corresponding gap falls below ``tol * |xi|``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    xi = _as_octet(xi)
    if xi.ndim != 1:
        raise ValueError("classify takes a single octet vector")
    norm = float(np.linalg.norm(xi))
    if norm <= tol:
        return DegeneracyClass.TRIPLE_DEGENERATE
    e12, e23, _ = energy_gaps(xi)
    if e12 <= tol * norm:
        return DegeneracyClass.UPPER_DEGENERATE
    if e23 <= tol * norm:
        return DegeneracyClass.LOWER_DEGENERATE
    return DegeneracyClass.GENERIC


def generic_mask(xis, tol: float = DEFAULT_CLASSIFY_TOL) -> np.ndarray:
    """Boolean mask over a batch of octet vectors: True where Generic."""
    xis = _as_octet(xis)
    norm = np.linalg.norm(xis, axis=-1)
    gaps = energy_gaps(xis)
    return (norm > tol) & (gaps[..., 0] > tol * norm) & (gaps[..., 1] > tol * norm)


def eigenvalues(xi, tol: float = DEFAULT_CLASSIFY_TOL) -> SpectralData:
    """Full closed-form spectral record for a single octet vector."""
    xi = _as_octet(xi)
    if xi.ndim != 1:
        raise ValueError("eigenvalues takes a single octet vector")
    norm = float(np.linalg.norm(xi))
    e = energy_levels(xi)
    e12, e23, e13 = energy_gaps(xi)
    phi = phase_angle(xi) if norm > 0.0 else float("nan")
    return SpectralData(
        float(e[0]), float(e[1]), float(e[2]),
        phi, float(e12), float(e23), float(e13),
        classify(xi, tol),
    )


def rest_frame(xi) -> np.ndarray:
    """Rest-frame representative of the adjoint orbit through ``xi``.

    Only components 3 and 8 are nonzero: ``xi3 = E12`` and
    ``xi8 = -sqrt(3) E3 = (E13 + E23)/sqrt(3)``, so that the rebuilt matrix
    is diagonal with nonincreasing entries and ``xi8 >= xi3/sqrt(3) >= 0``.
    Broadcasts over leading axes; idempotent; preserves both invariants.
    """
    xi = _as_octet(xi)
    e = energy_levels(xi)
    out = np.zeros_like(xi)
    out[..., 2] = e[..., 0] - e[..., 1]
    out[..., 7] = -np.sqrt(3.0) * e[..., 2]
    return out


def _eigenvector_columns(h: np.ndarray, e: np.ndarray) -> np.ndarray:
    """Unit eigenvectors of (batches of) 3 x 3 Hermitian ``h`` for the given
    eigenvalues ``e`` (..., 3), as columns ordered like ``e``.

    Each null space of ``h - e_a I`` is extracted from the cross product of
    the pair of rows with the largest 2 x 2 subdeterminants.
    """
    m = h[..., None, :, :] - e[..., :, None, None] * np.eye(3)  # (..., level, 3, 3)
    cands = np.stack(
        [
            np.cross(m[..., 0, :], m[..., 1, :]),
            np.cross(m[..., 0, :], m[..., 2, :]),
            np.cross(m[..., 1, :], m[..., 2, :]),
        ],
        axis=-2,
    )  # (..., level, pair, 3)
    norms = np.linalg.norm(cands, axis=-1)
    best = np.argmax(norms, axis=-1)
    vecs = np.take_along_axis(cands, best[..., None, None], axis=-2)[..., 0, :]
    vecs = vecs / np.linalg.norm(vecs, axis=-1)[..., None]
    return np.swapaxes(vecs, -1, -2)  # columns indexed by level


def _fix_gauge(a: np.ndarray, pivots=None) -> np.ndarray:
    """Fix eigenvector phases: for the first two columns rotate the phase so
    the pivot component (largest magnitude unless given) is real positive,
    then phase the third column so det = 1."""
    a = a.copy()
    for k in range(2):
        col = a[..., :, k]
        if pivots is None:
            idx = np.argmax(np.abs(col), axis=-1)
        else:
            idx = np.broadcast_to(pivots[k], col.shape[:-1]).copy()
        piv = np.take_along_axis(col, idx[..., None], axis=-1)[..., 0]
        phase = piv / np.abs(piv)
        a[..., :, k] = col * np.conj(phase)[..., None]
    det = np.linalg.det(a)
    a[..., :, 2] = a[..., :, 2] * (np.conj(det) / np.abs(det))[..., None]
    return a


def _frames(xi, pivots=None) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form eigenvalues and gauge-fixed eigenvector matrices for
    (batches of) octet vectors.  No degeneracy guard: callers must ensure
    the points are generic."""
    xi = _as_octet(xi)
    h = octet_to_matrix(xi)
    e = energy_levels(xi)
    a = _eigenvector_columns(h, e)
    return e, _fix_gauge(a, pivots)


def diagonalizer(xi, tol: float = DEFAULT_CLASSIFY_TOL, pivots=None) -> np.ndarray:
    """Special-unitary matrix ``A(xi)`` whose columns are the eigenvectors of
    ``H(xi)`` in descending eigenvalue order, so that
    ``A^dagger H(xi) A = H(rest_frame(xi))``.

    The residual right ambiguity is fixed deterministically: the first two
    columns are phased so their largest-magnitude component is real positive
    (ties broken by lowest row index), and the third column's phase forces
    ``det A = 1``.  ``pivots``, when given as two row indices, overrides the
    largest-component rule so the gauge can be held fixed across a
    neighborhood (used by finite-difference checks).

    Raises
    ------
    DegenerateInput
        If ``classify(xi, tol)`` is not Generic; eigenvector phases and
        mixing are not determined on the degeneracy surfaces.
    """
    xi = _as_octet(xi)
    if xi.ndim != 1:
        raise ValueError("diagonalizer takes a single octet vector")
    klass = classify(xi, tol)
    if klass is not DegeneracyClass.GENERIC:
        raise DegenerateInput(f"diagonalizer requires a generic spectrum, got {klass.value}")
    _, a = _frames(xi, pivots)
    return a
