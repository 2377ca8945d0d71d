"""Geometric phases along closed loops and curvature fluxes through
parameterized two-surfaces in octet space.

Loop phases are computed as discrete parallel-transport products: the phase
of level ``a`` around a closed sample sequence is the negative argument of
the cyclic product of consecutive eigenvector overlaps.  Each eigenvector
enters once as a bra and once as a ket, so the result is manifestly
independent of the eigenvector gauge, and it converges to the adiabatic
geometric phase as the sampling is refined.

Orientation convention (fixed once by the Stokes consistency requirement
and used throughout): ``SurfacePatch.boundary()`` traverses the patch edge
negatively with respect to the (u, v) parameterization, which makes

    ``loop_phase(patch.boundary(), a)  ==  surface_flux(patch, a)  (mod 2 pi)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curvature import _coeffs_from_frames
from .errors import DegenerateInput, UnderResolvedPath
from .spectrum import DEFAULT_CLASSIFY_TOL, _frames, generic_mask

__all__ = [
    "LoopPath",
    "SurfacePatch",
    "circle_loop",
    "spherical_patch",
    "loop_phase",
    "surface_flux",
    "phase_sum_rule_check",
]

OVERLAP_GUARD = 0.1


@dataclass
class LoopPath:
    """Closed loop given by N octet-vector samples (the last connects back
    to the first).  Every sample must be generic."""

    samples: np.ndarray = field(repr=False)
    tol: float = DEFAULT_CLASSIFY_TOL

    def __post_init__(self):
        pts = np.asarray(self.samples, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 8 or pts.shape[0] < 3:
            raise ValueError("a loop needs at least 3 samples of 8 components")
        if not np.all(generic_mask(pts, self.tol)):
            raise DegenerateInput("loop passes through a degeneracy")
        self.samples = pts

    def reversed(self) -> "LoopPath":
        return LoopPath(self.samples[::-1].copy(), self.tol)


@dataclass
class SurfacePatch:
    """Two-surface sampled on a (u, v) grid over [0, 1]^2 with bilinear
    interpolation between grid points.  Every grid point must be generic."""

    grid: np.ndarray = field(repr=False)
    tol: float = DEFAULT_CLASSIFY_TOL

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        if g.ndim != 3 or g.shape[2] != 8 or g.shape[0] < 2 or g.shape[1] < 2:
            raise ValueError("a patch needs an (nu, nv, 8) grid with nu, nv >= 2")
        if not np.all(generic_mask(g, self.tol)):
            raise DegenerateInput("patch contains a degenerate grid point")
        self.grid = g

    @classmethod
    def from_function(cls, fn, shape: tuple[int, int],
                      tol: float = DEFAULT_CLASSIFY_TOL) -> "SurfacePatch":
        """Sample a map ``fn(u, v) -> octet vector`` on a regular grid."""
        nu, nv = shape
        us = np.linspace(0.0, 1.0, nu)
        vs = np.linspace(0.0, 1.0, nv)
        grid = np.array([[fn(u, v) for v in vs] for u in us], dtype=float)
        return cls(grid, tol)

    def value(self, u: float, v: float) -> np.ndarray:
        """Bilinear interpolation at (u, v) in [0, 1]^2."""
        nu, nv = self.grid.shape[:2]
        fu = np.clip(u, 0.0, 1.0) * (nu - 1)
        fv = np.clip(v, 0.0, 1.0) * (nv - 1)
        i = min(int(fu), nu - 2)
        j = min(int(fv), nv - 2)
        s, t = fu - i, fv - j
        g = self.grid
        return ((1 - s) * (1 - t) * g[i, j] + s * (1 - t) * g[i + 1, j]
                + (1 - s) * t * g[i, j + 1] + s * t * g[i + 1, j + 1])

    def boundary(self) -> LoopPath:
        """Boundary loop in the orientation for which the discrete phase
        equals the surface flux (negative with respect to (u, v))."""
        g = self.grid
        ccw = np.concatenate(
            [g[:-1, 0], g[-1, :-1], g[-1:0:-1, -1], g[0, -1:0:-1]]
        )
        return LoopPath(ccw[::-1].copy(), self.tol)


def circle_loop(center, axis_a, axis_b, radius: float, samples: int,
                tol: float = DEFAULT_CLASSIFY_TOL) -> LoopPath:
    """Circle of the given radius around ``center`` in the plane spanned by
    two orthonormal octet directions."""
    center = np.asarray(center, dtype=float)
    ea = np.asarray(axis_a, dtype=float)
    eb = np.asarray(axis_b, dtype=float)
    for v in (center, ea, eb):
        if v.shape != (8,):
            raise ValueError("circle descriptors take 8-component vectors")
    if abs(ea @ eb) > 1e-9 or abs(ea @ ea - 1) > 1e-9 or abs(eb @ eb - 1) > 1e-9:
        raise ValueError("circle axes must be orthonormal")
    angles = 2.0 * np.pi * np.arange(samples) / samples
    pts = center + radius * (np.cos(angles)[:, None] * ea + np.sin(angles)[:, None] * eb)
    return LoopPath(pts, tol)


def spherical_patch(center, frame, radius: float,
                    theta_range: tuple[float, float] = (0.0, np.pi),
                    shape: tuple[int, int] = (64, 128),
                    tol: float = DEFAULT_CLASSIFY_TOL) -> SurfacePatch:
    """Spherical patch ``center + radius * (sin t cos p, sin t sin p, cos t)``
    mapped through three orthonormal octet directions ``frame``; ``u`` runs
    over theta in ``theta_range``, ``v`` over phi in [0, 2 pi]."""
    center = np.asarray(center, dtype=float)
    frame = np.asarray(frame, dtype=float)
    if frame.shape != (3, 8):
        raise ValueError("frame must hold three 8-component vectors")
    if np.abs(frame @ frame.T - np.eye(3)).max() > 1e-9:
        raise ValueError("frame vectors must be orthonormal")
    t0, t1 = theta_range
    nu, nv = shape
    thetas = np.linspace(t0, t1, nu)
    phis = np.linspace(0.0, 2.0 * np.pi, nv)
    th = thetas[:, None, None]
    ph = phis[None, :, None]
    local = np.concatenate(
        [np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph),
         np.broadcast_to(np.cos(th), (nu, nv, 1))], axis=-1
    )
    grid = center + radius * np.einsum("uvk,kr->uvr", local, frame)
    return SurfacePatch(grid, tol)


def _level_vectors(samples: np.ndarray, level: int) -> np.ndarray:
    _, frames = _frames(samples)
    return frames[..., :, level - 1]


def loop_phase(path: LoopPath, level: int) -> float:
    """Discrete geometric phase of one level around a closed loop, in
    ``(-pi, pi]``: minus the argument of the cyclic product of consecutive
    eigenvector overlaps.  The running product is renormalized each step,
    so no unwrapping heuristic is involved.

    Raises
    ------
    UnderResolvedPath
        If any consecutive overlap magnitude drops to ``0.1`` or below
        (under-resolved sampling or a level crossing en route).
    """
    if level not in (1, 2, 3):
        raise ValueError(f"level must be 1, 2 or 3, got {level}")
    vecs = _level_vectors(path.samples, level)
    nxt = np.roll(vecs, -1, axis=0)
    overlaps = np.einsum("ki,ki->k", vecs.conj(), nxt)
    mags = np.abs(overlaps)
    if np.any(mags <= OVERLAP_GUARD):
        k = int(np.argmin(mags))
        raise UnderResolvedPath(
            f"overlap magnitude {mags[k]:.3f} at step {k} is below the guard"
        )
    prod = complex(1.0, 0.0)
    for z in overlaps:
        prod *= z / abs(z)
    return float(-np.angle(prod))


def surface_flux(patch: SurfacePatch, level: int) -> float:
    """Flux ``integral of (1/2) V_rs dxi_r ^ dxi_s`` of one level's curvature
    through the patch: per-cell midpoint quadrature of the bilinear grid,
    contracting the curvature with the (u, v) Jacobian two-vectors."""
    if level not in (1, 2, 3):
        raise ValueError(f"level must be 1, 2 or 3, got {level}")
    g = patch.grid
    centers = (g[:-1, :-1] + g[1:, :-1] + g[:-1, 1:] + g[1:, 1:]) / 4.0
    du = ((g[1:, :-1] + g[1:, 1:]) - (g[:-1, :-1] + g[:-1, 1:])) / 2.0
    dv = ((g[:-1, 1:] + g[1:, 1:]) - (g[:-1, :-1] + g[1:, :-1])) / 2.0
    if not np.all(generic_mask(centers, patch.tol)):
        raise DegenerateInput("patch contains a degenerate quadrature point")
    e, frames = _frames(centers)
    v = _coeffs_from_frames(e, frames, level)
    return float(np.einsum("uvr,uvrs,uvs->", du, v, dv))


def phase_sum_rule_check(path: LoopPath) -> tuple[tuple[float, float, float], float]:
    """Loop phases of all three levels and their sum wrapped to
    ``(-pi, pi]``.  The sum vanishes (mod 2 pi): the three curvature forms
    add to zero, equivalently the product of the three transport holonomies
    is the determinant phase of a special-unitary transport."""
    phases = tuple(loop_phase(path, a) for a in (1, 2, 3))
    total = float(np.angle(np.exp(1j * sum(phases))))
    return phases, total
