"""Shared test utilities: random matrix factories and angle wrapping."""
import numpy as np

from su3holo.spectrum import energy_gaps, octet_norm


def wrap_angle(x: float) -> float:
    """Wrap to (-pi, pi]."""
    return float(np.angle(np.exp(1j * x)))


def random_hermitian(rng, n: int = 3, traceless: bool = False) -> np.ndarray:
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    h = (m + m.conj().T) / 2
    if traceless:
        h -= np.trace(h) / n * np.eye(n)
    return h


def _exp_i(h: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * w)) @ v.conj().T


def random_unitary(rng, n: int = 3) -> np.ndarray:
    return _exp_i(random_hermitian(rng, n))


def random_special_unitary(rng) -> np.ndarray:
    # det exp(iH) = exp(i Tr H) = 1 for traceless H
    return _exp_i(random_hermitian(rng, 3, traceless=True))


def random_generic_octet(rng, margin: float = 0.05, scale: float = 1.0) -> np.ndarray:
    while True:
        xi = scale * rng.standard_normal(8)
        gaps = energy_gaps(xi)
        if min(gaps[0], gaps[1]) > margin * octet_norm(xi):
            return xi


def random_rest_frame(rng, lo: float = 0.3, hi: float = 1.5):
    """Random generic rest-frame vector; returns (xi, e12, e23)."""
    e12 = rng.uniform(lo, hi)
    e23 = rng.uniform(lo, hi)
    xi = np.zeros(8)
    xi[2] = e12
    xi[7] = (e12 + 2.0 * e23) / np.sqrt(3.0)
    return xi, e12, e23
