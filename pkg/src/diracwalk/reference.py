"""Exact (2+1)-D Dirac evolution on a walk's own Fourier modes."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import BravaisField
from .spin import IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z


@dataclass(frozen=True)
class DiracParams:
    """``H = c_eff (kx sx + ky sy) + mass sz``."""

    mass: float = 0.0
    c_eff: float = 1.0

    def __post_init__(self):
        if not self.c_eff > 0:
            raise ValueError("c_eff must be positive")


def dirac_hamiltonian(k, dp: DiracParams) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    kx, ky = k[..., 0, None, None], k[..., 1, None, None]
    return dp.c_eff * (kx * SIGMA_X + ky * SIGMA_Y) + dp.mass * SIGMA_Z


def dispersion(k, dp: DiracParams):
    """``(+omega, -omega)`` with ``omega = sqrt(c^2 |k|^2 + m^2)``."""
    k = np.asarray(k, dtype=float)
    w = np.sqrt(dp.c_eff ** 2 * np.sum(k ** 2, axis=-1) + dp.mass ** 2)
    return w, -w


def dirac_propagator(k, t: float, dp: DiracParams) -> np.ndarray:
    """``exp(-i t H(k))`` in closed form; ``k`` may be batched as ``(..., 2)``."""
    k = np.asarray(k, dtype=float)
    w = dispersion(k, dp)[0][..., None, None]
    # sin(w t)/w, finite at w = 0
    sinc = t * np.sinc(w * t / np.pi)
    return np.cos(w * t) * IDENTITY - 1j * sinc * dirac_hamiltonian(k, dp)


def positive_energy_spinor(k, dp: DiracParams) -> np.ndarray:
    """Eigenvector of ``H(k)`` for ``+omega``; spin up when ``H(k) = 0``."""
    h = dirac_hamiltonian(np.asarray(k, dtype=float), dp)
    if np.max(np.abs(h)) == 0:
        return np.array([1.0, 0.0], dtype=complex)
    _, vecs = np.linalg.eigh(h)
    v = vecs[:, 1]
    # fix the global phase so the largest entry is real positive
    j = int(np.argmax(np.abs(v)))
    return v * np.exp(-1j * np.angle(v[j]))


def lattice_wavevectors(field: BravaisField) -> np.ndarray:
    """Physical wavevector of every FFT mode, shape ``(n1, n2, 2)``.

    Each mode fixes the phases ``theta_j = k . (spacing a_j)`` only modulo
    ``2 pi``; the representative of smallest ``|k|`` is returned.
    """
    n1, n2 = field.shape
    th1 = 2 * np.pi * np.fft.fftfreq(n1)
    th2 = 2 * np.pi * np.fft.fftfreq(n2)
    theta = np.stack(np.meshgrid(th1, th2, indexing="ij"), axis=-1)
    inv = np.linalg.inv(field.lattice_vectors)
    best = theta @ inv.T
    best_norm = np.sum(best ** 2, axis=-1)
    for s1 in (-1, 0, 1):
        for s2 in (-1, 0, 1):
            if s1 == s2 == 0:
                continue
            cand = (theta + 2 * np.pi * np.array([s1, s2])) @ inv.T
            cn = np.sum(cand ** 2, axis=-1)
            better = cn < best_norm
            best[better] = cand[better]
            best_norm = np.where(better, cn, best_norm)
    return best


def lattice_phases(field: BravaisField) -> np.ndarray:
    """Per-mode index phases ``(theta1, theta2)`` in ``[-pi, pi)``, shape ``(n1, n2, 2)``."""
    n1, n2 = field.shape
    th1 = 2 * np.pi * np.fft.fftfreq(n1)
    th2 = 2 * np.pi * np.fft.fftfreq(n2)
    return np.stack(np.meshgrid(th1, th2, indexing="ij"), axis=-1)


@dataclass
class FourierModeSet:
    """Unitary (``norm='ortho'``) Fourier amplitudes of a Bravais field."""

    k: np.ndarray           # (n1, n2, 2)
    amplitudes: np.ndarray  # (2, n1, n2)
    spacing: float
    basis: str

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def to_field(self) -> BravaisField:
        data = np.fft.ifft2(self.amplitudes, axes=(1, 2), norm="ortho")
        return BravaisField(data, self.spacing, self.basis)


def fourier_modes(field: BravaisField) -> FourierModeSet:
    amps = np.fft.fft2(field.data, axes=(1, 2), norm="ortho")
    return FourierModeSet(lattice_wavevectors(field), amps, field.spacing, field.basis)


def dirac_evolve(field: BravaisField, t: float, dp: DiracParams) -> BravaisField:
    """Evolve the sampled field exactly under the continuum Dirac equation."""
    modes = fourier_modes(field)
    u = dirac_propagator(modes.k, t, dp)
    amps = np.einsum("xyab,bxy->axy", u, modes.amplitudes)
    modes.amplitudes = amps
    return modes.to_field()
