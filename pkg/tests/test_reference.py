import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from diracwalk.lattice import BravaisField
from diracwalk.reference import (
    DiracParams, dirac_evolve, dirac_hamiltonian, dirac_propagator, dispersion, fourier_modes,
    lattice_wavevectors, positive_energy_spinor,
)
from conftest import random_spinors

finite = st.floats(-4, 4)


@pytest.mark.parametrize("k, dp, expected", [
    ((0, 0), DiracParams(2.0), 2.0),
    ((1, 0), DiracParams(0.0), 1.0),
    ((0.6, 0.8), DiracParams(0.0, np.sqrt(3) / 6), np.sqrt(3) / 6),
])
def test_dispersion_examples(k, dp, expected):
    plus, minus = dispersion(k, dp)
    assert plus == pytest.approx(expected) and minus == pytest.approx(-expected)


@settings(max_examples=50, deadline=None)
@given(kx=finite, ky=finite, m=st.floats(0, 3), c=st.floats(0.1, 2), t=st.floats(-3, 3))
def test_propagator_matches_matrix_exponential(kx, ky, m, c, t):
    dp = DiracParams(m, c)
    h = dirac_hamiltonian((kx, ky), dp)
    u = dirac_propagator((kx, ky), t, dp)
    assert np.max(np.abs(u - expm(-1j * t * h))) < 1e-12
    assert abs(abs(np.linalg.det(u)) - 1) < 1e-12


def test_propagator_at_zero_frequency():
    u = dirac_propagator((0.0, 0.0), 1.7, DiracParams(0.0))
    assert np.array_equal(u, np.eye(2))


def test_propagator_batched():
    k = np.random.default_rng(1).normal(size=(4, 3, 2))
    u = dirac_propagator(k, 0.5, DiracParams(1.0))
    assert u.shape == (4, 3, 2, 2)
    assert np.allclose(u[2, 1], dirac_propagator(k[2, 1], 0.5, DiracParams(1.0)))


def test_positive_energy_spinor():
    dp = DiracParams(0.5)
    for k in [(1.0, 0.5), (0.0, -2.0), (0.0, 0.0)]:
        v = positive_energy_spinor(k, dp)
        w = dispersion(k, dp)[0]
        assert np.allclose(dirac_hamiltonian(k, dp) @ v, w * v)
    assert np.array_equal(positive_energy_spinor((0, 0), DiracParams(0.0)), [1, 0])


def test_wavevectors_reproduce_lattice_phases():
    for basis in ("rectangular", "triangular-bravais"):
        f = BravaisField.zeros(6, 8, 0.25, basis)
        k = lattice_wavevectors(f)
        theta = k @ f.lattice_vectors.T
        j1, j2 = np.meshgrid(np.arange(6), np.arange(8), indexing="ij")
        expected = 2 * np.pi * np.stack([np.fft.fftfreq(6)[j1], np.fft.fftfreq(8)[j2]], axis=-1)
        diff = (theta - expected + np.pi) % (2 * np.pi) - np.pi
        assert np.max(np.abs(diff)) < 1e-12


def test_wavevectors_pick_shortest_alias():
    f = BravaisField.zeros(12, 12, 1.0, "triangular-bravais")
    k = lattice_wavevectors(f)
    recip = 2 * np.pi * np.linalg.inv(f.lattice_vectors)
    norms = np.linalg.norm(k, axis=-1)
    for s1 in range(-2, 3):
        for s2 in range(-2, 3):
            shifted = k + s1 * recip[:, 0] + s2 * recip[:, 1]
            assert np.all(norms <= np.linalg.norm(shifted, axis=-1) + 1e-12)


def test_plane_wave_is_eigenmode():
    f = BravaisField.zeros(8, 8, 0.5, "triangular-bravais")
    dp = DiracParams(0.7)
    k = lattice_wavevectors(f)[2, 1]
    x, y = f.positions()
    v = positive_energy_spinor(k, dp)
    f.data = v[:, None, None] * np.exp(1j * (k[0] * x + k[1] * y))
    t = 1.3
    out = dirac_evolve(f, t, dp)
    w = dispersion(k, dp)[0]
    assert np.max(np.abs(out.data - np.exp(-1j * w * t) * f.data)) < 1e-12


def test_group_property_and_parseval(rng):
    f = BravaisField(random_spinors(rng, (2, 16, 12)), 0.1, "triangular-bravais")
    f.data /= f.norm()
    dp = DiracParams(1.0)
    a = dirac_evolve(f, 0.7, dp)
    b = dirac_evolve(dirac_evolve(f, 0.3, dp), 0.4, dp)
    assert np.max(np.abs(a.data - b.data)) < 1e-12
    assert abs(fourier_modes(f).norm() - f.norm()) < 1e-12
    assert abs(a.norm() - 1) < 1e-12
    back = dirac_evolve(a, -0.7, dp)
    assert np.max(np.abs(back.data - f.data)) < 1e-12


def test_mode_set_roundtrip(rng):
    f = BravaisField(random_spinors(rng, (2, 6, 6)), 0.1)
    assert np.max(np.abs(fourier_modes(f).to_field().data - f.data)) < 1e-14


def test_rejects_nonpositive_speed():
    with pytest.raises(ValueError):
        DiracParams(0.0, 0.0)
