"""2x2 spin algebra for the Dirac quantum walks.

Every matrix here is a plain ``(2, 2)`` complex numpy array and every spinor a
``(2,)`` complex array, ordered ``(up, down)`` in the eigenbasis of sigma_z.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

log = logging.getLogger(__name__)

MATRIX_TOL = 1e-12

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_PAULI = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}

# z-component of the Bloch vectors of the tau matrices (positive branch)
XI = np.sqrt(5.0) / 3.0
# tilt of tau_0 away from the z axis
ALPHA = float(np.arccos(XI))
# sum_i tau_i = 3*XI*sigma_z, so m*sigma_z = MASS_COUPLING * m * sum_i tau_i
MASS_COUPLING = 1.0 / (3.0 * XI)


@dataclass(frozen=True)
class WalkParams:
    """Lattice spacing / time step ``eps`` and particle mass."""

    eps: float
    mass: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.eps) and self.eps > 0):
            raise ValueError(f"eps must be a positive finite number, got {self.eps!r}")
        if not np.isfinite(self.mass) or self.mass < 0:
            raise ValueError(f"mass must be finite and >= 0, got {self.mass!r}")


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conjugate(np.swapaxes(m, -1, -2))


def unitarity_defect(m: np.ndarray) -> float:
    """max-entry deviation of ``m^dagger m`` from the identity."""
    return float(np.max(np.abs(dagger(m) @ m - IDENTITY)))


def is_unitary(m: np.ndarray, tol: float = MATRIX_TOL) -> bool:
    return unitarity_defect(m) <= tol


def max_abs_diff(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def pauli(axis: str) -> np.ndarray:
    try:
        return _PAULI[axis].copy()
    except KeyError:
        raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}") from None


def rotation(axis: str, angle: float) -> np.ndarray:
    """Spin-1/2 rotation ``exp(-i angle sigma_axis / 2)``."""
    return np.cos(angle / 2) * IDENTITY - 1j * np.sin(angle / 2) * pauli(axis)


def from_bloch(n) -> np.ndarray:
    """``n . sigma`` for a real 3-vector ``n``."""
    nx, ny, nz = n
    return nx * SIGMA_X + ny * SIGMA_Y + nz * SIGMA_Z


def bloch_vector(m: np.ndarray) -> np.ndarray:
    """Real coefficients ``(nx, ny, nz)`` of ``m`` on the Pauli matrices."""
    return np.real([np.trace(s @ m) / 2 for s in (SIGMA_X, SIGMA_Y, SIGMA_Z)])


def basis_change(axis: str) -> np.ndarray:
    """Unitary ``B`` with ``B sigma_z B^dagger = sigma_axis``.

    For ``x`` this is the Hadamard gate.  For ``y`` the columns are the
    sigma_y eigenvectors ``(1, i)/sqrt2`` and ``(1, -i)/sqrt2``.
    """
    if axis == "x":
        return np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    if axis == "y":
        return np.array([[-1j, 1j], [1, 1]], dtype=complex) / np.sqrt(2)
    raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")


def tau_bloch(i: int, xi_sign: int = +1) -> np.ndarray:
    """Bloch vector of ``tau_i``: in-plane part ``(2/3) u_i`` plus ``xi`` along z."""
    if i not in (0, 1, 2):
        raise ValueError(f"tau index must be 0, 1 or 2, got {i!r}")
    if xi_sign not in (+1, -1):
        raise ValueError("xi_sign must be +1 or -1")
    angle = 2 * np.pi * i / 3
    return np.array([2 / 3 * np.cos(angle), 2 / 3 * np.sin(angle), xi_sign * XI])


def tau(i: int, xi_sign: int = +1) -> np.ndarray:
    return from_bloch(tau_bloch(i, xi_sign))


def step_phase_S() -> np.ndarray:
    """Phase-corrected 2pi/3 rotation about z, ``diag(1, exp(-2i pi/3))``.

    Equal to ``exp(-i pi/3) R_z(-2pi/3)``.  It maps the Bloch vector of
    ``tau_{i+1}`` onto that of ``tau_i`` and cubes exactly to the identity,
    whereas the bare spin-1/2 rotation cubes to ``-1``.
    """
    return np.diag([1.0, np.exp(-2j * np.pi / 3)]).astype(complex)


def coin_U(i: int) -> np.ndarray:
    """Encoding unitary with ``U_i tau_i U_i^dagger = sigma_z``.

    ``U_0 = R_y(-ALPHA)`` brings the tau_0 Bloch vector onto z and
    ``U_{i+1} = U_i S``.
    """
    if i not in (0, 1, 2):
        raise ValueError(f"coin index must be 0, 1 or 2, got {i!r}")
    u = rotation("y", -ALPHA)
    s = step_phase_S()
    for _ in range(i):
        u = u @ s
    return u


def mass_matrix(p: WalkParams) -> np.ndarray:
    phase = p.eps * MASS_COUPLING * p.mass
    return np.diag([np.exp(-1j * phase), np.exp(1j * phase)])


def coin_W(p: WalkParams) -> np.ndarray:
    """Constant coin ``U_0 S U_0^dagger M`` shared by the honeycomb and triangular walks."""
    u0 = coin_U(0)
    return u0 @ step_phase_S() @ dagger(u0) @ mass_matrix(p)


def expm_hermitian(h: np.ndarray, t: float) -> np.ndarray:
    """``exp(-i t h)`` for a traceless Hermitian 2x2 ``h`` (closed form)."""
    n = bloch_vector(h)
    w = float(np.linalg.norm(n))
    return np.cos(w * t) * IDENTITY - 1j * t * np.sinc(w * t / np.pi) * from_bloch(n)


# ---------------------------------------------------------------------------
# Numerical search for all tau triples obeying C1 (unit Bloch vectors) and C2.

_COS = np.cos(2 * np.pi * np.arange(3) / 3)
_SIN = np.sin(2 * np.pi * np.arange(3) / 3)


def tau_residual(n: np.ndarray) -> np.ndarray:
    """Residual of the 9 conditions for Bloch vectors ``n`` of shape ``(..., 3, 3)``.

    Layout: 3 unit-norm conditions, then ``sum cos_i n_i - e_x`` and
    ``sum sin_i n_i - e_y`` componentwise.
    """
    norms = np.sum(n * n, axis=-1) - 1.0
    c = np.einsum("i,...ij->...j", _COS, n) - np.array([1.0, 0.0, 0.0])
    s = np.einsum("i,...ij->...j", _SIN, n) - np.array([0.0, 1.0, 0.0])
    return np.concatenate([norms, c, s], axis=-1)


def _tau_jacobian(n: np.ndarray) -> np.ndarray:
    batch = n.shape[:-2]
    jac = np.zeros(batch + (9, 9))
    for i in range(3):
        jac[..., i, 3 * i:3 * i + 3] = 2 * n[..., i, :]
        for j in range(3):
            jac[..., 3 + j, 3 * i + j] = _COS[i]
            jac[..., 6 + j, 3 * i + j] = _SIN[i]
    return jac


def solve_tau_conditions(n_starts: int = 1000, seed: int = 0, max_iter: int = 100,
                         tol: float = 1e-12, dedup: float = 1e-6) -> np.ndarray:
    """Multi-start damped Newton search for every tau triple obeying C1 and C2.

    Start points are triples of uniformly random unit vectors.  Returns the
    distinct solutions as an array of shape ``(n_solutions, 3, 3)`` (Bloch
    vectors of tau_0, tau_1, tau_2), sorted by decreasing z-component.
    Start points that fail to converge are skipped.
    """
    rng = np.random.default_rng(seed)
    n = rng.normal(size=(n_starts, 3, 3))
    n /= np.linalg.norm(n, axis=-1, keepdims=True)

    for _ in range(max_iter):
        r = tau_residual(n)
        if np.max(np.abs(r)) < tol:
            break
        # pinv tolerates the occasional singular Jacobian in the batch
        step = (np.linalg.pinv(_tau_jacobian(n)) @ r[..., None])[..., 0]
        size = np.linalg.norm(step, axis=-1, keepdims=True)
        damp = np.minimum(1.0, 1.0 / np.maximum(size, 1e-300))
        n = n - (damp * step).reshape(n.shape)

    resid = np.max(np.abs(tau_residual(n)), axis=-1)
    ok = np.isfinite(resid) & (resid < 1e-10)
    if not np.all(ok):
        log.info("solve_tau_conditions: %d of %d starts did not converge",
                 int(np.count_nonzero(~ok)), n_starts)

    found: list[np.ndarray] = []
    for cand in n[ok]:
        if all(np.max(np.abs(cand - f)) > dedup for f in found):
            found.append(cand)
    found.sort(key=lambda s: -s[0, 2])
    return np.array(found).reshape(len(found), 3, 3)
