"""Wave packets, error norms, convergence-order fits and walk dispersion.

Units for the triangular walk
-----------------------------
One triangular step lasts ``eps`` and moves a spinor component between edge
midpoints a distance ``(sqrt3/2) eps`` apart.  Three steps form a *cycle*
that runs one honeycomb step.  Two bookkeepings are supported:

* rescaled (default): lengths in units where the midpoint hop is ``eps`` and
  one cycle lasts ``eps``.  The continuum limit is then the Dirac equation
  with ``c_eff = 1`` and mass ``m``, exactly like the honeycomb walk.
* native: lengths and times as above, with no rescaling.  The limit is
  ``c_eff = sqrt3/6`` and mass ``m/3``.

Both describe the same lattice operator; the overall factor between them is
``6/sqrt3`` (3 steps per cycle times the ``sqrt3/2`` hop).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import spin
from .lattice import (
    BASES,
    NEIGHBOR_OFFSET,
    BravaisField,
    TriangularField,
    direction,
    from_k0_sublattice,
    k0_sublattice,
)
from .reference import (
    DiracParams,
    dirac_evolve,
    dispersion,
    lattice_phases,
    positive_energy_spinor,
)
from .spin import WalkParams
from .walks import WALK_KINDS, StepOperator, decode, encode, evolve

MIN_SIGMA = 4.0
BRANCHES = ("positive-energy", "up-spinor", "random")
TRI_C_EFF = np.sqrt(3) / 6
TRI_HOP = np.sqrt(3) / 2


@dataclass(frozen=True)
class PacketSpec:
    """Gaussian wave packet.

    ``k0`` is the carrier wavevector, ``sigma`` the real-space width of the
    amplitude envelope in lattice units.  ``branch`` picks the spinor: the
    positive-energy eigenvector of ``H_D(k0)``, spin up, or a random spinor
    drawn from ``seed``.
    """

    k0: tuple = (0.0, 0.0)
    sigma: float = 8.0
    branch: str = "positive-energy"
    seed: int = 0

    def __post_init__(self):
        if self.branch not in BRANCHES:
            raise ValueError(f"branch must be one of {BRANCHES}, got {self.branch!r}")
        if not self.sigma >= MIN_SIGMA:
            raise ValueError(f"sigma must be >= {MIN_SIGMA} lattice units, got {self.sigma}")
        if len(self.k0) != 2:
            raise ValueError("k0 must have two components")


def packet_spinor(spec: PacketSpec, dp: DiracParams) -> np.ndarray:
    if spec.branch == "positive-energy":
        return positive_energy_spinor(spec.k0, dp)
    if spec.branch == "up-spinor":
        return np.array([1.0, 0.0], dtype=complex)
    rng = np.random.default_rng(spec.seed)
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return v / np.linalg.norm(v)


def _gaussian(x, y, center, k0, width):
    r2 = (x - center[0]) ** 2 + (y - center[1]) ** 2
    return np.exp(-r2 / (2 * width ** 2) + 1j * (k0[0] * x + k0[1] * y))


def make_packet(kind: str, shape: tuple[int, int], eps: float, spec: PacketSpec,
                dp: DiracParams | None = None, hop: float | None = None):
    """Normalised Gaussian packet (in the physical, un-encoded frame).

    ``regular`` gives a rectangular field and ``honeycomb`` a
    triangular-bravais field, both with spacing ``eps``.  ``triangular``
    gives a :class:`TriangularField` populated on side-0 edges only; its
    midpoint hop defaults to ``(sqrt3/2) eps`` and ``sigma`` counts side-0
    cells (spacing ``2 hop``).
    """
    dp = DiracParams() if dp is None else dp
    if kind not in WALK_KINDS:
        raise ValueError(f"unknown walk kind {kind!r}")
    v = packet_spinor(spec, dp)
    if kind == "triangular":
        h = TRI_HOP * eps if hop is None else hop
        sub = BravaisField.zeros(*shape, 2 * h, "triangular-bravais")
    else:
        sub = BravaisField.zeros(*shape, eps, "rectangular" if kind == "regular" else "triangular-bravais")
    x, y = sub.positions()
    env = _gaussian(x, y, sub.center(), spec.k0, spec.sigma * sub.spacing)
    sub.data = v[:, None, None] * env
    sub.data /= sub.norm()
    if kind == "triangular":
        return from_k0_sublattice(sub, eps)
    return sub


def spectral_weight_outside(field: BravaisField, fraction: float = 0.5) -> float:
    """Share of ``|psi|^2`` in modes with ``max|theta_j| > fraction * pi``."""
    amps = np.fft.fft2(field.data, axes=(1, 2), norm="ortho")
    theta = lattice_phases(field)
    outside = np.max(np.abs(theta), axis=-1) > fraction * np.pi
    w = np.sum(np.abs(amps) ** 2, axis=0)
    return float(np.sum(w[outside]) / np.sum(w))


def l2_error(a, b) -> float:
    if type(a) is not type(b) or a.data.shape != b.data.shape:
        raise ValueError("fields must have the same type and shape")
    return float(np.sqrt(np.sum(np.abs(a.data - b.data) ** 2)))


def _site_moments(x_list, y_list, w_list):
    w_tot = sum(np.sum(w) for w in w_list)
    mx = sum(np.sum(w * x) for x, w in zip(x_list, w_list)) / w_tot
    my = sum(np.sum(w * y) for y, w in zip(y_list, w_list)) / w_tot
    var = sum(np.sum(w * ((x - mx) ** 2 + (y - my) ** 2))
              for x, y, w in zip(x_list, y_list, w_list)) / w_tot
    return np.array([mx, my]), float(np.sqrt(var))


def moments(field) -> tuple[np.ndarray, float]:
    """Mean position and rms spread of ``|psi|^2`` (unwrapped coordinates)."""
    if isinstance(field, TriangularField):
        dens = field.density()
        pos = [field.positions(k) for k in range(3)]
        return _site_moments([p[0] for p in pos], [p[1] for p in pos], list(dens))
    x, y = field.positions()
    return _site_moments([x], [y], [field.density()])


# ---------------------------------------------------------------------------
# convergence


@dataclass
class ConvergenceReport:
    eps: np.ndarray
    l2_error: np.ndarray
    fitted_order: float
    fit_residual: float
    meta: dict = dc_field(default_factory=dict)

    def rows(self):
        return list(zip(self.eps.tolist(), self.l2_error.tolist()))


def fit_order(eps, errors) -> tuple[float, float]:
    """Least-squares slope of ``log(error)`` against ``log(eps)`` and the rms residual."""
    x, y = np.log(np.asarray(eps, float)), np.log(np.asarray(errors, float))
    if len(x) < 2:
        raise ValueError("need at least two points to fit an order")
    coeffs = np.polyfit(x, y, 1)
    resid = y - np.polyval(coeffs, x)
    return float(coeffs[0]), float(np.sqrt(np.mean(resid ** 2)))


def _as_count(value: float, what: str) -> int:
    n = int(round(value))
    if n < 1 or abs(value - n) > 1e-9 * max(1.0, abs(value)):
        raise ValueError(f"{what} must be a positive integer, got {value}")
    return n


def walk_vs_dirac(walk: str, T: float, mass: float, eps: float, spec: PacketSpec,
                  extent: float, sigma_phys: float, rescale_time: bool = True) -> float:
    """l2 distance after physical time ``T`` between one walk and the Dirac reference."""
    params = WalkParams(eps, mass)
    op = StepOperator.build(walk, params)
    steps = _as_count(T / eps, "T/eps")
    if walk in ("regular", "honeycomb"):
        n = _as_count(extent / eps, "extent/eps")
        dp = DiracParams(mass, 1.0)
        psi0 = make_packet(walk, (n, n), eps, _with_sigma(spec, sigma_phys / eps), dp)
        ref = dirac_evolve(psi0, T, dp)
        if walk == "regular":
            out = evolve(psi0, op, steps)
        else:
            out = decode(evolve(encode(psi0), op, steps))
        return l2_error(out, ref)

    # triangular: one cycle (3 steps) per eps of physical time
    n = _as_count(extent / (2 * eps), "extent/(2 eps)")
    if rescale_time:
        hop, k0, dp, t_ref = eps, spec.k0, DiracParams(mass, 1.0), T
    else:
        hop = TRI_HOP * eps
        k0 = tuple(np.asarray(spec.k0) / TRI_HOP)
        dp, t_ref = DiracParams(mass / 3, TRI_C_EFF), 3 * T
    cells = sigma_phys / (2 * eps)
    psi0 = make_packet("triangular", (n, n), eps, _with_sigma(spec, cells, k0), dp, hop=hop)
    out = decode(evolve(encode(psi0), op, 3 * steps))
    ref = dirac_evolve(k0_sublattice(psi0, 2 * hop), t_ref, dp)
    stray = float(np.sqrt(np.sum(np.abs(out.data[1:]) ** 2)))
    return float(np.hypot(l2_error(k0_sublattice(out, 2 * hop), ref), stray))


def _with_sigma(spec: PacketSpec, sigma: float, k0=None) -> PacketSpec:
    return PacketSpec(spec.k0 if k0 is None else k0, sigma, spec.branch, spec.seed)


def convergence_sweep(walk: str, T: float, mass: float, eps_list, spec: PacketSpec,
                      extent: float = 8.0, rescale_time: bool = True) -> ConvergenceReport:
    """Walk-vs-Dirac error for each ``eps`` and the fitted convergence order.

    The packet is fixed in physical units: ``spec.sigma`` is read in lattice
    units of the coarsest ``eps``, and the periodic cell has side ``extent``
    for every ``eps``.  Regular and honeycomb walks take ``T/eps`` steps; the
    triangular walk takes ``T/eps`` cycles of three steps (see module notes
    for ``rescale_time``).  Errors are measured on decoded spinors.
    """
    eps = np.array(sorted(set(float(e) for e in eps_list), reverse=True))
    if len(eps) != len(eps_list):
        raise ValueError("eps_list must not contain duplicates")
    if walk not in WALK_KINDS:
        raise ValueError(f"unknown walk kind {walk!r}")
    sigma_phys = spec.sigma * eps[0]
    errors = np.array([walk_vs_dirac(walk, T, mass, e, spec, extent, sigma_phys, rescale_time)
                       for e in eps])
    if np.all(errors > 0):
        order, resid = fit_order(eps, errors)
    else:
        order, resid = float("nan"), float("nan")
    meta = {"walk": walk, "T": T, "mass": mass, "extent": extent,
            "k0": list(map(float, spec.k0)), "sigma": spec.sigma, "branch": spec.branch,
            "rescale_time": rescale_time}
    return ConvergenceReport(eps, errors, order, resid, meta)


# ---------------------------------------------------------------------------
# momentum space


def _shift_symbol(phase: np.ndarray) -> np.ndarray:
    """``diag(exp(-i phase), exp(+i phase))`` batched over ``phase``."""
    out = np.zeros(phase.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = np.exp(-1j * phase)
    out[..., 1, 1] = np.exp(1j * phase)
    return out


def step_symbol(walk: str, params: WalkParams, k) -> np.ndarray:
    """2x2 one-step matrix acting on the plane wave ``exp(i k.r)``.

    For the triangular walk this is the side-0 block of three steps, with
    ``k`` in rescaled units (midpoint hop ``eps``).
    """
    k = np.atleast_2d(np.asarray(k, dtype=float))
    e = params.eps
    if walk == "regular":
        op = StepOperator.build("regular", params)
        c, h, h1 = op.coins["C"], op.coins["H"], op.coins["H1"]
        return c @ h @ _shift_symbol(e * k[:, 0]) @ h @ h1 @ _shift_symbol(e * k[:, 1]) @ spin.dagger(h1)
    w = spin.coin_W(params)
    if walk == "honeycomb":
        out = np.broadcast_to(spin.IDENTITY, k.shape[:-1] + (2, 2))
        for i in range(3):
            out = w @ _shift_symbol(e * k @ direction(i)) @ out
        return out
    if walk == "triangular":
        # cell phases for lattice vectors 2 eps u_0, 2 eps u_1
        theta = 2 * e * k @ BASES["triangular-bravais"].T
        out = np.broadcast_to(spin.IDENTITY, k.shape[:-1] + (2, 2))
        for side in (1, 2, 0):
            d = np.asarray(NEIGHBOR_OFFSET[side])
            block = np.zeros(k.shape[:-1] + (2, 2), dtype=complex)
            block[..., 0, 0] = 1.0
            block[..., 1, 1] = np.exp(1j * theta @ d)
            out = w @ block @ out
        return out
    raise ValueError(f"unknown walk kind {walk!r}")


@dataclass
class DispersionTable:
    """Eigenphases of the one-step (one-cycle) operator on a k grid.

    ``theta_plus`` belongs to the positive-energy branch, ``exp(-i eps omega)``,
    so ``theta_plus ~ -eps omega`` and ``theta_minus ~ +eps omega``.
    """

    k: np.ndarray
    theta_plus: np.ndarray
    theta_minus: np.ndarray
    eigenvalue_moduli: np.ndarray
    params: WalkParams
    walk: str

    def continuum(self) -> tuple[np.ndarray, np.ndarray]:
        return dispersion(self.k, DiracParams(self.params.mass, 1.0))


def walk_dispersion(walk: str, params: WalkParams, k_grid) -> DispersionTable:
    k = np.atleast_2d(np.asarray(k_grid, dtype=float))
    ev = np.linalg.eigvals(step_symbol(walk, params, k))
    phases = np.sort(np.angle(ev), axis=-1)
    return DispersionTable(k, phases[:, 0], phases[:, 1], np.abs(ev), params, walk)


__all__ = [
    "PacketSpec", "make_packet", "packet_spinor", "spectral_weight_outside", "l2_error",
    "moments", "ConvergenceReport", "fit_order", "walk_vs_dirac", "convergence_sweep",
    "step_symbol", "DispersionTable", "walk_dispersion",
]
