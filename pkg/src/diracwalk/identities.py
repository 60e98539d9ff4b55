"""Algebraic identity suite behind ``diracwalk verify``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import spin
from .spin import (
    IDENTITY,
    MASS_COUPLING,
    MATRIX_TOL,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    XI,
    WalkParams,
    coin_U,
    coin_W,
    dagger,
    max_abs_diff,
    step_phase_S,
)

FAULTS = ("tau1-sign",)
SOLVER_TOL = 1e-8


@dataclass(frozen=True)
class Check:
    name: str
    deviation: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.deviation) and self.deviation <= self.tol)


def _taus(fault: str | None):
    taus = [spin.tau(i) for i in range(3)]
    if fault == "tau1-sign":
        taus[1] = -taus[1]
    elif fault is not None:
        raise ValueError(f"unknown fault {fault!r}; known: {FAULTS}")
    return taus


def identity_checks(fault: str | None = None, params: WalkParams = WalkParams(0.1, 1.0),
                    solve: bool = True, n_starts: int = 1000, seed: int = 0) -> list[Check]:
    """Evaluate every identity the walks rely on; ``fault`` injects a known defect."""
    taus = _taus(fault)
    angles = 2 * np.pi * np.arange(3) / 3
    us = [coin_U(i) for i in range(3)]
    s = step_phase_S()
    w = coin_W(params)
    m = spin.mass_matrix(params)
    tol = MATRIX_TOL

    checks = [
        Check("pauli squares to identity",
              max(max_abs_diff(p @ p, IDENTITY) for p in (SIGMA_X, SIGMA_Y, SIGMA_Z)), tol),
        Check("H sz H^dag = sx",
              max_abs_diff(spin.basis_change("x") @ SIGMA_Z @ dagger(spin.basis_change("x")), SIGMA_X), tol),
        Check("H1 sz H1^dag = sy",
              max_abs_diff(spin.basis_change("y") @ SIGMA_Z @ dagger(spin.basis_change("y")), SIGMA_Y), tol),
        Check("tau_i eigenvalues are -1, +1",
              max(max_abs_diff(np.linalg.eigvalsh(t), [-1, 1]) for t in taus), tol),
    ]
    checks += [Check(f"C1: U_{i} tau_{i} U_{i}^dag = sz", max_abs_diff(us[i] @ taus[i] @ dagger(us[i]), SIGMA_Z), tol)
               for i in range(3)]
    checks += [
        Check("C2: sum cos(2pi i/3) tau_i = sx",
              max_abs_diff(sum(np.cos(a) * t for a, t in zip(angles, taus)), SIGMA_X), tol),
        Check("C2: sum sin(2pi i/3) tau_i = sy",
              max_abs_diff(sum(np.sin(a) * t for a, t in zip(angles, taus)), SIGMA_Y), tol),
        Check("sum tau_i = 3 xi sz = sqrt5 sz", max_abs_diff(sum(taus), 3 * XI * SIGMA_Z), tol),
        Check("mass coupling: sum tau_i / sqrt5 = sz", max_abs_diff(MASS_COUPLING * sum(taus), SIGMA_Z), tol),
        Check("S^3 = 1", max_abs_diff(s @ s @ s, IDENTITY), tol),
        Check("U_{i+1} U_i^dag independent of i",
              max(max_abs_diff(us[(i + 1) % 3] @ dagger(us[i]), us[0] @ s @ dagger(us[0])) for i in range(3)), tol),
        Check("W unitary", spin.unitarity_defect(w), tol),
        Check("W^3 = 1 at m = 0",
              max_abs_diff(np.linalg.matrix_power(coin_W(WalkParams(params.eps, 0.0)), 3), IDENTITY), tol),
        Check("U_i^dag M U_i = exp(-i eps m tau_i / sqrt5)",
              max(max_abs_diff(dagger(us[i]) @ m @ us[i],
                               spin.expm_hermitian(MASS_COUPLING * params.mass * taus[i], params.eps))
                  for i in range(3)), tol),
    ]
    if solve:
        checks += tau_solver_checks(n_starts, seed)
    return checks


def tau_solver_checks(n_starts: int = 1000, seed: int = 0, sols=None) -> list[Check]:
    """Solver checks; pass ``sols`` to reuse an earlier solve."""
    if sols is None:
        sols = spin.solve_tau_conditions(n_starts=n_starts, seed=seed)
    expected = [np.array([spin.tau_bloch(i, sign) for i in range(3)]) for sign in (+1, -1)]
    if len(sols) == 2:
        match = max(float(np.max(np.abs(sol - exp))) for sol, exp in zip(sols, expected))
    else:
        match = float("inf")
    return [
        Check("tau solver: exactly 2 distinct solutions", abs(len(sols) - 2), 0),
        Check("tau solver: solutions are xi = +sqrt5/3 and -sqrt5/3", match, SOLVER_TOL),
    ]


def format_table(checks: list[Check]) -> str:
    width = max(len(c.name) for c in checks)
    lines = [f"{'identity':<{width}}  {'deviation':>10}  {'tol':>8}  result"]
    for c in checks:
        lines.append(f"{c.name:<{width}}  {c.deviation:10.3e}  {c.tol:8.1e}  {'PASS' if c.passed else 'FAIL'}")
    return "\n".join(lines)
