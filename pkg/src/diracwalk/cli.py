"""Command-line driver: ``diracwalk {verify,run,converge,dispersion}``.

Settings come from built-in defaults, then an optional ``key = value``
config file (``--config``), then command-line flags, later sources winning.
Exit codes: 0 success, 1 verification failure, 2 configuration error.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import serialize
from .analysis import (
    TRI_C_EFF,
    PacketSpec,
    convergence_sweep,
    make_packet,
    moments,
    walk_dispersion,
)
from .identities import FAULTS, format_table, identity_checks, tau_solver_checks
from .reference import DiracParams
from .spin import WalkParams, solve_tau_conditions
from .walks import WALK_KINDS, StepOperator, decode, encode, evolve

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    walk: str = "honeycomb"
    n1: int = 64
    n2: int = 64
    eps: float = 0.1
    eps_list: tuple = (1 / 16, 1 / 32, 1 / 64, 1 / 128)
    mass: float = 0.0
    steps: int = 50
    time: float = 1.0
    k0: tuple = (1.0, 0.5)
    sigma: float = 8.0
    branch: str = "positive-energy"
    out: str = "out"
    seed: int = 0
    extent: float = 8.0
    rescale: bool = True
    kmax: float = 2.0
    nk: int = 11

    def packet(self) -> PacketSpec:
        return PacketSpec(tuple(self.k0), self.sigma, self.branch, self.seed)

    def validate(self) -> "RunConfig":
        if self.walk not in WALK_KINDS:
            raise ConfigError(f"walk must be one of {WALK_KINDS}")
        if self.n1 < 4 or self.n2 < 4:
            raise ConfigError("n1 and n2 must be >= 4")
        for name in ("eps", "time", "extent", "kmax"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive")
        if not self.eps_list or min(self.eps_list) <= 0:
            raise ConfigError("eps-list must hold positive values")
        if self.mass < 0 or self.steps < 0 or self.nk < 1 or self.seed < 0:
            raise ConfigError("mass, steps and seed must be >= 0 and nk >= 1")
        try:
            self.packet()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        return self


def _floats(text: str) -> tuple:
    try:
        return tuple(float(v) for v in str(text).replace(" ", "").split(",") if v)
    except ValueError:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}") from None


def _bool(text) -> bool:
    if isinstance(text, bool):
        return text
    lowered = str(text).strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"expected a boolean, got {text!r}")


_PARSERS = {
    "walk": str, "branch": str, "out": str,
    "n1": int, "n2": int, "steps": int, "seed": int, "nk": int,
    "eps": float, "mass": float, "time": float, "sigma": float, "extent": float, "kmax": float,
    "eps_list": _floats, "k0": _floats, "rescale": _bool,
}


def read_config_file(path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment, keys may use dashes."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _PARSERS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def build_config(args: argparse.Namespace) -> RunConfig:
    raw = {}
    if getattr(args, "config", None):
        try:
            raw.update(read_config_file(args.config))
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
    raw.update({k: v for k, v in vars(args).items() if k in _PARSERS and v is not None})
    values = {}
    for key, value in raw.items():
        try:
            values[key] = _PARSERS[key](value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad value for {key}: {value!r}") from exc
    if "k0" in values and len(values["k0"]) != 2:
        raise ConfigError("k0 needs two components, e.g. --k0 1.0,0.5")
    return RunConfig(**values).validate()


# ---------------------------------------------------------------------------
# commands


def cmd_verify(fault: str | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    sols = solve_tau_conditions()
    checks = identity_checks(fault=fault, solve=False) + tau_solver_checks(sols=sols)
    print(format_table(checks), file=out)
    for n in sols:
        print(f"tau solution: xi = {n[0, 2]:+.12f}  n_0 = ({n[0, 0]:+.12f}, {n[0, 1]:+.12f}, {n[0, 2]:+.12f})",
              file=out)
    failed = [c.name for c in checks if not c.passed]
    if failed:
        print("FAILED: " + "; ".join(failed), file=out)
        return EXIT_VERIFY
    print("all identities hold", file=out)
    return EXIT_OK


def _initial_state(cfg: RunConfig):
    shape = (cfg.n1, cfg.n2)
    if cfg.walk == "triangular":
        dp = DiracParams(cfg.mass / 3, TRI_C_EFF)
    else:
        dp = DiracParams(cfg.mass, 1.0)
    psi = make_packet(cfg.walk, shape, cfg.eps, cfg.packet(), dp)
    return psi if cfg.walk == "regular" else encode(psi)


def _physical(cfg: RunConfig, state):
    return state if cfg.walk == "regular" else decode(state)


def cmd_run(cfg: RunConfig) -> int:
    """Evolve a packet, write initial/final fields and a per-step summary."""
    out = Path(cfg.out)
    op = StepOperator.build(cfg.walk, WalkParams(cfg.eps, cfg.mass))
    state = _initial_state(cfg)
    norm0 = state.norm()
    rows = []

    def record(n, f):
        mean, spread = moments(f)
        norm = f.norm()
        rows.append({"step": n, "time": n * cfg.eps, "norm": norm, "norm_drift": norm - norm0,
                     "mean_x": mean[0], "mean_y": mean[1], "spread": spread})

    record(0, state)
    serialize.write_field_csv(out / "field_initial.csv", _physical(cfg, state))
    final = evolve(state, op, cfg.steps, callback=record)
    serialize.write_field_csv(out / "field_final.csv", _physical(cfg, final))
    serialize.write_summary_csv(out / "summary.csv", rows)
    return EXIT_OK


def cmd_converge(cfg: RunConfig) -> int:
    report = convergence_sweep(cfg.walk, cfg.time, cfg.mass, cfg.eps_list, cfg.packet(),
                               extent=cfg.extent, rescale_time=cfg.rescale)
    out = Path(cfg.out)
    serialize.write_convergence(report, out / "convergence.csv", out / "convergence.json")
    for e, err in report.rows():
        print(f"eps={e:.6g}  l2_error={err:.6e}")
    print(f"fitted order {report.fitted_order:.4f} (rms residual {report.fit_residual:.2e})")
    return EXIT_OK


def k_grid(kmax: float, nk: int) -> np.ndarray:
    ks = np.linspace(-kmax, kmax, nk)
    kx, ky = np.meshgrid(ks, ks, indexing="ij")
    return np.stack([kx.ravel(), ky.ravel()], axis=-1)


def cmd_dispersion(cfg: RunConfig) -> int:
    table = walk_dispersion(cfg.walk, WalkParams(cfg.eps, cfg.mass), k_grid(cfg.kmax, cfg.nk))
    serialize.write_dispersion_csv(Path(cfg.out) / "dispersion.csv", table)
    return EXIT_OK


# ---------------------------------------------------------------------------


def _common_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--walk", choices=WALK_KINDS)
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--eps-list", dest="eps_list", help="comma-separated, e.g. 0.0625,0.03125")
    p.add_argument("--mass", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--time", type=float, help="physical comparison time T")
    p.add_argument("--k0", help="carrier wavevector kx,ky")
    p.add_argument("--sigma", type=float, help="packet width in lattice units")
    p.add_argument("--branch", choices=("positive-energy", "up-spinor", "random"))
    p.add_argument("--out", help="output directory")
    p.add_argument("--seed", type=int)
    p.add_argument("--extent", type=float, help="physical side of the periodic cell (converge)")
    p.add_argument("--no-rescale", dest="rescale", action="store_const", const=False,
                   help="triangular converge: native units (c_eff = sqrt3/6, mass m/3)")
    p.add_argument("--kmax", type=float)
    p.add_argument("--nk", type=int)
    p.add_argument("--config", help="key = value settings file")
    return p


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diracwalk", description="Dirac quantum walks on square, honeycomb and triangular lattices")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_flags()
    v = sub.add_parser("verify", help="check the spin-algebra identities")
    v.add_argument("--fault", choices=FAULTS, help=argparse.SUPPRESS)
    sub.add_parser("run", parents=[common], help="evolve a wave packet")
    sub.add_parser("converge", parents=[common], help="walk vs Dirac convergence sweep")
    sub.add_parser("dispersion", parents=[common], help="eigenphases on a k grid")
    return parser


COMMANDS = {"run": cmd_run, "converge": cmd_converge, "dispersion": cmd_dispersion}


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args.fault)
    try:
        cfg = build_config(args)
    except ConfigError as exc:
        print(f"diracwalk {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return COMMANDS[args.command](cfg)


__all__ = ["RunConfig", "ConfigError", "build_config", "read_config_file", "cmd_verify",
           "cmd_run", "cmd_converge", "cmd_dispersion", "main", "make_parser", "k_grid"]
