"""One time step of the regular, honeycomb and triangular Dirac walks."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from . import spin
from .lattice import (
    DIRECTION_OFFSETS,
    BravaisField,
    TriangularField,
    embed_in_honeycomb,
    partial_shift_arrays,
    rotate_arrays,
)
from .spin import WalkParams

WALK_KINDS = ("regular", "honeycomb", "triangular")


@dataclass(frozen=True)
class StepOperator:
    """Precomputed, site-independent coins of one walk."""

    kind: str
    params: WalkParams
    coins: dict = dc_field(default_factory=dict, compare=False)

    @classmethod
    def build(cls, kind: str, params: WalkParams) -> "StepOperator":
        if kind not in WALK_KINDS:
            raise ValueError(f"walk kind must be one of {WALK_KINDS}, got {kind!r}")
        if kind == "regular":
            coins = {
                "C": spin.expm_hermitian(params.mass * spin.SIGMA_Z, params.eps),
                "H": spin.basis_change("x"),
                "H1": spin.basis_change("y"),
            }
        else:
            coins = {"W": spin.coin_W(params)}
            coins.update({f"U{i}": spin.coin_U(i) for i in range(3)})
        for name, c in coins.items():
            if not spin.is_unitary(c):
                raise ArithmeticError(f"coin {name} is not unitary")
        return cls(kind, params, coins)


def apply_coin(c: np.ndarray, up: np.ndarray, down: np.ndarray):
    return c[0, 0] * up + c[0, 1] * down, c[1, 0] * up + c[1, 1] * down


def _coin_field(c: np.ndarray, data: np.ndarray) -> np.ndarray:
    """Apply ``c`` to spinors stored along axis ``-3`` of ``data``."""
    up, down = apply_coin(c, data[..., 0, :, :], data[..., 1, :, :])
    return np.stack([up, down], axis=-3)


def _check(op: StepOperator, kind: str) -> None:
    if op.kind != kind:
        raise ValueError(f"expected a {kind} step operator, got {op.kind}")


# ---------------------------------------------------------------------------
# raw array kernels, (up, down) -> (up, down)


def _regular_kernel(op: StepOperator, up, down):
    c, h, h1 = op.coins["C"], op.coins["H"], op.coins["H1"]
    up, down = apply_coin(spin.dagger(h1), up, down)
    up, down = partial_shift_arrays(up, down, (0, 1))
    up, down = apply_coin(h @ h1, up, down)
    up, down = partial_shift_arrays(up, down, (1, 0))
    return apply_coin(c @ h, up, down)


def _honeycomb_kernel(op: StepOperator, up, down):
    w = op.coins["W"]
    for i in range(3):
        up, down = partial_shift_arrays(up, down, DIRECTION_OFFSETS[i])
        up, down = apply_coin(w, up, down)
    return up, down


def regular_step(field: BravaisField, op: StepOperator) -> BravaisField:
    """``C H T_x H H1 T_y H1^dagger`` applied to a rectangular field."""
    _check(op, "regular")
    if field.basis != "rectangular":
        raise ValueError("the regular walk needs a rectangular field")
    return field.like(np.stack(_regular_kernel(op, field.data[0], field.data[1])))


def honeycomb_step(field: BravaisField, op: StepOperator) -> BravaisField:
    """``W T_2 W T_1 W T_0`` on encoded spinors (``T_0`` acts first)."""
    _check(op, "honeycomb")
    if field.basis != "triangular-bravais":
        raise ValueError("the honeycomb walk needs a triangular-bravais field")
    return field.like(np.stack(_honeycomb_kernel(op, field.data[0], field.data[1])))


def triangular_step(field: TriangularField, op: StepOperator,
                    coin: np.ndarray | None = None) -> TriangularField:
    """Rotate every triangle, then apply ``W`` to every edge spinor.

    ``coin`` overrides ``W`` (structural checks only).
    """
    _check(op, "triangular")
    c = op.coins["W"] if coin is None else coin
    return field.like(_coin_field(c, rotate_arrays(field.data)))


def step(field, op: StepOperator):
    if op.kind == "regular":
        return regular_step(field, op)
    if op.kind == "honeycomb":
        return honeycomb_step(field, op)
    return triangular_step(field, op)


def evolve(field, op: StepOperator, steps: int, callback: Callable | None = None):
    """Apply ``steps`` walk steps.

    ``callback(n, field)`` is called after every step when given; otherwise
    the loop stays on raw arrays and builds a single field at the end.
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    if callback is not None:
        for n in range(1, steps + 1):
            field = step(field, op)
            callback(n, field)
        return field
    if op.kind == "triangular":
        _check(op, "triangular")
        data, w = field.data, op.coins["W"]
        for _ in range(steps):
            data = _coin_field(w, rotate_arrays(data))
        return field.like(data)
    # validate kind/basis once through the public step
    if steps == 0:
        return field.copy()
    field = step(field, op)
    kernel = _regular_kernel if op.kind == "regular" else _honeycomb_kernel
    up, down = field.data[0], field.data[1]
    for _ in range(steps - 1):
        up, down = kernel(op, up, down)
    return field.like(np.stack([up, down]))


# ---------------------------------------------------------------------------
# encoding psi~ = U psi


def encode(field, decode: bool = False):
    """Local change of spinor basis to the walk's working frame.

    A :class:`BravaisField` (honeycomb) is multiplied by ``U_0`` everywhere;
    a :class:`TriangularField` by ``U_k`` on side ``k``.  ``decode=True``
    applies the adjoint.
    """
    def frame(i):
        u = spin.coin_U(i)
        return spin.dagger(u) if decode else u

    if isinstance(field, TriangularField):
        data = np.stack([_coin_field(frame(k), field.data[k]) for k in range(3)])
        return field.like(data)
    return field.like(_coin_field(frame(0), field.data))


def decode(field):
    return encode(field, decode=True)


# ---------------------------------------------------------------------------
# the triangular walk covertly runs the honeycomb walk


def max_deviation(a, b) -> float:
    return float(np.max(np.abs(a.data - b.data)))


def triangular_honeycomb_equivalence(shape: tuple[int, int], params: WalkParams,
                                     trials: int = 1, seed: int = 0,
                                     init: str = "random") -> float:
    """Max deviation between 3 triangular steps and 1 honeycomb step.

    Each trial draws side-0 edge data (``init`` is ``'random'`` or
    ``'delta'``), embeds it on the hexagon-centre lattice with hop
    ``(sqrt3/2) eps``, and compares both evolutions site by site, including
    the sites the triangular field does not cover (which must stay zero).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    tri_op = StepOperator.build("triangular", params)
    hc_op = StepOperator.build("honeycomb", params)
    worst = 0.0
    for _ in range(trials):
        tri = TriangularField.zeros(*shape, params.eps)
        if init == "delta":
            a, b = rng.integers(shape[0]), rng.integers(shape[1])
            tri.data[0, :, a, b] = rng.normal(size=2) + 1j * rng.normal(size=2)
        else:
            tri.data[0] = rng.normal(size=(2,) + shape) + 1j * rng.normal(size=(2,) + shape)
        tri.data /= tri.norm()
        hc = embed_in_honeycomb(tri)
        tri3 = evolve(tri, tri_op, 3)
        hc1 = honeycomb_step(hc, hc_op)
        worst = max(worst, max_deviation(embed_in_honeycomb(tri3), hc1))
    return worst


__all__ = [
    "WALK_KINDS", "StepOperator", "apply_coin", "regular_step", "honeycomb_step",
    "triangular_step", "step", "evolve", "encode", "decode", "max_deviation",
    "triangular_honeycomb_equivalence",
]
