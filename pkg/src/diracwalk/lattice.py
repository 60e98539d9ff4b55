"""Periodic spinor fields and the geometric moves of the walks.

Two field types are used:

* :class:`BravaisField` holds one spinor per site of a periodic Bravais
  lattice.  The ``rectangular`` basis is the square grid of the regular walk;
  the ``triangular-bravais`` basis has ``a1 = u_0`` and ``a2 = u_1`` so that
  a displacement by any of ``u_0, u_1, u_2`` is a single index increment.
  This is the lattice of hexagon centres carried by the honeycomb walk.
* :class:`TriangularField` holds one spinor per edge of a periodic tiling by
  equilateral triangles.  Edges are keyed by ``(k, a, b)``: side ``k`` of the
  white triangle in cell ``(a, b)``.  The ``up`` component belongs to the
  white triangle, ``down`` to the gray triangle on the other side.

Triangle chart
--------------
With ``h`` the distance between neighbouring edge midpoints, white cell
``(a, b)`` has its side-``k`` midpoint at ``h * ((2a + o_k[0]) u_0 + (2b +
o_k[1]) u_1)`` where ``o_0 = (0, 0)``, ``o_1 = (1, 0)``, ``o_2 = (1, 1)``.
Going round a white triangle anticlockwise from side ``k-1`` to ``k`` moves
by ``+h u_{k-1}``; the gray triangle is the point reflection and moves by
``-h u_{k-1}``.  Gray triangle ``e(v, k)`` shares side ``k`` with white
``v``; its side ``k-1`` is shared with white ``v + NEIGHBOR_OFFSET[k]``.
The walk uses ``h = (sqrt3/2) eps``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

BASES = {
    "rectangular": np.array([[1.0, 0.0], [0.0, 1.0]]),
    "triangular-bravais": np.array([[1.0, 0.0], [-0.5, np.sqrt(3) / 2]]),
}

# index displacement of +u_i on the triangular-bravais lattice
DIRECTION_OFFSETS = {0: (1, 0), 1: (0, 1), 2: (-1, -1)}

# sub-lattice offset of side k inside a white cell (in units of the hop h)
EDGE_OFFSETS = {0: (0, 0), 1: (1, 0), 2: (1, 1)}

# NEIGHBOR_OFFSET[k] = EDGE_OFFSETS[k] - EDGE_OFFSETS[k-1]
NEIGHBOR_OFFSET = {0: (-1, -1), 1: (1, 0), 2: (0, 1)}

MIN_EXTENT = 4


def direction(i: int) -> np.ndarray:
    """Unit vector ``u_i = (cos 2pi i/3, sin 2pi i/3)``."""
    if i not in (0, 1, 2):
        raise ValueError(f"direction must be 0, 1 or 2, got {i!r}")
    return np.array([np.cos(2 * np.pi * i / 3), np.sin(2 * np.pi * i / 3)])


def _check_extent(n1: int, n2: int) -> None:
    if n1 < MIN_EXTENT or n2 < MIN_EXTENT:
        raise ValueError(f"lattice extents must be >= {MIN_EXTENT}, got {(n1, n2)}")


@dataclass
class BravaisField:
    """Spinor field on a periodic Bravais lattice.

    ``data`` has shape ``(2, n1, n2)``: component (up, down), then the two
    lattice indices.  Site ``(i, j)`` sits at ``spacing * (i a1 + j a2)``.
    """

    data: np.ndarray
    spacing: float
    basis: str = "rectangular"

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=complex)
        if self.data.ndim != 3 or self.data.shape[0] != 2:
            raise ValueError(f"data must have shape (2, n1, n2), got {self.data.shape}")
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        if not self.spacing > 0:
            raise ValueError("spacing must be positive")
        _check_extent(*self.shape)

    @classmethod
    def zeros(cls, n1: int, n2: int, spacing: float, basis: str = "rectangular") -> "BravaisField":
        return cls(np.zeros((2, n1, n2), dtype=complex), spacing, basis)

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[1], self.data.shape[2]

    @property
    def lattice_vectors(self) -> np.ndarray:
        """Rows are the physical lattice vectors ``spacing * a1``, ``spacing * a2``."""
        return self.spacing * BASES[self.basis]

    def positions(self) -> tuple[np.ndarray, np.ndarray]:
        i, j = np.meshgrid(np.arange(self.shape[0]), np.arange(self.shape[1]), indexing="ij")
        a = self.lattice_vectors
        return i * a[0, 0] + j * a[1, 0], i * a[0, 1] + j * a[1, 1]

    def center(self) -> np.ndarray:
        """Geometric centre of the periodic cell."""
        n1, n2 = self.shape
        return (n1 / 2) * self.lattice_vectors[0] + (n2 / 2) * self.lattice_vectors[1]

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.data) ** 2)))

    def density(self) -> np.ndarray:
        return np.sum(np.abs(self.data) ** 2, axis=0)

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.data)))

    def copy(self) -> "BravaisField":
        return BravaisField(self.data.copy(), self.spacing, self.basis)

    def like(self, data: np.ndarray) -> "BravaisField":
        return BravaisField(data, self.spacing, self.basis)


@dataclass
class TriangularField:
    """Edge spinors of a periodic triangle tiling.

    ``data`` has shape ``(3, 2, n1, n2)``: side ``k``, component (up, down),
    white-cell indices ``(a, b)``.  ``spacing`` is the walk's ``eps``.
    """

    data: np.ndarray
    spacing: float

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=complex)
        if self.data.ndim != 4 or self.data.shape[:2] != (3, 2):
            raise ValueError(f"data must have shape (3, 2, n1, n2), got {self.data.shape}")
        if not self.spacing > 0:
            raise ValueError("spacing must be positive")
        _check_extent(*self.shape)

    @classmethod
    def zeros(cls, n1: int, n2: int, spacing: float) -> "TriangularField":
        return cls(np.zeros((3, 2, n1, n2), dtype=complex), spacing)

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[2], self.data.shape[3]

    @property
    def hop(self) -> float:
        """Distance between the midpoints of two sides of one triangle."""
        return np.sqrt(3) / 2 * self.spacing

    def positions(self, k: int, hop: float | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Midpoints of the side-``k`` edges, shape ``(n1, n2)`` each."""
        h = self.hop if hop is None else hop
        a, b = np.meshgrid(np.arange(self.shape[0]), np.arange(self.shape[1]), indexing="ij")
        oa, ob = EDGE_OFFSETS[k]
        u0, u1 = BASES["triangular-bravais"]
        fa, fb = 2 * a + oa, 2 * b + ob
        return h * (fa * u0[0] + fb * u1[0]), h * (fa * u0[1] + fb * u1[1])

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.data) ** 2)))

    def density(self) -> np.ndarray:
        """``|psi|^2`` per edge, shape ``(3, n1, n2)``."""
        return np.sum(np.abs(self.data) ** 2, axis=1)

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.data)))

    def copy(self) -> "TriangularField":
        return TriangularField(self.data.copy(), self.spacing)

    def like(self, data: np.ndarray) -> "TriangularField":
        return TriangularField(data, self.spacing)


# ---------------------------------------------------------------------------
# shifts


def shift_rect(field: BravaisField, axis: str, s: int) -> BravaisField:
    """Move every spinor ``s`` sites along ``axis`` (whole spinor, periodic)."""
    if field.basis != "rectangular":
        raise ValueError("shift_rect needs a rectangular field")
    if axis not in ("x", "y"):
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    return field.like(np.roll(field.data, s, axis=1 if axis == "x" else 2))


def _index_offset(basis: str, dir) -> tuple[int, int]:
    if basis == "rectangular":
        offsets = {"x": (1, 0), "y": (0, 1)}
    else:
        offsets = DIRECTION_OFFSETS
    try:
        return offsets[dir]
    except KeyError:
        raise ValueError(f"direction {dir!r} is not valid for the {basis} basis") from None


def partial_shift_arrays(up: np.ndarray, down: np.ndarray, offset: tuple[int, int]):
    """Up moves by ``+offset`` sites, down by ``-offset``; returns new arrays."""
    di, dj = offset
    return np.roll(up, (di, dj), axis=(-2, -1)), np.roll(down, (-di, -dj), axis=(-2, -1))


def partial_shift(field: BravaisField, dir) -> BravaisField:
    """Spin-dependent shift ``T_dir``.

    ``dir`` is ``'x'``/``'y'`` on the rectangular basis and ``0``/``1``/``2``
    (direction ``u_dir``) on the triangular-bravais basis.  The up component
    moves by ``+spacing * u_dir``, the down component by ``-spacing * u_dir``.
    """
    offset = _index_offset(field.basis, dir)
    up, down = partial_shift_arrays(field.data[0], field.data[1], offset)
    return field.like(np.stack([up, down]))


# ---------------------------------------------------------------------------
# triangles


def neighbor(v: tuple[int, int], k: int, shape: tuple[int, int]) -> tuple[int, int]:
    """White cell owning the edge that feeds the down component of edge ``(v, k)``.

    The gray triangle across side ``k`` of ``v`` rotates its side ``k-1``
    into position ``k``; that side ``k-1`` is stored at the returned cell.
    """
    if k not in (0, 1, 2):
        raise ValueError(f"side must be 0, 1 or 2, got {k!r}")
    da, db = NEIGHBOR_OFFSET[k]
    return (v[0] + da) % shape[0], (v[1] + db) % shape[1]


def rotate_arrays(data: np.ndarray) -> np.ndarray:
    """Anticlockwise rotation of every triangle, on raw ``(3, 2, n1, n2)`` data."""
    out = np.empty_like(data)
    for k in range(3):
        src = data[(k - 1) % 3]
        da, db = NEIGHBOR_OFFSET[k]
        out[k, 0] = src[0]
        out[k, 1] = np.roll(src[1], (-da, -db), axis=(0, 1))
    return out


def rotate_triangles(field: TriangularField) -> TriangularField:
    """The rotation ``R``: side ``k-1`` hops to side ``k`` in every triangle."""
    return field.like(rotate_arrays(field.data))


def embed_in_honeycomb(field: TriangularField) -> BravaisField:
    """Place every edge spinor at its midpoint on the hexagon-centre lattice.

    The result has shape ``(2 n1, 2 n2)`` and spacing equal to the hop
    ``(sqrt3/2) eps``; the sites that are triangle vertices stay zero.
    """
    n1, n2 = field.shape
    out = np.zeros((2, 2 * n1, 2 * n2), dtype=complex)
    for k, (oa, ob) in EDGE_OFFSETS.items():
        out[:, oa::2, ob::2] = field.data[k]
    return BravaisField(out, field.hop, "triangular-bravais")


def extract_from_honeycomb(field: BravaisField, spacing: float) -> TriangularField:
    """Inverse of :func:`embed_in_honeycomb` (vertex sites are dropped)."""
    n1, n2 = field.shape
    if n1 % 2 or n2 % 2:
        raise ValueError("honeycomb extents must be even")
    data = np.stack([field.data[:, oa::2, ob::2] for oa, ob in EDGE_OFFSETS.values()])
    return TriangularField(data, spacing)


def k0_sublattice(field: TriangularField, spacing: float | None = None) -> BravaisField:
    """The side-0 edges as a triangular-bravais field (cell spacing ``2 h``)."""
    spacing = 2 * field.hop if spacing is None else spacing
    return BravaisField(field.data[0].copy(), spacing, "triangular-bravais")


def from_k0_sublattice(field: BravaisField, spacing: float) -> TriangularField:
    """Triangular field with ``field`` on the side-0 edges and zeros elsewhere."""
    if field.basis != "triangular-bravais":
        raise ValueError("side-0 data must live on a triangular-bravais field")
    out = TriangularField.zeros(*field.shape, spacing)
    out.data[0] = field.data
    return out
