"""CSV/JSON serialisation with round-trip exact floats.

Field CSV columns are ``i, j, re_up, im_up, re_down, im_down`` for Bravais
fields and ``i, j, k, re_up, im_up, re_down, im_down`` for triangular
fields, rows ordered by ``i`` then ``j`` then ``k``.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .lattice import BravaisField, TriangularField

FIELD_COLUMNS = ["i", "j", "re_up", "im_up", "re_down", "im_down"]
TRIANGULAR_COLUMNS = ["i", "j", "k", "re_up", "im_up", "re_down", "im_down"]
SUMMARY_COLUMNS = ["step", "time", "norm", "norm_drift", "mean_x", "mean_y", "spread"]
CONVERGENCE_COLUMNS = ["eps", "l2_error"]
DISPERSION_COLUMNS = ["kx", "ky", "theta_plus", "theta_minus",
                      "omega_continuum_plus", "omega_continuum_minus"]


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_rows(path, header, rows) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def write_field_csv(path, field) -> None:
    if isinstance(field, TriangularField):
        n1, n2 = field.shape
        d = field.data

        def rows():
            for i in range(n1):
                for j in range(n2):
                    for k in range(3):
                        up, dn = d[k, 0, i, j], d[k, 1, i, j]
                        yield [i, j, k, fmt(up.real), fmt(up.imag), fmt(dn.real), fmt(dn.imag)]

        _write_rows(path, TRIANGULAR_COLUMNS, rows())
        return
    n1, n2 = field.shape
    d = field.data

    def rows():
        for i in range(n1):
            for j in range(n2):
                up, dn = d[0, i, j], d[1, i, j]
                yield [i, j, fmt(up.real), fmt(up.imag), fmt(dn.real), fmt(dn.imag)]

    _write_rows(path, FIELD_COLUMNS, rows())


def read_field_csv(path, spacing: float, basis: str = "rectangular"):
    """Read a field CSV; a ``k`` column yields a :class:`TriangularField`."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [r for r in reader]
    if header == TRIANGULAR_COLUMNS:
        idx = np.array([[int(v) for v in r[:3]] for r in rows])
        vals = np.array([[float(v) for v in r[3:]] for r in rows])
        n1, n2 = idx[:, 0].max() + 1, idx[:, 1].max() + 1
        data = np.zeros((3, 2, n1, n2), dtype=complex)
        data[idx[:, 2], 0, idx[:, 0], idx[:, 1]] = vals[:, 0] + 1j * vals[:, 1]
        data[idx[:, 2], 1, idx[:, 0], idx[:, 1]] = vals[:, 2] + 1j * vals[:, 3]
        return TriangularField(data, spacing)
    if header != FIELD_COLUMNS:
        raise ValueError(f"unrecognised field header {header}")
    idx = np.array([[int(v) for v in r[:2]] for r in rows])
    vals = np.array([[float(v) for v in r[2:]] for r in rows])
    n1, n2 = idx[:, 0].max() + 1, idx[:, 1].max() + 1
    data = np.zeros((2, n1, n2), dtype=complex)
    data[0, idx[:, 0], idx[:, 1]] = vals[:, 0] + 1j * vals[:, 1]
    data[1, idx[:, 0], idx[:, 1]] = vals[:, 2] + 1j * vals[:, 3]
    return BravaisField(data, spacing, basis)


def write_summary_csv(path, rows) -> None:
    """``rows`` are dicts keyed by :data:`SUMMARY_COLUMNS`."""
    _write_rows(path, SUMMARY_COLUMNS,
                ([r["step"]] + [fmt(r[c]) for c in SUMMARY_COLUMNS[1:]] for r in rows))


def write_convergence(report, csv_path, json_path) -> None:
    _write_rows(csv_path, CONVERGENCE_COLUMNS, ([fmt(e), fmt(err)] for e, err in report.rows()))
    summary = {"fitted_order": report.fitted_order, "fit_residual": report.fit_residual, **report.meta}
    Path(json_path).write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")


def write_dispersion_csv(path, table) -> None:
    w_plus, w_minus = table.continuum()
    rows = (
        [fmt(k[0]), fmt(k[1]), fmt(tp), fmt(tm), fmt(wp), fmt(wm)]
        for k, tp, tm, wp, wm in zip(table.k, table.theta_plus, table.theta_minus, w_plus, w_minus)
    )
    _write_rows(path, DISPERSION_COLUMNS, rows)


def read_csv(path) -> tuple[list[str], list[list[str]]]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return header, [r for r in reader]
