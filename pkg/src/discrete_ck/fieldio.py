"""
Plain-text CSV serialisation of lattice fields.

One row per (site, blade): ``m1, ..., mn, blade, re, im``.  ``blade`` is
the decimal generator bitmask; numbers are written with 17 significant
digits so a round trip through text is lossless for float64.
"""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .lattice import CliffordField, LatticeGrid


def _fmt(x: float) -> str:
    return "%.17g" % x


def field_rows(field: CliffordField, blades=None):
    grid = field.grid
    if blades is None:
        blades = field.active_blades()
        if len(blades) == 0:
            blades = [0]
    for site in np.ndindex(*grid.shape):
        vals = field.values[site]
        for b in blades:
            v = vals[b]
            yield [str(m) for m in site] + [str(int(b)), _fmt(v.real), _fmt(v.imag)]


def header(n: int) -> list[str]:
    return [f"m{j}" for j in range(1, n + 1)] + ["blade", "re", "im"]


def write_field_csv(path, field: CliffordField, blades=None) -> Path:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header(field.grid.n))
        writer.writerows(field_rows(field, blades))
    return path


def read_field_csv(path, grid: LatticeGrid) -> CliffordField:
    """Inverse of :func:`write_field_csv`; absent (site, blade) pairs read as zero."""
    values = np.zeros(grid.field_shape, dtype=complex)
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        head = next(reader)
        if head != header(grid.n):
            raise ValueError(f"unexpected CSV header {head!r} for n = {grid.n}")
        for row in reader:
            if not row:
                continue
            site = tuple(int(m) for m in row[:grid.n])
            if any(not 0 <= m < grid.N for m in site):
                raise ValueError(f"site {site} outside the {grid.N}-point lattice")
            blade = int(row[grid.n])
            values[site + (blade,)] = complex(float(row[-2]), float(row[-1]))
    return CliffordField(grid, values)
