"""Exact sparse linear algebra over Q.

Rows are dicts ``{column: Fraction}``.  Pivoting is deterministic: columns are
eliminated in increasing index order, rows are taken in input order.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence

Row = Dict[int, Fraction]


def _axpy(target: Row, factor: Fraction, source: Row) -> None:
    for col, val in source.items():
        new = target.get(col, 0) + factor * val
        if new:
            target[col] = new
        else:
            target.pop(col, None)


def echelon(rows: Sequence[Row]) -> List[Row]:
    """Reduced row echelon form; each returned row has pivot coefficient 1."""
    pivots: Dict[int, Row] = {}
    for r in rows:
        row = dict(r)
        # pivot rows are kept mutually reduced, so one pass suffices
        for c in [c for c in row if c in pivots]:
            _axpy(row, -row[c], pivots[c])
        if not row:
            continue
        p = min(row)
        inv = 1 / Fraction(row[p])
        row = {c: v * inv for c, v in row.items()}
        for other in pivots.values():
            if p in other:
                _axpy(other, -other[p], row)
        pivots[p] = row
    return [pivots[c] for c in sorted(pivots)]


def rank(rows: Sequence[Row]) -> int:
    return len(echelon(rows))


def solve(rows: Sequence[Row], rhs: Sequence[Fraction], ncols: int) -> Optional[List[Fraction]]:
    """Return one solution of ``rows * x = rhs`` (free variables set to 0), or None."""
    aug = []
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[ncols] = Fraction(b)
        aug.append(row)
    ech = echelon(aug)
    x = [Fraction(0)] * ncols
    for row in ech:
        p = min(row)
        if p == ncols:
            return None
        x[p] = row.get(ncols, Fraction(0))
    return x


def nullspace(rows: Sequence[Row], ncols: int) -> List[List[Fraction]]:
    """Basis of the right kernel, one vector per free column."""
    ech = echelon(rows)
    piv = {min(r): r for r in ech}
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for p, row in piv.items():
            v[p] = -row.get(f, Fraction(0))
        basis.append(v)
    return basis
