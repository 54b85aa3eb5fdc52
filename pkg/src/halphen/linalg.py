"""Exact Gaussian elimination over Q(sqrt d): rank, kernel, and solving.

Matrices are lists of rows of QF elements.  Sizes here stay small (tens of
rows), so plain fraction arithmetic is fine.
"""

from __future__ import annotations

from .qfield import QF, QuadField


def rref(rows: list[list[QF]], field: QuadField):
    """Reduced row echelon form; returns (rref_rows, pivot_columns)."""
    m = [row[:] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [v * inv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def kernel_basis(rows: list[list[QF]], ncols: int, field: QuadField) -> list[list[QF]]:
    """Basis of the right kernel of the matrix (list of column vectors)."""
    if not rows:
        basis = []
        for j in range(ncols):
            v = [field.zero] * ncols
            v[j] = field.one
            basis.append(v)
        return basis
    m, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(v)
    return basis


def rank(rows: list[list[QF]], field: QuadField) -> int:
    if not rows:
        return 0
    _, pivots = rref(rows, field)
    return len(pivots)


def solve(rows: list[list[QF]], rhs: list[QF], field: QuadField):
    """One solution of A x = b, or None if inconsistent."""
    if not rows:
        return [] if not rhs else None
    aug = [row + [b] for row, b in zip(rows, rhs)]
    m, pivots = rref(aug, field)
    ncols = len(rows[0])
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = m[r][ncols]
    return x
