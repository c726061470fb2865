"""Exact Gaussian elimination over any exact field (Fraction, Scalar, CScalar)."""

from __future__ import annotations


def rref(rows, ncols: int):
    """Row-reduce a list of rows in place-safe fashion.

    Returns (reduced_rows, pivot_columns). Entries must support +, -, *, /
    and truthiness for zero testing.
    """
    m = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        prow = m[r]
        inv = 1 / prow[c]
        prow = [v * inv if v else v for v in prow]
        m[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                row = m[i]
                for j in nz:
                    row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols: int, zero, one):
    """Basis of {v : rows . v = 0}, one vector per free column."""
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [zero] * ncols
        v[free] = one
        for row, pc in zip(red, pivots):
            if row[free]:
                v[pc] = -row[free]
        basis.append(v)
    return basis
