"""Gaussian elimination over GF(2^k) on lists of field elements."""

from __future__ import annotations

import numpy as np

from ..algebra.field import FieldDesc


def rref(rows: list[list[int]], f: FieldDesc) -> list[list[int]]:
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    out: list[list[int]] = []
    col = 0
    r = 0
    while r < len(rows) and col < ncols:
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = f.inv(rows[r][col])
        rows[r] = [f.mul(a, inv) for a in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                c = rows[i][col]
                rows[i] = [a ^ f.mul(c, b) for a, b in zip(rows[i], pr)]
        r += 1
        col += 1
    out = [row for row in rows[:r] if any(row)]
    return out


def rank(rows: list[list[int]], f: FieldDesc) -> int:
    return len(rref(rows, f))


def kernel(rows: list[list[int]], ncols: int, f: FieldDesc) -> list[list[int]]:
    R = rref(rows, f)
    pivcols = []
    for row in R:
        pivcols.append(next(j for j, a in enumerate(row) if a))
    basis = []
    for free in range(ncols):
        if free in pivcols:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, p in zip(R, pivcols):
            v[p] = row[free]  # characteristic 2: -a = a
        basis.append(v)
    return rref(basis, f)


def kernel_np(A: np.ndarray, f: FieldDesc) -> list[np.ndarray]:
    """Kernel of a numpy matrix over GF(2^k), returned in reduced form."""
    A = np.array(A, dtype=np.int64)
    nrows, ncols = A.shape
    pivcols: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, col])[0]
        if not len(nz):
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = f.mul_arr(np.full(ncols, f.inv(int(A[r, col]))), A[r])
        others = np.nonzero(A[:, col])[0]
        others = others[others != r]
        if len(others):
            c = A[others, col]
            A[others] ^= f.mul_arr(c[:, None] * np.ones((1, ncols), dtype=np.int64),
                                   np.broadcast_to(A[r], (len(others), ncols)))
        pivcols.append(col)
        r += 1
    basis = []
    piv_set = set(pivcols)
    for free in range(ncols):
        if free in piv_set:
            continue
        v = np.zeros(ncols, dtype=np.int64)
        v[free] = 1
        for row, p in enumerate(pivcols):
            v[p] = A[row, free]
        basis.append(v)
    return basis
