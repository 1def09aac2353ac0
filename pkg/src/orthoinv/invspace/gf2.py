"""Bit-packed linear algebra over GF(2).

A vector is a Python int whose bit j is the coordinate at column j; xor is
the word-parallel row operation. Pivots are the lowest set bits, so the
reduced row-echelon form is unique for a given column order.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Optional


def low_bit(v: int) -> int:
    return (v & -v).bit_length() - 1


def iter_bits(v: int):
    while v:
        b = v & -v
        yield b.bit_length() - 1
        v ^= b


class Echelon:
    """Incremental echelon basis keyed by pivot (lowest set bit)."""

    def __init__(self):
        self.rows: dict[int, int] = {}  # pivot bit (as int mask) -> row

    def reduce(self, v: int) -> int:
        """Clear the low end of v against the basis until its lowest bit is free."""
        rows = self.rows
        while v:
            b = v & -v
            r = rows.get(b)
            if r is None:
                return v
            v ^= r
        return 0

    def reduce_full(self, v: int) -> int:
        """Remove every pivot bit from v."""
        rows = self.rows
        out = 0
        while v:
            b = v & -v
            r = rows.get(b)
            if r is None:
                out |= b
                v ^= b
            else:
                v ^= r
        return out

    def add(self, v: int) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        self.rows[v & -v] = v
        return True

    def __len__(self) -> int:
        return len(self.rows)

    def rref(self) -> list[int]:
        """Fully reduced rows sorted by pivot."""
        done: dict[int, int] = {}
        for b in sorted(self.rows, reverse=True):
            r = self.rows[b]
            rest = r ^ b
            acc = b
            while rest:
                c = rest & -rest
                d = done.get(c)
                if d is not None:
                    rest ^= d
                else:
                    acc |= c
                    rest ^= c
            done[b] = acc
        return [done[b] for b in sorted(done)]


def rref(rows: Iterable[int]) -> list[int]:
    e = Echelon()
    for r in rows:
        e.add(r)
    return e.rref()


def rank(rows: Iterable[int]) -> int:
    e = Echelon()
    for r in rows:
        e.add(r)
    return len(e)


def kernel(rows: Iterable[int], ncols: int) -> list[int]:
    """Basis, in RREF, of {x : <row, x> = 0 for every row}."""
    R = rref(rows)
    pivot_of = {low_bit(r): r for r in R}
    pivots = set(pivot_of)
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = 1 << f
        for p, r in pivot_of.items():
            if r >> f & 1:
                v |= 1 << p
        basis.append(v)
    return rref(basis)


def dot(a: int, b: int) -> int:
    return (a & b).bit_count() & 1


@dataclass
class SpanSolver:
    """Membership in the span of a fixed list of generators, with coefficients."""

    ncols: int
    _ech: Echelon = field(default_factory=Echelon)
    _track: dict = field(default_factory=dict)  # pivot mask -> combination bits
    count: int = 0

    def add(self, v: int) -> bool:
        combo = 1 << self.count
        self.count += 1
        rows, track = self._ech.rows, self._track
        while v:
            b = v & -v
            r = rows.get(b)
            if r is None:
                rows[b] = v
                track[b] = combo
                return True
            v ^= r
            combo ^= track[b]
        return False

    def solve(self, target: int) -> Optional[list[int]]:
        """Indices of generators summing to target, or None."""
        rows, track = self._ech.rows, self._track
        combo = 0
        v = target
        while v:
            b = v & -v
            r = rows.get(b)
            if r is None:
                return None
            v ^= r
            combo ^= track[b]
        return list(iter_bits(combo))

    def separating_functional(self, target: int) -> Optional[int]:
        """A column mask phi with <phi, g> = 0 on the span and <phi, target> = 1."""
        R = self._ech.rref()
        pivot_rows = {low_bit(r): r for r in R}
        e = Echelon()
        e.rows = {1 << p: r for p, r in pivot_rows.items()}
        rem = e.reduce_full(target)
        if not rem:
            return None
        b = low_bit(rem)
        phi = 1 << b
        for p, r in pivot_rows.items():
            if r >> b & 1:
                phi |= 1 << p
        return phi


@dataclass
class LinearSystem:
    """Constraint rows over labelled columns."""

    columns: Sequence
    rows: list = field(default_factory=list)

    @property
    def ncols(self) -> int:
        return len(self.columns)

    def add_row(self, r: int) -> None:
        if r >> self.ncols:
            raise ValueError("row wider than the column set")
        if r:
            self.rows.append(r)

    def rank(self) -> int:
        return rank(self.rows)

    def rref(self) -> list[int]:
        return rref(self.rows)

    def kernel(self) -> list[int]:
        return kernel(self.rows, self.ncols)
