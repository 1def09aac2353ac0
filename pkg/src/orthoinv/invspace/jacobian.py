"""Rank of the differential of the Gram coordinate map."""

from __future__ import annotations

from collections.abc import Mapping, Sequence

from ..algebra.field import GF2, FieldDesc
from ..algebra.poly import IntegerRing, Polynomial, reduce_mod2
from ..algebra.variables import coordinate_codes
from ..invariants import b_inv, d_inv, q_inv
from . import dense, gf2


def field_coordinates(n: int, m: int) -> list[tuple[str, Polynomial]]:
    """Generators of the invariant field: Q^(i) for i <= min(m, 2nu), B^(ij) for
    i < j, i <= 2nu, and for odd n the determinants D^(1..2nu, l), l > 2nu."""
    nu = n // 2
    top = min(m, 2 * nu)
    out = [(f"Q_{i}", q_inv(i, n, GF2)) for i in range(1, top + 1)]
    out += [(f"B_{i}_{j}", b_inv(i, j, n, GF2))
            for i in range(1, top + 1) for j in range(i + 1, m + 1)]
    if n % 2:
        base = list(range(1, 2 * nu + 1))
        out += [(f"D_{'_'.join(map(str, base + [l]))}", d_inv(base + [l], n, GF2))
                for l in range(2 * nu + 1, m + 1)]
    return out


def standard_point(n: int, m: int) -> dict[int, int]:
    """First min(m, 2nu) standard basis vectors, then zero vectors."""
    nu = n // 2
    point = {}
    for i in range(1, m + 1):
        codes = coordinate_codes(n, i)
        for pos, code in enumerate(codes):
            point[code] = int(i <= 2 * nu and pos == i - 1)
    return point


def jacobian_matrix(coords: Sequence[Polynomial], point: Mapping[int, int],
                    field: FieldDesc = GF2) -> list[list[int]]:
    variables = sorted(point)
    rows = []
    for p in coords:
        if isinstance(p.ring, IntegerRing):
            p = reduce_mod2(p)
        if p.ring != field:
            p = p.change_ring(field)
        rows.append([p.diff(v).evaluate(point) if v in p.variables() else 0 for v in variables])
    return rows


def jacobian_rank(coords: Sequence[Polynomial], point: Mapping[int, int],
                  field: FieldDesc = GF2) -> int:
    """Rank over the field of the formal partial derivative matrix at the point."""
    M = jacobian_matrix(coords, point, field)
    if field == GF2:
        return gf2.rank(sum(1 << j for j, a in enumerate(row) if a) for row in M)
    return dense.rank(M, field)
