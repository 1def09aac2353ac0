"""Rewriting invariants as polynomials in the Q's and B's.

Symplectic invariants in the x,y coordinates are solved for as linear
combinations of products of B^(ij) of the right multidegree. Odd-dimensional
orthogonal invariants with even z-exponents are peeled from the top z-degree
down: the coefficient of z^(2a) is symplectic, and subtracting Q^a times its
B-expression lowers the z-degree.
"""

from __future__ import annotations

from typing import Optional

from ..algebra.field import GF2
from ..algebra.poly import IntegerRing, Polynomial, homogeneous_components, reduce_mod2
from ..algebra.variables import Z, gram_b, gram_q, is_coord, kind_of, vector_of
from ..groups import invariance_check
from ..invariants import b_inv, q_inv, substitute_gram
from . import gf2
from .space import DEFAULT_CAP, component_monomials


class OddZError(ValueError):
    """A z-coordinate occurs with an odd exponent."""


class NotInvariant(ValueError):
    pass


def _mod2(p: Polynomial) -> Polynomial:
    return reduce_mod2(p) if isinstance(p.ring, IntegerRing) else p


def multigraphs(alpha) -> list[dict[tuple[int, int], int]]:
    """Loopless multigraphs on vertices 1..m with degree sequence alpha."""
    m = len(alpha)
    pairs = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    out: list[dict] = []
    rem = list(alpha)

    def rec(k: int, chosen: dict) -> None:
        if k == len(pairs):
            if not any(rem):
                out.append(dict(chosen))
            return
        i, j = pairs[k]
        # vertex i sees no further pairs after (i, m)
        last_for_i = j == m
        top = min(rem[i - 1], rem[j - 1])
        lo = rem[i - 1] if last_for_i else 0
        for e in range(lo, top + 1):
            rem[i - 1] -= e
            rem[j - 1] -= e
            if e:
                chosen[(i, j)] = e
            rec(k + 1, chosen)
            chosen.pop((i, j), None)
            rem[i - 1] += e
            rem[j - 1] += e

    if sum(alpha) % 2 == 0:
        rec(0, {})
    return out


def _b_product(graph: dict, n: int, cache: dict) -> Polynomial:
    out = Polynomial.one(GF2)
    for (i, j), e in sorted(graph.items()):
        key = (i, j)
        if key not in cache:
            cache[key] = b_inv(i, j, n, GF2)
        out = out * cache[key] ** e
    return out


def _abstract_b(graph: dict) -> Polynomial:
    return Polynomial.monomial([(gram_b(i, j), e) for (i, j), e in graph.items()], ring=GF2)


def _express_component(p: Polynomial, alpha: tuple, n: int, cap: int) -> Optional[Polynomial]:
    cols = component_monomials(n, alpha, cap)
    index = {m: j for j, m in enumerate(cols)}
    target = 0
    for mono in p.terms:
        j = index.get(mono)
        if j is None:
            return None
        target |= 1 << j
    graphs = multigraphs(alpha)
    solver = gf2.SpanSolver(len(cols))
    cache: dict = {}
    for g in graphs:
        mask = 0
        for mono in _b_product(g, n, cache).terms:
            mask |= 1 << index[mono]
        solver.add(mask)
    combo = solver.solve(target)
    if combo is None:
        return None
    out = Polynomial.zero(GF2)
    for k in combo:
        out = out + _abstract_b(graphs[k])
    return out


def express_in_B(p: Polynomial, nu: int, cap: int = DEFAULT_CAP) -> Optional[Polynomial]:
    """Abstract polynomial P in the B_i_j with P(B) = p, or None when p is not Sp(2nu)-invariant."""
    p = _mod2(p)
    if any(kind_of(v) == Z for v in p.variables() if is_coord(v)):
        raise ValueError("express_in_B takes polynomials in the x and y coordinates only")
    n = 2 * nu
    out = Polynomial.zero(GF2)
    for alpha, part in sorted(homogeneous_components(p).items()):
        if not any(alpha):
            out = out + part
            continue
        got = _express_component(part, alpha, n, cap)
        if got is None:
            return None
        out = out + got
    return out


def z_exponents(mono: tuple) -> dict[int, int]:
    return {vector_of(v): e for v, e in mono if is_coord(v) and kind_of(v) == Z}


def _z_key(zexp: dict[int, int], m: int) -> tuple:
    vec = tuple(zexp.get(i, 0) for i in range(1, m + 1))
    return (sum(vec), vec)


def express_QB(f: Polynomial, n: int, check: bool = True, seed: int = 0,
               cap: int = DEFAULT_CAP) -> Polynomial:
    """Abstract P in Q_i, B_i_j with P(Q, B) = f for an O(n)-invariant f, n odd."""
    if n % 2 == 0:
        raise ValueError("express_QB needs odd n")
    f = _mod2(f)
    for mono in f.terms:
        for i, e in z_exponents(mono).items():
            if e % 2:
                raise OddZError(f"z_{i} occurs with odd exponent {e}")
    if check and f:
        cert = invariance_check(f, f"O{n}", seed=seed)
        if not cert.passed:
            raise NotInvariant(f"input is not O({n})-invariant: {cert.witness}")
    nu = n // 2
    m = max((vector_of(v) for v in f.variables() if is_coord(v)), default=0)
    rest = f
    result = Polynomial.zero(GF2)
    qcache: dict[int, Polynomial] = {}
    while rest:
        key = max(_z_key(z_exponents(mono), m) for mono in rest.terms)
        zvec = key[1]
        coef = {}
        for mono, c in rest.terms.items():
            if _z_key(z_exponents(mono), m) == key:
                stripped = tuple((v, e) for v, e in mono if not (is_coord(v) and kind_of(v) == Z))
                coef[stripped] = c
        p = Polynomial._raw(GF2, coef)
        P = express_in_B(p, nu, cap)
        if P is None:
            raise NotInvariant(f"coefficient of z-exponent {zvec} is not symplectic-invariant")
        qpow = Polynomial.monomial([(gram_q(i), e // 2) for i, e in enumerate(zvec, start=1)], ring=GF2)
        result = result + qpow * P
        concrete = substitute_gram(P, n)
        for i, e in enumerate(zvec, start=1):
            if e:
                if i not in qcache:
                    qcache[i] = q_inv(i, n, GF2)
                concrete = concrete * qcache[i] ** (e // 2)
        rest = rest - concrete
    if substitute_gram(result, n) != f:
        raise ArithmeticError("back-substitution mismatch")
    return result
