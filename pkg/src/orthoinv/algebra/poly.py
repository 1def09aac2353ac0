"""Sparse multivariate polynomials over GF(2), GF(2^k) or the integers.

A monomial is a tuple of (variable code, exponent) pairs sorted by code; a
polynomial is a dict from monomials to nonzero coefficients. Values are
immutable once built.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import Union

from .field import GF2, FieldDesc, embed
from .variables import (
    X,
    Y,
    Z,
    index_of,
    is_coord,
    kind_of,
    parse_var,
    var_name,
    vector_of,
)

Monomial = tuple  # tuple[tuple[int, int], ...]
ONE: Monomial = ()


class IntegerRing:
    name = "Int"
    zero = 0
    one = 1
    is_field = False
    k = 0

    def add(self, a: int, b: int) -> int:
        return a + b

    def sub(self, a: int, b: int) -> int:
        return a - b

    def neg(self, a: int) -> int:
        return -a

    def mul(self, a: int, b: int) -> int:
        return a * b

    def is_zero(self, a: int) -> bool:
        return a == 0

    def from_int(self, n: int) -> int:
        return n

    def __repr__(self) -> str:
        return "Int"

    def __reduce__(self):
        return (_int_ring, ())


def _int_ring():
    return ZZ


ZZ = IntegerRing()
Ring = Union[IntegerRing, FieldDesc]


class RingMismatch(TypeError):
    pass


class NotDivisible(ArithmeticError):
    def __init__(self, monomial: Monomial, coefficient: int, divisor: int):
        self.monomial = monomial
        self.coefficient = coefficient
        self.divisor = divisor
        super().__init__(
            f"coefficient {coefficient} of {format_monomial(monomial) or '1'} "
            f"is not divisible by {divisor}"
        )


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def multidegree(m: Monomial, nvec: int | None = None) -> tuple[int, ...]:
    """Per-vector total degree of the coordinate variables in ``m``."""
    deg: dict[int, int] = {}
    for v, e in m:
        if is_coord(v):
            i = vector_of(v)
            deg[i] = deg.get(i, 0) + e
    top = nvec if nvec is not None else max(deg, default=0)
    return tuple(deg.get(i, 0) for i in range(1, top + 1))


def format_monomial(m: Monomial) -> str:
    return "*".join(var_name(v) if e == 1 else f"{var_name(v)}^{e}" for v, e in m)


def _accumulate(terms: dict, ring, m: Monomial, c) -> None:
    old = terms.get(m)
    if old is None:
        terms[m] = c
        return
    s = ring.add(old, c)
    if ring.is_zero(s):
        del terms[m]
    else:
        terms[m] = s


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, int] | None = None):
        self.ring = ring
        if terms is None:
            self.terms = {}
        else:
            self.terms = {m: c for m, c in terms.items() if not ring.is_zero(c)}
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, ring: Ring = GF2) -> "Polynomial":
        return cls._raw(ring, {})

    @classmethod
    def constant(cls, c: int, ring: Ring = GF2) -> "Polynomial":
        c = ring.from_int(c) if isinstance(ring, IntegerRing) else c
        return cls(ring, {ONE: c})

    @classmethod
    def one(cls, ring: Ring = GF2) -> "Polynomial":
        return cls._raw(ring, {ONE: ring.one})

    @classmethod
    def var(cls, code: int, ring: Ring = GF2) -> "Polynomial":
        return cls._raw(ring, {((code, 1),): ring.one})

    @classmethod
    def monomial(cls, mono: Iterable[tuple[int, int]], coef: int | None = None,
                 ring: Ring = GF2) -> "Polynomial":
        d: dict[int, int] = {}
        for v, e in mono:
            if e:
                d[v] = d.get(v, 0) + e
        return cls(ring, {tuple(sorted(d.items())): ring.one if coef is None else coef})

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE in self.terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms.get(ONE, self.ring.zero)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items())

    def variables(self) -> set[int]:
        return {v for m in self.terms for v, _ in m}

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def multidegrees(self) -> set[tuple[int, ...]]:
        top = max((vector_of(v) for v in self.variables() if is_coord(v)), default=0)
        return {multidegree(m, top) for m in self.terms}

    def is_multihomogeneous(self) -> bool:
        return len(self.multidegrees()) <= 1

    # arithmetic
    def _check(self, other: "Polynomial") -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return Polynomial.constant(self.ring.from_int(other), self.ring)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        ring = self.ring
        if len(other.terms) > len(self.terms):
            small, big = self.terms, other.terms
        else:
            small, big = other.terms, self.terms
        out = dict(big)
        for m, c in small.items():
            _accumulate(out, ring, m, c)
        return Polynomial._raw(ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        ring = self.ring
        return Polynomial._raw(ring, {m: ring.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        ring = self.ring
        out = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(out, ring, m, ring.neg(c))
        return Polynomial._raw(ring, out)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.ring, _mul_terms(self.terms, other.terms, self.ring))

    __rmul__ = __mul__

    def scale(self, c: int) -> "Polynomial":
        ring = self.ring
        if ring.is_zero(c):
            return Polynomial.zero(ring)
        return Polynomial._raw(ring, {m: ring.mul(a, c) for m, a in self.terms.items()
                                      if not ring.is_zero(ring.mul(a, c))})

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative power")
        result = Polynomial.one(self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.constant(self.ring.from_int(other), self.ring)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((repr(self.ring), frozenset(self.terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({self.ring!r}, {format_poly(self)!r})"

    # conversions
    def change_ring(self, ring: Ring) -> "Polynomial":
        src = self.ring
        if src == ring:
            return self
        if isinstance(src, IntegerRing):
            conv = ring.from_int
        elif isinstance(ring, FieldDesc):
            conv = lambda a: embed(src, ring, a)  # noqa: E731
        else:
            raise RingMismatch(f"cannot map {src} into {ring}")
        out = {}
        for m, c in self.terms.items():
            d = conv(c)
            if not ring.is_zero(d):
                out[m] = d
        return Polynomial._raw(ring, out)

    def diff(self, code: int) -> "Polynomial":
        """Formal partial derivative."""
        ring = self.ring
        out: dict = {}
        for m, c in self.terms.items():
            for pos, (v, e) in enumerate(m):
                if v == code:
                    c2 = ring.mul(c, ring.from_int(e)) if isinstance(ring, IntegerRing) else (c if e & 1 else 0)
                    if ring.is_zero(c2):
                        break
                    rest = m[:pos] + (((v, e - 1),) if e > 1 else ()) + m[pos + 1:]
                    _accumulate(out, ring, rest, c2)
                    break
        return Polynomial._raw(ring, out)

    def evaluate(self, values: Mapping[int, int]) -> int:
        """Evaluate at a point; every variable must be assigned."""
        ring = self.ring
        total = ring.zero
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                x = values[v]
                if isinstance(ring, IntegerRing):
                    t = t * x ** e
                else:
                    t = ring.mul(t, ring.pow(x, e))
                if ring.is_zero(t):
                    break
            total = ring.add(total, t)
        return total


def _mul_terms(a: dict, b: dict, ring) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    if ring is GF2:
        for mb in b:
            for ma in a:
                m = mono_mul(ma, mb)
                if m in out:
                    del out[m]
                else:
                    out[m] = 1
        return out
    for mb, cb in b.items():
        for ma, ca in a.items():
            _accumulate(out, ring, mono_mul(ma, mb), ring.mul(ca, cb))
    return out


def var(code: int, ring: Ring = GF2) -> Polynomial:
    return Polynomial.var(code, ring)


def poly_arith(p: Polynomial, q: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def substitute(p: Polynomial, mapping: Mapping[int, Polynomial]) -> Polynomial:
    """Simultaneous substitution; variables absent from ``mapping`` are fixed."""
    ring = p.ring
    images = {}
    for v, q in mapping.items():
        if q.ring != ring:
            raise RingMismatch(f"image of {var_name(v)} lives in {q.ring}, not {ring}")
        images[getattr(v, "code", v)] = q.terms
    if not images:
        return p
    powers: dict[tuple[int, int], dict] = {}

    def power(v: int, e: int) -> dict:
        key = (v, e)
        t = powers.get(key)
        if t is None:
            if e == 1:
                t = images[v]
            else:
                half = power(v, e // 2)
                t = _mul_terms(half, half, ring)
                if e & 1:
                    t = _mul_terms(t, images[v], ring)
            powers[key] = t
        return t

    out: dict = {}
    gf2 = ring is GF2
    for mono, c in p.terms.items():
        fixed = []
        moved = []
        for v, e in mono:
            if v in images:
                moved.append((v, e))
            else:
                fixed.append((v, e))
        if not moved:
            _accumulate(out, ring, mono, c)
            continue
        acc = {tuple(fixed): c}
        for v, e in moved:
            acc = _mul_terms(acc, power(v, e), ring)
            if not acc:
                break
        if gf2:
            for m in acc:
                if m in out:
                    del out[m]
                else:
                    out[m] = 1
        else:
            for m, cc in acc.items():
                _accumulate(out, ring, m, cc)
    return Polynomial._raw(ring, out)


def component(p: Polynomial, alpha: tuple[int, ...]) -> Polynomial:
    """Terms of multidegree exactly ``alpha`` (vectors beyond len(alpha) must be absent)."""
    alpha = tuple(alpha)
    out = {}
    for m, c in p.terms.items():
        md = multidegree(m)
        if len(md) > len(alpha):
            if any(md[len(alpha):]):
                continue
            md = md[: len(alpha)]
        md = md + (0,) * (len(alpha) - len(md))
        if md == alpha:
            out[m] = c
    return Polynomial._raw(p.ring, out)


def multilinear_component(p: Polynomial, indices: Iterable[int]) -> Polynomial:
    idx = set(indices)
    top = max(idx | {vector_of(v) for v in p.variables() if is_coord(v)}, default=0)
    return component(p, tuple(1 if i in idx else 0 for i in range(1, top + 1)))


def homogeneous_components(p: Polynomial) -> dict[tuple[int, ...], Polynomial]:
    top = max((vector_of(v) for v in p.variables() if is_coord(v)), default=0)
    parts: dict[tuple[int, ...], dict] = {}
    for m, c in p.terms.items():
        parts.setdefault(multidegree(m, top), {})[m] = c
    return {a: Polynomial._raw(p.ring, t) for a, t in sorted(parts.items())}


def divide_exact(p: Polynomial, d: int) -> Polynomial:
    if not isinstance(p.ring, IntegerRing):
        raise RingMismatch("divide_exact needs integer coefficients")
    if d == 0:
        raise ZeroDivisionError("divide_exact by 0")
    out = {}
    for m, c in p.sorted_terms():
        if c % d:
            raise NotDivisible(m, c, d)
        out[m] = c // d
    return Polynomial._raw(ZZ, out)


def reduce_mod2(p: Polynomial) -> Polynomial:
    if not isinstance(p.ring, IntegerRing):
        raise RingMismatch("reduce_mod2 needs integer coefficients")
    return Polynomial._raw(GF2, {m: 1 for m, c in p.terms.items() if c & 1})


@dataclass(frozen=True)
class TypeMatrix:
    """Counts of x_t (sigma) and y_t (tau) factors of a monomial."""

    sigma: tuple[int, ...]
    tau: tuple[int, ...]

    def __str__(self) -> str:
        return f"({','.join(map(str, self.sigma))};{','.join(map(str, self.tau))})"


def type_of(mono: Monomial, nu: int) -> TypeMatrix:
    sigma = [0] * nu
    tau = [0] * nu
    for v, e in mono:
        if not is_coord(v):
            continue
        kind, t = kind_of(v), index_of(v)
        if kind == Z:
            raise ValueError("type is undefined for monomials containing z")
        if t > nu:
            raise ValueError(f"coordinate index {t} exceeds nu={nu}")
        (sigma if kind == X else tau)[t - 1] += e
    return TypeMatrix(tuple(sigma), tuple(tau))


def torus_weights(mono: Monomial) -> dict[int, int]:
    """Per coordinate pair t: (degree in x_t) - (degree in y_t)."""
    w: dict[int, int] = {}
    for v, e in mono:
        if is_coord(v):
            k = kind_of(v)
            if k == X:
                w[index_of(v)] = w.get(index_of(v), 0) + e
            elif k == Y:
                w[index_of(v)] = w.get(index_of(v), 0) - e
    return w


# text format


def _format_coef(c: int, ring) -> str:
    return str(c)


def format_poly(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    parts = []
    for m, c in p.sorted_terms():
        body = format_monomial(m)
        neg = isinstance(p.ring, IntegerRing) and c < 0
        a = -c if neg else c
        if not body:
            s = str(a)
        elif a == 1:
            s = body
        else:
            s = f"{a}*{body}"
        parts.append((neg, s))
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, s in parts[1:]:
        out += (" - " if neg else " + ") + s
    return out


_TOKEN = re.compile(r"\s*([+-])?\s*([^+\-\s][^+\-]*)")


def parse_poly(text: str, ring: Ring = GF2) -> Polynomial:
    text = text.strip()
    if text in ("", "0"):
        return Polynomial.zero(ring)
    out: dict = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or (not first and m.group(1) is None):
            raise ValueError(f"cannot parse polynomial near {text[pos:pos + 20]!r}")
        first = False
        sign = -1 if m.group(1) == "-" else 1
        coef = 1
        mono: dict[int, int] = {}
        for factor in m.group(2).strip().split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {m.group(2)!r}")
            if factor.isdigit():
                coef *= int(factor)
                continue
            name, _, exp = factor.partition("^")
            code = parse_var(name.strip())
            mono[code] = mono.get(code, 0) + (int(exp) if exp else 1)
        key = tuple(sorted(mono.items()))
        if isinstance(ring, IntegerRing):
            c = sign * coef
        elif coef < ring.order:
            c = coef  # element written as its bit pattern; -1 = 1 in characteristic 2
        else:
            raise ValueError(f"coefficient {coef} is not an element of {ring}")
        _accumulate(out, ring, key, c)
        pos = m.end()
    return Polynomial._raw(ring, {m: c for m, c in out.items() if not ring.is_zero(c)})
