"""Finite fields GF(2^k), 1 <= k <= 16.

Elements are plain ints whose bits are the coefficients of a polynomial in
the generator modulo the field's fixed modulus. Addition is xor. The moduli
are pinned in ``MODULI`` so that every computation is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# x+1 for k=1 is a convention: GF(2) = F2[x]/(x+1).
MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}

MAX_DEGREE = 16


class UnsupportedDegree(ValueError):
    pass


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


@dataclass(frozen=True)
class FieldDesc:
    """Descriptor of GF(2^k); arithmetic helpers live on the descriptor."""

    k: int
    modulus: int
    characteristic: int = 2

    @property
    def order(self) -> int:
        return 1 << self.k

    @property
    def name(self) -> str:
        return "GF2" if self.k == 1 else f"GF2^{self.k}"

    def __repr__(self) -> str:
        return self.name

    # ring interface shared with the integers
    zero = 0
    one = 1
    is_field = True

    def add(self, a: int, b: int) -> int:
        return a ^ b

    sub = add

    def neg(self, a: int) -> int:
        return a

    def is_zero(self, a: int) -> bool:
        return a == 0

    def from_int(self, n: int) -> int:
        return n & 1

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        t = _tables(self)
        return t.exp[t.log[a] + t.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in " + self.name)
        t = _tables(self)
        return t.exp[(self.order - 1 - t.log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        t = _tables(self)
        return t.exp[(t.log[a] * e) % (self.order - 1)]

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def sqrt(self, a: int) -> int:
        return field_sqrt(self, a)

    def trace(self, a: int) -> int:
        """Absolute trace a + a^2 + ... + a^(2^(k-1)), an element of {0, 1}."""
        s, x = 0, a
        for _ in range(self.k):
            s ^= x
            x = self.mul(x, x)
        return s

    def elements(self) -> range:
        return range(self.order)

    def random(self, rng: np.random.Generator, nonzero: bool = False) -> int:
        lo = 1 if nonzero else 0
        return int(rng.integers(lo, self.order))

    # vectorized helpers for numpy arrays of elements
    def mul_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        t = _tables(self)
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = t.exp_arr[t.log_arr[a] + t.log_arr[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    @property
    def log_arr(self) -> np.ndarray:
        return _tables(self).log_arr

    @property
    def exp_arr(self) -> np.ndarray:
        return _tables(self).exp_arr


class _Tables:
    def __init__(self, f: FieldDesc):
        q = f.order
        gen = _primitive_element(f)
        exp = [0] * (2 * q)
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = poly_mod(clmul(x, gen), f.modulus)
        for i in range(q - 1, 2 * q):
            exp[i] = exp[i - (q - 1)]
        self.generator = gen
        self.exp = exp
        self.log = log
        self.exp_arr = np.array(exp, dtype=np.int64)
        self.log_arr = np.array(log, dtype=np.int64)


def _order_divides(f: FieldDesc, g: int, e: int) -> bool:
    r, b = 1, g
    while e:
        if e & 1:
            r = poly_mod(clmul(r, b), f.modulus)
        b = poly_mod(clmul(b, b), f.modulus)
        e >>= 1
    return r == 1


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _primitive_element(f: FieldDesc) -> int:
    q1 = f.order - 1
    if q1 == 1:
        return 1
    factors = _prime_factors(q1)
    for g in range(2, f.order):
        if all(not _order_divides(f, g, q1 // p) for p in factors):
            return g
    raise ArithmeticError(f"no primitive element found for modulus {f.modulus:#x}")


_TABLES: dict[int, _Tables] = {}


def _tables(f: FieldDesc) -> _Tables:
    t = _TABLES.get(f.k)
    if t is None:
        t = _TABLES[f.k] = _Tables(f)
    return t


@lru_cache(maxsize=None)
def make_field(k: int) -> FieldDesc:
    if not isinstance(k, int) or not 1 <= k <= MAX_DEGREE:
        raise UnsupportedDegree(f"GF(2^{k}) not supported; need 1 <= k <= {MAX_DEGREE}")
    return FieldDesc(k, MODULI[k])


GF2 = make_field(1)


def is_irreducible(modulus: int) -> bool:
    """Trial division by every polynomial of degree <= deg/2."""
    d = modulus.bit_length() - 1
    if d <= 0:
        return False
    for g in range(2, 1 << (d // 2 + 1)):
        if poly_mod(modulus, g) == 0 and g != modulus:
            return False
    return True


def field_sqrt(f: FieldDesc, a: int) -> int:
    # Frobenius is a bijection; its inverse is x -> x^(2^(k-1)).
    return f.pow(a, 1 << (f.k - 1)) if a else 0


def artin_schreier_solve(f: FieldDesc, a: int) -> int | None:
    """Root of x^2 + x = a, or None when Tr(a) = 1.

    Of the two roots x, x+1 the one with constant bit 0 is returned.
    """
    if f.trace(a):
        return None
    # x -> x^2 + x is F2-linear; solve on the bit basis.
    cols = [f.mul(1 << i, 1 << i) ^ (1 << i) for i in range(f.k)]
    # rows[r] = (bitmask over unknowns, rhs bit)
    rows = []
    for r in range(f.k):
        mask = 0
        for i, c in enumerate(cols):
            if (c >> r) & 1:
                mask |= 1 << i
        rows.append((mask, (a >> r) & 1))
    pivots: dict[int, tuple[int, int]] = {}
    for mask, rhs in rows:
        for p in sorted(pivots):
            if (mask >> p) & 1:
                pm, pr = pivots[p]
                mask ^= pm
                rhs ^= pr
        if mask:
            p = (mask & -mask).bit_length() - 1
            for q, (qm, qr) in list(pivots.items()):
                if (qm >> p) & 1:
                    pivots[q] = (qm ^ mask, qr ^ rhs)
            pivots[p] = (mask, rhs)
        elif rhs:
            return None
    # free variables (including bit 0, the kernel {0,1}) are set to zero
    x = 0
    for p, (pm, pr) in pivots.items():
        if pr:
            x |= 1 << p
    if x & 1:
        x ^= 1
    assert f.mul(x, x) ^ x == a
    return x


@lru_cache(maxsize=None)
def embedding(small: FieldDesc, big: FieldDesc) -> tuple[int, ...]:
    """Images of the bit basis 1, x, x^2, ... of ``small`` inside ``big``.

    Requires small.k | big.k. The smallest root of small's modulus is used.
    """
    if big.k % small.k:
        raise ValueError(f"{small} does not embed in {big}")
    if small.k == 1:
        return (1,)
    m = small.modulus
    for theta in range(2, big.order):
        acc, pw = 0, 1
        for i in range(small.k + 1):
            if (m >> i) & 1:
                acc ^= pw
            pw = big.mul(pw, theta)
        if acc == 0:
            basis, pw = [], 1
            for _ in range(small.k):
                basis.append(pw)
                pw = big.mul(pw, theta)
            return tuple(basis)
    raise ArithmeticError("no root of the modulus found")


def embed(small: FieldDesc, big: FieldDesc, a: int) -> int:
    if small == big:
        return a
    basis = embedding(small, big)
    r = 0
    for i, b in enumerate(basis):
        if (a >> i) & 1:
            r ^= b
    return r
