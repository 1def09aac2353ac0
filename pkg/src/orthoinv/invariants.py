"""Constructors for the named invariants and relation polynomials."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .algebra.field import GF2
from .algebra.poly import (
    ZZ,
    IntegerRing,
    Polynomial,
    component,
    divide_exact,
    reduce_mod2,
    substitute,
)
from .algebra.variables import GRAM_D, GRAM_DELTA, decode, gram_b, gram_q, is_gram, xv, yv, zv
from .groups import apply, swap_action

TERM_CAP = 2_000_000


def _v(code: int, ring) -> Polynomial:
    return Polynomial.var(code, ring)


def _check_index(*idx: int) -> None:
    for i in idx:
        if not isinstance(i, int) or i < 1:
            raise ValueError(f"vector indices must be positive integers, got {i!r}")


def det_poly(M, ring) -> Polynomial:
    """Determinant of a square matrix of polynomials (Laplace expansion, memoized on columns)."""
    n = len(M)
    signed = isinstance(ring, IntegerRing)
    memo: dict[tuple[int, int], Polynomial] = {}

    def rec(row: int, mask: int) -> Polynomial:
        if row == n:
            return Polynomial.one(ring)
        key = (row, mask)
        hit = memo.get(key)
        if hit is not None:
            return hit
        acc = Polynomial.zero(ring)
        pos = 0
        for j in range(n):
            if mask >> j & 1:
                continue
            a = M[row][j]
            if a:
                minor = rec(row + 1, mask | (1 << j))
                if minor:
                    term = a * minor
                    acc = acc - term if signed and pos % 2 else acc + term
            pos += 1
        memo[key] = acc
        return acc

    return rec(0, 0)


# basic invariants


def q_inv(i: int, n: int, ring=GF2) -> Polynomial:
    _check_index(i)
    nu = n // 2
    q = Polynomial.zero(ring)
    for t in range(1, nu + 1):
        q = q + _v(xv(t, i), ring) * _v(yv(t, i), ring)
    if n % 2:
        q = q + _v(zv(i), ring) ** 2
    return q


def b_inv(i: int, j: int, n: int, ring=GF2) -> Polynomial:
    """Polar form; over the integers the odd case carries 2 z^(i) z^(j)."""
    _check_index(i, j)
    if i == j:
        raise ValueError("B^(ij) needs i != j")
    nu = n // 2
    b = Polynomial.zero(ring)
    for t in range(1, nu + 1):
        b = b + _v(xv(t, i), ring) * _v(yv(t, j), ring) + _v(yv(t, i), ring) * _v(xv(t, j), ring)
    if n % 2 and isinstance(ring, IntegerRing):
        b = b + _v(zv(i), ring) * _v(zv(j), ring) * 2
    return b


def column(n: int, i: int, ring=GF2) -> list[Polynomial]:
    nu = n // 2
    col = [_v(xv(t, i), ring) for t in range(1, nu + 1)] + [_v(yv(t, i), ring) for t in range(1, nu + 1)]
    if n % 2:
        col.append(_v(zv(i), ring))
    return col


def d_inv(indices, n: int, ring=GF2) -> Polynomial:
    indices = tuple(indices)
    _check_index(*indices)
    if len(indices) != n:
        raise ValueError(f"D needs exactly n={n} indices, got {len(indices)}")
    cols = [column(n, i, ring) for i in indices]
    M = [[cols[c][r] for c in range(n)] for r in range(n)]
    return det_poly(M, ring)


# n = 2


def _mono(pairs, ring) -> Polynomial:
    return Polynomial.monomial(pairs, ring=ring)


def b_IJ(I, J, ring=GF2) -> Polynomial:
    """x^(I) y^(J) + y^(I) x^(J) for the plane (n = 2)."""
    I, J = tuple(I), tuple(J)
    if len(I) != len(J):
        raise ValueError(f"|I| = {len(I)} differs from |J| = {len(J)}")
    _check_index(*I, *J)
    a = _mono([(xv(1, i), 1) for i in I] + [(yv(1, j), 1) for j in J], ring)
    b = _mono([(yv(1, i), 1) for i in I] + [(xv(1, j), 1) for j in J], ring)
    return a + b


def b_product_expand(E, F, G, H) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """B^(E|F) B^(G|H) = B^(E+G|F+H) + B^(E+H|F+G), as index pairs."""
    if len(E) != len(F) or len(G) != len(H):
        raise ValueError("need |E| = |F| and |G| = |H|")
    first = (tuple(sorted((*E, *G))), tuple(sorted((*F, *H))))
    second = (tuple(sorted((*E, *H))), tuple(sorted((*F, *G))))
    return first, second


# n = 3


def sl2_matrix(i: int, ring) -> list[list[Polynomial]]:
    z = _v(zv(i), ring)
    return [[z, _v(xv(1, i), ring)], [_v(yv(1, i), ring), z]]


def _mat2_mul(A, B):
    return [[A[r][0] * B[0][c] + A[r][1] * B[1][c] for c in range(2)] for r in range(2)]


def tr_inv_int(indices) -> Polynomial:
    indices = tuple(indices)
    if not indices:
        raise ValueError("Tr needs at least one index")
    _check_index(*indices)
    P = sl2_matrix(indices[0], ZZ)
    for i in indices[1:]:
        P = _mat2_mul(P, sl2_matrix(i, ZZ))
    return P[0][0] + P[1][1]


def tr_inv(indices) -> Polynomial:
    return reduce_mod2(tr_inv_int(indices))


# n = 4


def gl2_matrix(i: int, ring) -> list[list[Polynomial]]:
    return [[_v(xv(1, i), ring), _v(xv(2, i), ring)], [_v(yv(2, i), ring), _v(yv(1, i), ring)]]


def block_matrix(I, J, ring=GF2) -> list[list[Polynomial]]:
    s = len(I)
    size = 2 * s
    M = [[Polynomial.zero(ring) for _ in range(size)] for _ in range(size)]

    def put(br: int, bc: int, V):
        for a in range(2):
            for b in range(2):
                M[2 * br + a][2 * bc + b] = V[a][b]

    for r in range(s - 1):
        put(r, r, gl2_matrix(I[r], ring))
        put(r, r + 1, gl2_matrix(J[r], ring))
    put(s - 1, 0, gl2_matrix(J[s - 1], ring))
    put(s - 1, s - 1, gl2_matrix(I[s - 1], ring))
    return M


def _check_FG(I, J) -> tuple[tuple[int, ...], tuple[int, ...]]:
    I, J = tuple(I), tuple(J)
    if len(I) != len(J):
        raise ValueError(f"|I| = {len(I)} differs from |J| = {len(J)}")
    if len(I) < 2:
        raise ValueError("F^(I|J) needs s >= 2: for s = 1 the block pattern overlaps itself")
    _check_index(*I, *J)
    if len(set(I + J)) != 2 * len(I):
        raise ValueError("F^(I|J) needs pairwise distinct indices")
    return I, J


def f_F_inv(I, J) -> Polynomial:
    """2s-linear component of the block determinant in the gl(2) encoding."""
    I, J = _check_FG(I, J)
    det = det_poly(block_matrix(I, J), GF2)
    top = max(I + J)
    alpha = tuple(1 if i in set(I + J) else 0 for i in range(1, top + 1))
    return component(det, alpha)


def g_inv(I, J) -> Polynomial:
    F = f_F_inv(I, J)
    return F + apply(swap_action(4), F)


def g_substitution(I, J) -> dict[int, Polynomial]:
    """Coordinates killed or fixed so that G^(I|J) turns into a plane invariant."""
    I, J = _check_FG(I, J)
    s = len(I)
    zero, one = Polynomial.zero(GF2), Polynomial.one(GF2)
    sub: dict[int, Polynomial] = {}
    for i in I + J[: s - 2]:
        sub[xv(2, i)] = zero
        sub[yv(2, i)] = zero
    # V = [[x1, x2], [y2, y1]]
    a, b = J[s - 2], J[s - 1]
    sub.update({xv(1, a): zero, xv(2, a): zero, yv(2, a): one, yv(1, a): zero})
    sub.update({xv(1, b): zero, xv(2, b): one, yv(2, b): zero, yv(1, b): zero})
    return sub


def g_substitution_target(I, J) -> Polynomial:
    I, J = _check_FG(I, J)
    s = len(I)
    return b_IJ(I[: s - 1], (I[s - 1],) + J[: s - 2])


# type-matrix invariants


def p6(ring=ZZ) -> Polynomial:
    """Sum of the sextilinear plane monomials with three x's and three y's."""
    terms = {}
    for xs in combinations(range(1, 7), 3):
        mono = [(xv(1, i), 1) if i in xs else (yv(1, i), 1) for i in range(1, 7)]
        terms[tuple(sorted(mono))] = 1
    return Polynomial(ring, terms)


def f_even_params(nu: int, t: int) -> tuple[int, int, int]:
    """(m, low, high): m slots, each type row a permutation of (low, high, ..., high)."""
    if nu < 2:
        raise ValueError("f_even needs nu >= 2")
    if t < 1:
        raise ValueError("f_even needs t >= 1")
    high = 2 ** t - 1
    return 2 * (high * nu - 1), high - 1, high


def f_even_types(nu: int, t: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    _, low, high = f_even_params(nu, t)
    out = []
    for pos in range(nu):
        row = tuple(low if s == pos else high for s in range(nu))
        out.append((row, row))
    return out


def multinomial(counts) -> int:
    total = sum(counts)
    r = math.factorial(total)
    for c in counts:
        r //= math.factorial(c)
    return r


def f_even_term_count(nu: int, t: int) -> int:
    return sum(multinomial(s + tau) for s, tau in f_even_types(nu, t))


def _label_assignments(labels: list[int], counts: list[int], m: int):
    """All ways to give each of the vectors 1..m one label with prescribed counts."""
    slots = list(range(1, m + 1))

    def rec(k: int, free: tuple[int, ...]):
        if k == len(labels) - 1:
            yield [(labels[k], i) for i in free]
            return
        for chosen in combinations(free, counts[k]):
            rest = tuple(i for i in free if i not in chosen)
            for tail in rec(k + 1, rest):
                yield [(labels[k], i) for i in chosen] + tail

    yield from rec(0, tuple(slots))


def f_even(nu: int, t: int = 2, cap: int = TERM_CAP) -> Polynomial:
    m, _, _ = f_even_params(nu, t)
    count = f_even_term_count(nu, t)
    if count > cap:
        raise ValueError(f"f_even(nu={nu}, t={t}) has {count} terms, above the cap {cap}")
    terms = {}
    for sigma, tau in f_even_types(nu, t):
        # label 2s-2 is x_s, 2s-1 is y_s; coordinate code built per slot
        labels = [lab for s in range(nu) for lab in (2 * s, 2 * s + 1)]
        counts = [c for s in range(nu) for c in (sigma[s], tau[s])]
        keep = [(lab, c) for lab, c in zip(labels, counts) if c]
        labels, counts = [lab for lab, _ in keep], [c for _, c in keep]
        for assignment in _label_assignments(labels, counts, m):
            mono = tuple(sorted(
                ((xv(lab // 2 + 1, i) if lab % 2 == 0 else yv(lab // 2 + 1, i)), 1)
                for lab, i in assignment
            ))
            terms[mono] = 1
    if len(terms) != count:
        raise AssertionError(f"enumerated {len(terms)} terms, expected {count}")
    return Polynomial._raw(GF2, terms)


# matchings, Delta and relations


def perfect_matchings(indices) -> list[tuple[tuple[int, int], ...]]:
    """Matchings with i1<i2, i3<i4, ... and i1<i3<...; (2k-1)!! of them."""
    indices = tuple(sorted(indices))
    if len(indices) % 2:
        raise ValueError("perfect matchings need an even number of indices")
    if not indices:
        return [()]
    first, rest = indices[0], indices[1:]
    out = []
    for k, partner in enumerate(rest):
        remaining = rest[:k] + rest[k + 1:]
        for tail in perfect_matchings(remaining):
            out.append(((first, partner),) + tail)
    return out


def match_sum_abstract(nu: int, ring=ZZ) -> Polynomial:
    out = Polynomial.zero(ring)
    for mt in perfect_matchings(range(1, 2 * nu + 1)):
        out = out + Polynomial.monomial([(gram_b(a, b), 1) for a, b in mt], ring=ring)
    return out


def match_sum(nu: int, ring=ZZ) -> Polynomial:
    if nu < 1:
        raise ValueError("match_sum needs nu >= 1")
    n = 2 * nu
    B = {}
    out = Polynomial.zero(ring)
    for mt in perfect_matchings(range(1, n + 1)):
        prod = Polynomial.one(ring)
        for a, b in mt:
            if (a, b) not in B:
                B[a, b] = b_inv(a, b, n, ring)
            prod = prod * B[a, b]
        out = out + prod
    return out


def delta_int(nu: int) -> Polynomial:
    """(sum BB...B - D) / 2 over the integers."""
    return divide_exact(match_sum(nu) - d_inv(range(1, 2 * nu + 1), 2 * nu, ZZ), 2)


def delta_bar_int(nu: int) -> Polynomial:
    return divide_exact(match_sum(nu) + d_inv(range(1, 2 * nu + 1), 2 * nu, ZZ), 2)


def delta_inv(nu: int) -> Polynomial:
    return reduce_mod2(delta_int(nu))


def gram_matrix_abstract(n: int, ring=ZZ) -> list[list[Polynomial]]:
    return [[_v(gram_q(i), ring) * 2 if i == j else _v(gram_b(i, j), ring)
             for j in range(1, n + 1)] for i in range(1, n + 1)]


def gram_det(n: int) -> Polynomial:
    if n < 1:
        raise ValueError("gram_det needs n >= 1")
    return det_poly(gram_matrix_abstract(n), ZZ)


def g_relation(n: int, signed: bool = False) -> Polynomial:
    """D^2 - det/2; with ``signed`` the sign (-1)^nu is put on D^2."""
    if n % 2 == 0:
        raise ValueError("the G relation needs odd n")
    nu = n // 2
    d2 = _v(GRAM_D, ZZ) ** 2
    if signed and nu % 2:
        d2 = -d2
    return d2 - divide_exact(gram_det(n), 2)


def l_poly(n: int) -> Polynomial:
    if n % 2:
        raise ValueError("L needs even n")
    nu = n // 2
    ms = match_sum_abstract(nu)
    det = gram_det(n)
    return ms * ms - det if nu % 2 == 0 else ms * ms + det


def gamma_relation(n: int) -> Polynomial:
    """Delta^2 - Delta * sum BB...B + L/4."""
    nu = n // 2
    L4 = divide_exact(l_poly(n), 4)
    d = _v(GRAM_DELTA, ZZ)
    return d * d - d * match_sum_abstract(nu) + L4


def gram_image(code: int, n: int, ring=ZZ) -> Polynomial:
    """Coordinate polynomial behind one abstract Gram symbol."""
    if code == GRAM_D:
        return d_inv(range(1, n + 1), n, ring)
    if code == GRAM_DELTA:
        if n % 2:
            raise ValueError("Delta lives in even dimension")
        delta = delta_int(n // 2)
        return delta if isinstance(ring, IntegerRing) else reduce_mod2(delta).change_ring(ring)
    v = decode(code)
    if v.kind == "Q":
        return q_inv(v.i, n, ring)
    if v.kind == "B":
        return b_inv(v.t, v.i, n, ring)
    raise ValueError(f"{v} is not an abstract Gram symbol")


@lru_cache(maxsize=256)
def _gram_image_cached(code: int, n: int, ring_key: str) -> Polynomial:
    return gram_image(code, n, ZZ if ring_key == "Int" else GF2)


def substitute_gram(p: Polynomial, n: int) -> Polynomial:
    """Replace Q_i, B_i_j, D, DELTA by their coordinate polynomials in dimension n."""
    ring = p.ring
    key = "Int" if isinstance(ring, IntegerRing) else ("GF2" if ring == GF2 else None)
    sub = {}
    for code in p.variables():
        if is_gram(code):
            sub[code] = _gram_image_cached(code, n, key) if key else gram_image(code, n, ring)
    return substitute(p, sub)


# identifiers


@dataclass(frozen=True)
class InvariantId:
    tag: str
    args: tuple = ()
    args2: tuple = ()
    params: tuple = ()  # sorted (key, value) pairs

    def param(self, key: str, default=None):
        return dict(self.params).get(key, default)

    def __str__(self) -> str:
        if self.params:
            return f"{self.tag}:" + ",".join(f"{k}={v}" for k, v in self.params)
        if self.args2 or self.tag in ("BIJ", "F", "G"):
            return f"{self.tag}:{','.join(map(str, self.args))}|{','.join(map(str, self.args2))}"
        if self.args:
            return f"{self.tag}:{','.join(map(str, self.args))}"
        return self.tag


_TAGS = {"Q", "B", "D", "BIJ", "TR", "F", "G", "P6", "FEVEN", "MS", "DELTA", "GRAMDET", "GREL", "L", "GAMMA"}
_ID_RE = re.compile(r"([A-Z0-9]+)(?::(.*))?")


def _ints(s: str) -> tuple[int, ...]:
    s = s.strip()
    if not s:
        return ()
    return tuple(int(a) for a in s.split(","))


def parse_invariant_id(text: str) -> InvariantId:
    m = _ID_RE.fullmatch(text.strip())
    if not m or m.group(1) not in _TAGS:
        raise ValueError(f"unknown invariant {text!r}")
    tag, rest = m.group(1), (m.group(2) or "")
    try:
        if "=" in rest:
            params = []
            for kv in rest.split(","):
                k, _, v = kv.partition("=")
                params.append((k.strip(), int(v)))
            return InvariantId(tag, params=tuple(sorted(params)))
        if "|" in rest:
            a, _, b = rest.partition("|")
            return InvariantId(tag, _ints(a), _ints(b))
        return InvariantId(tag, _ints(rest))
    except ValueError as exc:
        raise ValueError(f"malformed invariant {text!r}: {exc}") from None


def invariant_dimension(inv: InvariantId, n: int | None = None) -> int | None:
    """Ambient dimension implied by the identifier (None if it needs --n)."""
    tag = inv.tag
    if tag in ("BIJ", "P6"):
        return 2
    if tag == "TR":
        return 3
    if tag in ("F", "G"):
        return 4
    if tag in ("FEVEN", "MS", "DELTA"):
        return 2 * inv.param("nu")
    if tag in ("GREL", "GAMMA", "L", "GRAMDET"):
        return inv.param("n")
    return n


def build_invariant(inv: InvariantId | str, n: int | None = None) -> Polynomial:
    if isinstance(inv, str):
        inv = parse_invariant_id(inv)
    tag = inv.tag
    if tag in ("Q", "B", "D") and n is None:
        raise ValueError(f"{tag} needs the ambient dimension n")
    if tag == "Q":
        (i,) = inv.args
        return q_inv(i, n)
    if tag == "B":
        i, j = inv.args
        return b_inv(i, j, n)
    if tag == "D":
        return d_inv(inv.args or tuple(range(1, n + 1)), n)
    if tag == "BIJ":
        return b_IJ(inv.args, inv.args2)
    if tag == "TR":
        return tr_inv(inv.args)
    if tag == "F":
        return f_F_inv(inv.args, inv.args2)
    if tag == "G":
        return g_inv(inv.args, inv.args2)
    if tag == "P6":
        return reduce_mod2(p6())
    if tag == "FEVEN":
        return f_even(inv.param("nu"), inv.param("t", 2))
    if tag == "MS":
        return reduce_mod2(match_sum(inv.param("nu")))
    if tag == "DELTA":
        return delta_inv(inv.param("nu"))
    if tag == "GRAMDET":
        return gram_det(inv.param("n"))
    if tag == "GREL":
        return g_relation(inv.param("n"))
    if tag == "L":
        return l_poly(inv.param("n"))
    if tag == "GAMMA":
        return gamma_relation(inv.param("n"))
    raise ValueError(f"unknown invariant tag {tag}")


def natural_group(inv: InvariantId, n: int | None = None) -> str:
    """The group the invariant is constructed for."""
    dim = invariant_dimension(inv, n)
    if inv.tag in ("F", "DELTA"):
        return f"SO{dim}"
    if inv.tag == "P6":
        return "SL2"
    return f"O{dim}"
