"""Gram data of vector tuples: realization, orbit fingerprints, null-cone tests.

Vectors in k^n use the coordinate order x_1..x_nu, y_1..y_nu (, z), where
q = sum x_t y_t (+ z^2) and beta(u, v) = sum (x_t y'_t + y_t x'_t).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .algebra.evaluate import CompiledPoly
from .algebra.field import FieldDesc, artin_schreier_solve, embed, field_sqrt, make_field
from .algebra.poly import IntegerRing, Polynomial, reduce_mod2
from .algebra.variables import coordinate_codes, coordinate_position, is_coord, vector_of
from .groups import Certificate, parse_group, random_element_matrix
from .invariants import build_invariant, delta_inv, invariant_dimension, parse_invariant_id
from .invspace import dense


class NotAlternating(ValueError):
    pass


class DegenerateForm(ValueError):
    pass


class RealizationError(ValueError):
    pass


# small dense matrices over GF(2^k)


def _zeros(r: int, c: int) -> list[list[int]]:
    return [[0] * c for _ in range(r)]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(A, B, f: FieldDesc) -> list[list[int]]:
    out = _zeros(len(A), len(B[0]) if B else 0)
    for i, row in enumerate(A):
        o = out[i]
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        o[j] ^= f.mul(a, b)
    return out


def transpose(A) -> list[list[int]]:
    return [list(r) for r in zip(*A)]


def det(M, f: FieldDesc) -> int:
    M = [list(r) for r in M]
    n = len(M)
    d = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return 0
        M[c], M[piv] = M[piv], M[c]
        p = M[c][c]
        d = f.mul(d, p)
        inv = f.inv(p)
        for r in range(c + 1, n):
            if M[r][c]:
                t = f.mul(M[r][c], inv)
                M[r] = [a ^ f.mul(t, b) for a, b in zip(M[r], M[c])]
    return d


def rank(M, f: FieldDesc) -> int:
    return dense.rank([list(r) for r in M], f) if M else 0


def inverse(M, f: FieldDesc) -> list[list[int]]:
    n = len(M)
    aug = [list(r) + e for r, e in zip(M, _identity(n))]
    R = dense.rref(aug, f)
    if len(R) < n or any(R[i][i] != 1 for i in range(n)):
        raise ValueError("matrix is singular")
    return [r[n:] for r in R]


# forms


def _nu(n: int) -> int:
    return n // 2


def q_value(v: Sequence[int], n: int, f: FieldDesc) -> int:
    nu = _nu(n)
    s = 0
    for t in range(nu):
        s ^= f.mul(v[t], v[nu + t])
    if n % 2:
        s ^= f.mul(v[2 * nu], v[2 * nu])
    return s


def beta_value(u: Sequence[int], v: Sequence[int], n: int, f: FieldDesc) -> int:
    nu = _nu(n)
    s = 0
    for t in range(nu):
        s ^= f.mul(u[t], v[nu + t]) ^ f.mul(u[nu + t], v[t])
    return s


@dataclass
class QuadraticForm:
    """q(x) = sum diag[i] x_i^2 + sum_{i<j} polar[i][j] x_i x_j on field^dim."""

    field: FieldDesc
    diag: list
    polar: list  # symmetric, zero diagonal

    @property
    def dim(self) -> int:
        return len(self.diag)

    @classmethod
    def standard(cls, n: int, f: FieldDesc) -> "QuadraticForm":
        nu = _nu(n)
        diag = [0] * n
        if n % 2:
            diag[2 * nu] = 1
        P = _zeros(n, n)
        for t in range(nu):
            P[t][nu + t] = P[nu + t][t] = 1
        return cls(f, diag, P)

    @classmethod
    def from_polynomial(cls, p: Polynomial, variables: Sequence[int], f: FieldDesc) -> "QuadraticForm":
        if isinstance(p.ring, IntegerRing):
            p = reduce_mod2(p)
        idx = {v: i for i, v in enumerate(variables)}
        d = len(variables)
        diag, P = [0] * d, _zeros(d, d)
        for mono, c in p.terms.items():
            c = embed(p.ring, f, c) if p.ring != f else c
            if sum(e for _, e in mono) != 2:
                raise ValueError("not a quadratic form")
            if len(mono) == 1:
                diag[idx[mono[0][0]]] ^= c
            else:
                i, j = idx[mono[0][0]], idx[mono[1][0]]
                P[i][j] ^= c
                P[j][i] ^= c
        return cls(f, diag, P)

    def __call__(self, v: Sequence[int]) -> int:
        f = self.field
        s = 0
        for i, a in enumerate(v):
            if not a:
                continue
            if self.diag[i]:
                s ^= f.mul(self.diag[i], f.mul(a, a))
            row = self.polar[i]
            for j in range(i + 1, self.dim):
                if row[j] and v[j]:
                    s ^= f.mul(row[j], f.mul(a, v[j]))
        return s

    def beta(self, u: Sequence[int], v: Sequence[int]) -> int:
        f = self.field
        s = 0
        for i, a in enumerate(u):
            if a:
                row = self.polar[i]
                for j, b in enumerate(v):
                    if row[j] and b:
                        s ^= f.mul(a, f.mul(row[j], b))
        return s

    def substitute(self, A) -> "QuadraticForm":
        """The form u -> q(A u)."""
        f = self.field
        cols = transpose(A)
        d = len(cols)
        diag = [self(c) for c in cols]
        P = _zeros(d, d)
        for i in range(d):
            for j in range(i + 1, d):
                P[i][j] = P[j][i] = self.beta(cols[i], cols[j])
        return QuadraticForm(f, diag, P)

    def change_field(self, big: FieldDesc) -> "QuadraticForm":
        small = self.field
        return QuadraticForm(big, [embed(small, big, a) for a in self.diag],
                             [[embed(small, big, a) for a in r] for r in self.polar])


def symplectic_basis(B, f: FieldDesc, vectors: Optional[list] = None):
    """Pairs (a_k, b_k) with B(a_k, b_k) = 1 and radical vectors, for an alternating matrix B.

    Vectors are coefficient lists in field^dim; ``vectors`` defaults to the unit basis.
    """
    dim = len(B)
    if vectors is None:
        vectors = _identity(dim)

    def form(u, v):
        s = 0
        for i, a in enumerate(u):
            if a:
                row = B[i]
                for j, b in enumerate(v):
                    if row[j] and b:
                        s ^= f.mul(a, f.mul(row[j], b))
        return s

    work = [list(v) for v in vectors]
    pairs, radical = [], []
    while work:
        u = work.pop(0)
        if not any(u):
            continue
        k = next((k for k, w in enumerate(work) if form(u, w)), None)
        if k is None:
            radical.append(u)
            continue
        w = work.pop(k)
        inv = f.inv(form(u, w))
        b = [f.mul(inv, a) for a in w]
        pairs.append((u, b))
        nxt = []
        for x in work:
            cb, ca = form(x, b), form(x, u)
            nxt.append([xi ^ f.mul(cb, ui) ^ f.mul(ca, bi) for xi, ui, bi in zip(x, u, b)])
        work = nxt
    return pairs, radical


def _check_alternating(beta, f: FieldDesc) -> None:
    m = len(beta)
    for i in range(m):
        if len(beta[i]) != m:
            raise NotAlternating("beta must be square")
        if beta[i][i]:
            raise NotAlternating(f"beta[{i}][{i}] = {beta[i][i]} is not zero")
        for j in range(i):
            if beta[i][j] != beta[j][i]:
                raise NotAlternating(f"beta is not symmetric at ({i}, {j})")


def alternating_normal_form(beta, f: FieldDesc) -> tuple[list[list[int]], int]:
    """Invertible P and the rank r with P^T beta P = J + 0, J = [[0, I], [I, 0]] of size r."""
    _check_alternating(beta, f)
    pairs, radical = symplectic_basis(beta, f)
    cols = [a for a, _ in pairs] + [b for _, b in pairs]
    # radical vectors complete the basis; symplectic_basis keeps them independent
    cols += radical
    return transpose(cols), 2 * len(pairs)


def standard_block(m: int, r: int) -> list[list[int]]:
    J = _zeros(m, m)
    s = r // 2
    for t in range(s):
        J[t][s + t] = J[s + t][t] = 1
    return J


def arf_class(value: int, f: FieldDesc) -> int:
    """Canonical representative of value modulo {x^2 + x}: 0, or the least element of trace 1."""
    if not f.trace(value):
        return 0
    return next(a for a in range(1, f.order) if f.trace(a))


def arf_invariant(qform: QuadraticForm) -> int:
    """Arf class of a non-degenerate form of even rank; 0 iff it is hyperbolic over its field."""
    f = qform.field
    if qform.dim % 2:
        raise DegenerateForm("Arf invariant needs even dimension")
    pairs, radical = symplectic_basis(qform.polar, f)
    if radical:
        raise DegenerateForm("polar form is degenerate")
    s = 0
    for a, b in pairs:
        s ^= f.mul(qform(a), qform(b))
    return arf_class(s, f)


def _singular_vector(q: QuadraticForm, pairs) -> Optional[list]:
    f = q.field
    for a, b in pairs:
        qa, qb = q(a), q(b)
        if not qa:
            return a
        if not qb:
            return b
        # q(a + lam b) = qa + lam + lam^2 qb; put mu = lam qb
        mu = artin_schreier_solve(f, f.mul(qa, qb))
        if mu is not None:
            lam = f.mul(mu, f.inv(qb))
            return [x ^ f.mul(lam, y) for x, y in zip(a, b)]
    if len(pairs) >= 2:
        (a1, _), (a2, _) = pairs[0], pairs[1]
        t = field_sqrt(f, f.mul(q(a1), f.inv(q(a2))))
        return [x ^ f.mul(t, y) for x, y in zip(a1, a2)]
    return None


def hyperbolic_basis(q: QuadraticForm) -> Optional[tuple[list, list]]:
    """w_1..w_s, w'_1..w'_s with q(w) = q(w') = 0, beta(w_t, w'_u) = [t = u], others orthogonal.

    None when the form is anisotropic somewhere (nonzero Arf class over this field).
    """
    f = q.field
    span = _identity(q.dim)
    ws, wps = [], []
    while span:
        pairs, radical = symplectic_basis(q.polar, f, span)
        if radical:
            raise DegenerateForm("polar form is degenerate")
        w = _singular_vector(q, pairs)
        if w is None:
            return None
        x = next(v for v in span if q.beta(w, v))
        inv = f.inv(q.beta(w, x))
        x = [f.mul(inv, a) for a in x]
        c = q(x)
        wp = [a ^ f.mul(c, b) for a, b in zip(x, w)]
        ws.append(w)
        wps.append(wp)
        rest = []
        for v in span:
            cw, cwp = q.beta(v, wp), q.beta(v, w)
            rest.append([a ^ f.mul(cw, b) ^ f.mul(cwp, d) for a, b, d in zip(v, w, wp)])
        span = [r for r in dense.rref(rest, f)]
    return ws, wps


# data types


@dataclass
class GramData:
    m: int
    beta: list
    qvals: list
    field: FieldDesc
    dvals: Optional[list] = None
    deltaval: Optional[int] = None

    def __post_init__(self):
        if len(self.beta) != self.m or len(self.qvals) != self.m:
            raise ValueError("beta must be m x m and qvals of length m")
        _check_alternating(self.beta, self.field)

    def coordinates(self, n: int, group: str = "O") -> tuple:
        """The separating coordinates: Q^(i), i <= min(m, 2nu); B^(ij), i < j, i <= 2nu;
        determinants for odd n; Delta for SO in even dimension."""
        nu = _nu(n)
        top = min(self.m, 2 * nu)
        out = [("Q", i, self.qvals[i]) for i in range(top)]
        out += [("B", i, j, self.beta[i][j]) for i in range(top) for j in range(i + 1, self.m)]
        if n % 2 and self.dvals is not None:
            out += [("D", l, d) for l, d in enumerate(self.dvals)]
        if group == "SO" and n % 2 == 0 and self.deltaval is not None:
            out.append(("DELTA", self.deltaval))
        return tuple(out)

    def change_field(self, big: FieldDesc) -> "GramData":
        e = lambda a: embed(self.field, big, a)  # noqa: E731
        return GramData(self.m, [[e(a) for a in r] for r in self.beta], [e(a) for a in self.qvals], big,
                        None if self.dvals is None else [e(a) for a in self.dvals],
                        None if self.deltaval is None else e(self.deltaval))

    def to_json(self) -> dict:
        d = {"m": self.m, "beta": self.beta, "q": self.qvals, "field": {"k": self.field.k}}
        if self.dvals is not None:
            d["d"] = self.dvals
        if self.deltaval is not None:
            d["delta"] = self.deltaval
        return d

    @classmethod
    def from_json(cls, d: dict) -> "GramData":
        return cls(d["m"], d["beta"], d["q"], make_field(d["field"]["k"]), d.get("d"), d.get("delta"))


@dataclass
class VectorTuple:
    n: int
    columns: list  # m vectors of length n
    field: FieldDesc
    extended: bool = False

    def __post_init__(self):
        if any(len(c) != self.n for c in self.columns):
            raise ValueError(f"every column must have length {self.n}")

    @property
    def m(self) -> int:
        return len(self.columns)

    def values(self) -> dict[int, int]:
        """Coordinate variable code -> value."""
        out = {}
        for i, col in enumerate(self.columns, start=1):
            for code, a in zip(coordinate_codes(self.n, i), col):
                out[code] = a
        return out

    def act(self, M) -> "VectorTuple":
        cols = transpose(mat_mul(M, transpose(self.columns), self.field)) if self.columns else []
        return VectorTuple(self.n, cols, self.field, self.extended)

    def change_field(self, big: FieldDesc) -> "VectorTuple":
        return VectorTuple(self.n, [[embed(self.field, big, a) for a in c] for c in self.columns], big, True)

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "field": {"k": self.field.k}, "columns": self.columns}

    @classmethod
    def from_json(cls, d: dict) -> "VectorTuple":
        vt = cls(d["n"], d["columns"], make_field(d["field"]["k"]))
        if d["m"] != vt.m:
            raise ValueError("m does not match the number of columns")
        return vt


def evaluate_at(p: Polynomial, tuples: Sequence[VectorTuple]) -> np.ndarray:
    """Values of p at a batch of vector tuples sharing n and field."""
    if not tuples:
        return np.zeros(0, dtype=np.int64)
    f, n = tuples[0].field, tuples[0].n
    cp = CompiledPoly(p, f)
    rows = []
    for code in cp.variables:
        if not is_coord(code):
            raise ValueError("only coordinate variables can be evaluated")
        i, pos = vector_of(code), coordinate_position(code, n)
        rows.append([vt.columns[i - 1][pos] for vt in tuples])
    vals = np.array(rows, dtype=np.int64).reshape(len(rows), len(tuples))
    return cp(vals)


# fingerprints and orbits


def fingerprint(v: VectorTuple, group: str = "O") -> GramData:
    f, n, m = v.field, v.n, v.m
    g = _group_kind(group)
    beta = [[beta_value(a, b, n, f) for b in v.columns] for a in v.columns]
    qvals = [q_value(a, n, f) for a in v.columns]
    nu = _nu(n)
    dvals = None
    if n % 2:
        head = v.columns[: 2 * nu]
        dvals = [det(transpose(head + [v.columns[l]]), f) for l in range(2 * nu, m)] if m > 2 * nu else []
    deltaval = None
    if g == "SO" and n % 2 == 0 and m >= 2 * nu:
        head = VectorTuple(n, v.columns[: 2 * nu], f)
        deltaval = int(evaluate_at(delta_inv(nu), [head])[0])
    return GramData(m, beta, qvals, f, dvals, deltaval)


def _group_kind(group) -> str:
    if isinstance(group, str) and group in ("O", "SO"):
        return group
    return parse_group(group).kind


class Verdict(str, Enum):
    SAME = "same"
    DIFFERENT = "different"
    NOT_GENERIC = "not_generic"


def perp_basis(v: VectorTuple) -> list[list[int]]:
    """Basis of the beta-orthogonal complement of the span of v in k^n."""
    n, f = v.n, v.field
    unit = _identity(n)
    rows = [[beta_value(c, e, n, f) for e in unit] for c in v.columns]
    if not rows:
        return unit
    ker = dense.kernel(rows, n, f)
    return ker


def nonsingular_in_perp(v: VectorTuple) -> Optional[list[int]]:
    n, f = v.n, v.field
    W = perp_basis(v)
    for w in W:
        if q_value(w, n, f):
            return w
    for i in range(len(W)):
        for j in range(i + 1, len(W)):
            if beta_value(W[i], W[j], n, f):
                return [a ^ b for a, b in zip(W[i], W[j])]
    return None


def is_generic(v: VectorTuple, group: str = "O") -> bool:
    n, f = v.n, v.field
    nu = _nu(n)
    top = min(v.m, 2 * nu)
    head = [c[: 2 * nu] for c in v.columns[:top]]  # image in k^n / ker beta
    if rank(head, f) < top:
        return False
    if _group_kind(group) == "SO" and n % 2 == 0 and v.m < 2 * nu:
        return nonsingular_in_perp(v) is not None
    return True


def same_orbit_generic(v1: VectorTuple, v2: VectorTuple, group: str = "O") -> Verdict:
    if (v1.n, v1.m, v1.field) != (v2.n, v2.m, v2.field):
        raise ValueError("tuples differ in shape or field")
    g = _group_kind(group)
    if not (is_generic(v1, g) and is_generic(v2, g)):
        return Verdict.NOT_GENERIC
    a = fingerprint(v1, g).coordinates(v1.n, g)
    b = fingerprint(v2, g).coordinates(v2.n, g)
    return Verdict.SAME if a == b else Verdict.DIFFERENT


# realization


def realize_gram(g: GramData, n: int, allow_extension: bool = True) -> VectorTuple:
    """Vectors v^(1..m) in k^n with beta(v^(i), v^(j)) = beta[i][j] and q(v^(i)) = qvals[i]."""
    m, f = g.m, g.field
    if m > n:
        raise RealizationError(f"m = {m} exceeds n = {n}")
    P, r = alternating_normal_form(g.beta, f)
    nu = _nu(n)
    if r > 2 * nu:
        raise RealizationError(f"rank {r} of beta exceeds {2 * nu}")
    # u^(i) in k^(2nu): columns of P^-1 read as (a-part -> x, b-part -> y)
    Minv = inverse(P, f)
    s = r // 2
    us = []
    for i in range(m):
        u = [0] * n
        for t in range(s):
            u[t] = Minv[t][i]
            u[nu + t] = Minv[s + t][i]
        us.append(u)
    if n % 2:
        cols = []
        for u, qi in zip(us, g.qvals):
            u = list(u)
            u[2 * nu] = field_sqrt(f, qi ^ q_value(u, n, f))
            cols.append(u)
        return VectorTuple(n, cols, f)
    out = _realize_even(g, us, r, n) if m else VectorTuple(n, [], f)
    if out is None:
        if not allow_extension:
            raise RealizationError("no realization over this field; a quadratic extension is needed")
        big = make_field(2 * f.k)
        got = realize_gram(g.change_field(big), n, allow_extension=False)
        got.extended = True
        return got
    return out


def _realize_even(g: GramData, us: list, r: int, n: int) -> Optional[VectorTuple]:
    f, m = g.field, g.m
    nu = _nu(n)
    if r == n:
        # u's form a basis: build q* in u-coordinates and map its hyperbolic basis to the standard one
        qstar = QuadraticForm(f, list(g.qvals), [list(row) for row in g.beta])
        hb = hyperbolic_basis(qstar)
        if hb is None:
            return None
        ws, wps = hb
        cols = []
        for i in range(m):
            e = [int(j == i) for j in range(m)]
            cols.append([qstar.beta(e, wps[t]) for t in range(nu)] + [qstar.beta(e, ws[t]) for t in range(nu)])
        return VectorTuple(n, cols, f)
    std = QuadraticForm.standard(n, f)
    span = VectorTuple(n, us, f)
    perp = perp_basis(span)
    # u0 in the perp of the u's but outside their span
    u0 = next((w for w in perp if rank(us + [w], f) > rank(us, f)), None)
    if u0 is None:
        raise RealizationError("no complement vector found")
    for coord in range(n):
        if not u0[coord]:
            continue
        # f = coordinate functional, f(u0) != 0; try lam with q* ~ q and q*(u0) != 0
        for lam in range(f.order):
            diag = list(std.diag)
            diag[coord] ^= lam
            qstar = QuadraticForm(f, diag, std.polar)
            q0 = qstar(u0)
            if not q0 or arf_invariant(qstar):
                continue
            hb = hyperbolic_basis(qstar)
            if hb is None:
                continue
            ws, wps = hb

            def A(u):
                return [qstar.beta(u, wps[t]) for t in range(nu)] + [qstar.beta(u, ws[t]) for t in range(nu)]

            Au0 = A(u0)
            cols = []
            for u, qi in zip(us, g.qvals):
                c = field_sqrt(f, f.mul(qi ^ qstar(u), f.inv(q0)))
                cols.append([a ^ f.mul(c, b) for a, b in zip(A(u), Au0)])
            return VectorTuple(n, cols, f)
    return None


# null cone


def null_cone_test(v: VectorTuple) -> bool:
    n, f = v.n, v.field
    for i, a in enumerate(v.columns):
        if q_value(a, n, f):
            return False
        for b in v.columns[i + 1:]:
            if beta_value(a, b, n, f):
                return False
    return True


def random_singular_tuples(n: int, m: int, f: FieldDesc, count: int,
                           rng: np.random.Generator) -> list[VectorTuple]:
    """Tuples in random maximal totally singular subspaces: combinations of the
    x-axis vectors moved by a random product of reflections."""
    nu = _nu(n)
    out = []
    for _ in range(count):
        r = int(rng.integers(0, 7))
        M = random_element_matrix(parse_group(f"O{n}"), f, r, rng)[0] if r else _identity(n)
        coef = rng.integers(0, f.order, size=(m, nu))
        cols = []
        for i in range(m):
            v = [0] * n
            for t in range(nu):
                v[t] = int(coef[i, t])
            cols.append(v)
        out.append(VectorTuple(n, cols, f).act(M))
    return out


def null_cone_vanishing(inv, n: Optional[int] = None, trials: int = 100, k: int = 8,
                        seed: int = 0) -> Certificate:
    """Evaluate a positive-degree invariant at random totally singular tuples; all values must be 0."""
    if isinstance(inv, str):
        inv = parse_invariant_id(inv)
    if isinstance(inv, Polynomial):
        p = inv
    else:
        n = n or invariant_dimension(inv)
        p = build_invariant(inv, n)
    if n is None:
        raise ValueError("n is required")
    if isinstance(p.ring, IntegerRing):
        p = reduce_mod2(p)
    f = make_field(k)
    m = max((vector_of(v) for v in p.variables() if is_coord(v)), default=1)
    rng = np.random.default_rng(seed)
    tuples = random_singular_tuples(n, m, f, trials, rng)
    vals = evaluate_at(p, tuples)
    bad = np.nonzero(vals)[0]
    name = f"O{n}"
    if len(bad):
        j = int(bad[0])
        return Certificate("fail", "nullcone", name, trials, seed=seed,
                           witness={"trial": j, "value": int(vals[j]), "columns": tuples[j].columns},
                           trials=trials, field=k)
    return Certificate("pass", "nullcone", name, trials, seed=seed, trials=trials, field=k)


def standard_tuple(n: int, m: int, f: FieldDesc) -> VectorTuple:
    unit = _identity(n)
    return VectorTuple(n, [unit[i] if i < n else [0] * n for i in range(m)], f)
