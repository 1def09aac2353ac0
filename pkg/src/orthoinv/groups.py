"""Orthogonal, special orthogonal and symplectic group actions.

Actions are n x n matrices of polynomials acting on column vectors whose rows
are ordered x_1..x_nu, y_1..y_nu (, z). Parametric generator families carry a
formal parameter ``c``; invariance is certified as a polynomial identity in
``c`` together with a torus weight rule and, for full orthogonal groups, the
swap x_1 <-> y_1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from .algebra.evaluate import CompiledPoly
from .algebra.field import GF2, FieldDesc, make_field
from .algebra.poly import (
    ZZ,
    IntegerRing,
    Polynomial,
    RingMismatch,
    format_monomial,
    reduce_mod2,
    substitute,
    torus_weights,
)
from .algebra.variables import (
    Z,
    coordinate_codes,
    coordinate_position,
    index_of,
    is_coord,
    is_param,
    kind_of,
    param,
    vector_of,
    xv,
    yv,
    zv,
)

C = param("c")


class SingularVector(ValueError):
    pass


class UnsupportedGroup(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Group:
    kind: str  # "O", "SO" or "Sp"
    n: int

    def __post_init__(self):
        if self.kind not in ("O", "SO", "Sp"):
            raise UnsupportedGroup(f"unknown group kind {self.kind!r}")
        if self.n < 1 or (self.kind == "Sp" and self.n % 2):
            raise UnsupportedGroup(f"bad dimension {self.n} for {self.kind}")

    @property
    def nu(self) -> int:
        return self.n // 2

    def __str__(self) -> str:
        return f"{self.kind}{self.n}"


_GROUP_RE = re.compile(r"(SO|O|Sp|SL)\(?(\d+)\)?")


def parse_group(s) -> Group:
    if isinstance(s, Group):
        return s
    m = _GROUP_RE.fullmatch(str(s).strip())
    if not m:
        raise UnsupportedGroup(f"cannot parse group {s!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "SL":
        if n != 2:
            raise UnsupportedGroup("only SL2 is supported")
        kind = "Sp"
    return Group(kind, n)


def _const(c: int, ring) -> Polynomial:
    return Polynomial.constant(c, ring) if c else Polynomial.zero(ring)


@dataclass(frozen=True)
class GroupAction:
    """Linear substitution v -> A v applied to every vector of a tuple."""

    n: int
    entries: tuple  # tuple of rows, each a tuple of Polynomials
    parity: Optional[int] = None
    name: str = ""
    inverse_pairs: tuple = ()  # parameter pairs (c, d) with c*d = 1

    @property
    def ring(self):
        return self.entries[0][0].ring

    @classmethod
    def from_matrix(cls, rows, ring=GF2, parity=None, name="", inverse_pairs=()) -> "GroupAction":
        ent = []
        for row in rows:
            r = []
            for a in row:
                if isinstance(a, Polynomial):
                    r.append(a)
                else:
                    a = int(a)
                    if isinstance(ring, IntegerRing):
                        r.append(_const(a, ring))
                    elif isinstance(ring, FieldDesc) and ring.k == 1:
                        r.append(_const(a & 1, ring))
                    else:
                        r.append(_const(a, ring))
            ent.append(tuple(r))
        n = len(ent)
        if any(len(r) != n for r in ent):
            raise DimensionMismatch("matrix must be square")
        return cls(n, tuple(ent), parity, name, tuple(inverse_pairs))

    @classmethod
    def identity(cls, n: int, ring=GF2) -> "GroupAction":
        return cls.from_matrix([[int(i == j) for j in range(n)] for i in range(n)], ring, 0, "id")

    def is_constant(self) -> bool:
        return all(a.is_constant() for row in self.entries for a in row)

    def numeric(self) -> list[list[int]]:
        return [[a.constant_value() for a in row] for row in self.entries]

    def to_strings(self) -> list[list[str]]:
        return [[str(a) for a in row] for row in self.entries]

    def change_ring(self, ring) -> "GroupAction":
        return GroupAction(self.n, tuple(tuple(a.change_ring(ring) for a in row) for row in self.entries),
                           self.parity, self.name, self.inverse_pairs)


def _rows_codes(n: int, i: int) -> list[int]:
    return coordinate_codes(n, i)


def _check_fits(p: Polynomial, n: int) -> set[int]:
    nu = n // 2
    vecs = set()
    for v in p.variables():
        if not is_coord(v):
            continue
        k, t = kind_of(v), index_of(v)
        if k == Z:
            if n % 2 == 0:
                raise DimensionMismatch(f"z variable in a polynomial acted on by a {n}-dimensional group")
        elif t > nu:
            raise DimensionMismatch(f"coordinate index {t} exceeds nu={nu}")
        vecs.add(vector_of(v))
    return vecs


def _align(A: GroupAction, ring):
    """Common ring for acting by A on polynomials over ``ring``."""
    if A.ring == ring:
        return A, ring
    if isinstance(A.ring, IntegerRing):
        return A.change_ring(ring), ring
    if isinstance(ring, IntegerRing):
        raise RingMismatch(f"cannot act on an integer polynomial by an action over {A.ring}")
    if A.ring.k % ring.k == 0:
        return A, A.ring
    return A.change_ring(ring), ring


def action_map(A: GroupAction, vecs, ring) -> dict[int, Polynomial]:
    """Coordinate substitution realizing v^(i) -> A v^(i) for the given vectors."""
    ent = A.entries
    mapping = {}
    for i in vecs:
        codes = _rows_codes(A.n, i)
        cols = [Polynomial.var(c, ring) for c in codes]
        for r, code in enumerate(codes):
            img = Polynomial.zero(ring)
            for c in range(A.n):
                a = ent[r][c]
                if a:
                    img = img + a * cols[c]
            if img != cols[r]:
                mapping[code] = img
    return mapping


def apply(A: GroupAction, p: Polynomial) -> Polynomial:
    """Simultaneous substitution v^(i) -> A v^(i)."""
    vecs = _check_fits(p, A.n)
    A, ring = _align(A, p.ring)
    if p.ring != ring:
        p = p.change_ring(ring)
    return substitute(p, action_map(A, vecs, ring))


def compose(A: GroupAction, B: GroupAction) -> GroupAction:
    """The action of A∘B (first B, then A): matrix product A·B."""
    if A.n != B.n:
        raise DimensionMismatch("dimension mismatch")
    ring = A.ring
    if B.ring != ring:
        B = B.change_ring(ring)
    n = A.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            s = Polynomial.zero(ring)
            for k in range(n):
                if A.entries[i][k] and B.entries[k][j]:
                    s = s + A.entries[i][k] * B.entries[k][j]
            row.append(s)
        rows.append(tuple(row))
    parity = None if A.parity is None or B.parity is None else (A.parity + B.parity) % 2
    return GroupAction(n, tuple(rows), parity, f"{A.name}*{B.name}",
                       tuple(sorted(set(A.inverse_pairs) | set(B.inverse_pairs))))


def q_form(n: int, i: int = 1, ring=GF2) -> Polynomial:
    nu = n // 2
    q = Polynomial.zero(ring)
    for t in range(1, nu + 1):
        q = q + Polynomial.var(xv(t, i), ring) * Polynomial.var(yv(t, i), ring)
    if n % 2:
        q = q + Polynomial.var(zv(i), ring) ** 2
    return q


def beta_form(n: int, i: int = 1, j: int = 2, ring=GF2) -> Polynomial:
    nu = n // 2
    b = Polynomial.zero(ring)
    for t in range(1, nu + 1):
        b = b + Polynomial.var(xv(t, i), ring) * Polynomial.var(yv(t, j), ring)
        b = b + Polynomial.var(yv(t, i), ring) * Polynomial.var(xv(t, j), ring)
    if n % 2 and isinstance(ring, IntegerRing):
        b = b + Polynomial.var(zv(i), ring) * Polynomial.var(zv(j), ring) * 2
    return b


def _symplectic_form(nu: int, ring) -> Polynomial:
    w = Polynomial.zero(ring)
    for t in range(1, nu + 1):
        w = w + Polynomial.var(xv(t, 1), ring) * Polynomial.var(yv(t, 2), ring)
        w = w - Polynomial.var(yv(t, 1), ring) * Polynomial.var(xv(t, 2), ring)
    return w


def _cancel_inverse_pairs(p: Polynomial, pairs) -> Polynomial:
    if not pairs:
        return p
    out: dict = {}
    ring = p.ring
    for m, c in p.terms.items():
        d = dict(m)
        for a, b in pairs:
            k = min(d.get(a, 0), d.get(b, 0))
            if k:
                for v in (a, b):
                    d[v] -= k
                    if not d[v]:
                        del d[v]
        key = tuple(sorted(d.items()))
        s = ring.add(out.get(key, ring.zero), c)
        if ring.is_zero(s):
            out.pop(key, None)
        else:
            out[key] = s
    return Polynomial(ring, out)


def is_orthogonal(A: GroupAction) -> bool:
    """q(Av) = q(v) identically (parameter pairs with c*d = 1 cancelled)."""
    q = q_form(A.n, 1, A.ring)
    return _cancel_inverse_pairs(apply(A, q) - q, A.inverse_pairs).is_zero()


def is_symplectic(A: GroupAction) -> bool:
    if A.n % 2:
        return False
    w = _symplectic_form(A.n // 2, A.ring)
    return _cancel_inverse_pairs(apply(A, w) - w, A.inverse_pairs).is_zero()


# concrete elements over GF(2^k)


def _vec_q(v, n: int, f: FieldDesc) -> int:
    nu = n // 2
    s = 0
    for t in range(nu):
        s ^= f.mul(v[t], v[nu + t])
    if n % 2:
        s ^= f.mul(v[2 * nu], v[2 * nu])
    return s


def _vec_beta(u, v, n: int, f: FieldDesc) -> int:
    nu = n // 2
    s = 0
    for t in range(nu):
        s ^= f.mul(u[t], v[nu + t]) ^ f.mul(u[nu + t], v[t])
    return s


def reflection_matrix(u, n: int, f: FieldDesc) -> list[list[int]]:
    qu = _vec_q(u, n, f)
    if qu == 0:
        raise SingularVector(f"q(u) = 0 for u = {list(u)}")
    inv = f.inv(qu)
    # column j of T_u is T_u(e_j) = e_j + beta(e_j, u)/q(u) * u
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for j in range(n):
        e = [0] * n
        e[j] = 1
        b = f.mul(_vec_beta(e, u, n, f), inv)
        if b:
            for i in range(n):
                M[i][j] ^= f.mul(b, u[i])
    return M


def reflection(u, n: int, f: FieldDesc = GF2) -> GroupAction:
    return GroupAction.from_matrix(reflection_matrix(list(u), n, f), f, 1, "T")


def mat_mul(A, B, f: FieldDesc) -> list[list[int]]:
    n, m, p = len(A), len(B), len(B[0])
    out = [[0] * p for _ in range(n)]
    for i in range(n):
        for k in range(m):
            a = A[i][k]
            if a:
                row = B[k]
                o = out[i]
                for j in range(p):
                    if row[j]:
                        o[j] ^= f.mul(a, row[j])
    return out


def random_nonsingular(n: int, f: FieldDesc, rng: np.random.Generator) -> list[int]:
    while True:
        u = [int(a) for a in rng.integers(0, f.order, size=n)]
        if _vec_q(u, n, f):
            return u


def random_element_matrix(group, f: FieldDesc, r: int, rng: np.random.Generator) -> tuple[list[list[int]], int]:
    g = parse_group(group)
    if g.kind == "Sp":
        raise UnsupportedGroup("random elements are generated only for O and SO")
    r = len_word(r, g)
    n = g.n
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(r):
        M = mat_mul(M, reflection_matrix(random_nonsingular(n, f, rng), n, f), f)
    return M, r % 2


def len_word(r: int, group) -> int:
    return r + (r % 2) if parse_group(group).kind == "SO" else r


def random_element(group, f: FieldDesc, r: int, rng: np.random.Generator | int = 0) -> GroupAction:
    """Product of r random reflections (r forced even for SO)."""
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    M, parity = random_element_matrix(group, f, r, rng)
    r = len_word(r, group)
    return GroupAction.from_matrix(M, f, parity, f"refl^{len_word(r, group)}")


# parametric generator families


@dataclass(frozen=True)
class GeneratorFamily:
    group: Group
    actions: tuple  # parametric GroupActions
    swap: Optional[GroupAction]
    torus: bool = True
    mod2_only: bool = False

    @property
    def names(self) -> list[str]:
        out = [a.name for a in self.actions]
        if self.swap is not None:
            out.append(self.swap.name)
        return out


def _elementary(n: int, subs: dict[int, list[tuple[int, int, int]]], ring, name: str) -> GroupAction:
    """Identity plus entries: subs[row] = [(col, sign, c_power)]."""
    c = Polynomial.var(C, ring)
    rows = []
    for i in range(n):
        row = [Polynomial.one(ring) if i == j else Polynomial.zero(ring) for j in range(n)]
        for j, sign, e in subs.get(i, ()):
            term = c ** e
            row[j] = row[j] + (term if sign > 0 else -term)
        rows.append(row)
    return GroupAction.from_matrix(rows, ring, name=name)


def swap_action(n: int, ring=GF2) -> GroupAction:
    nu = n // 2
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    M[0][0] = M[nu][nu] = 0
    M[0][nu] = M[nu][0] = 1
    return GroupAction.from_matrix(M, ring, 1, "swap x1<->y1")


def _gl_elementaries(nu: int, ring) -> list[GroupAction]:
    n = 2 * nu
    out = []
    for i in range(nu):
        for j in range(nu):
            if i != j:
                # x_i -> x_i + c x_j, y_j -> y_j - c y_i
                out.append(_elementary(n, {i: [(j, 1, 1)], nu + j: [(nu + i, -1, 1)]}, ring,
                                       f"x{i + 1}->x{i + 1}+c*x{j + 1}"))
    return out


def generator_family(group, ring=GF2) -> GeneratorFamily:
    g = parse_group(group)
    n, nu = g.n, g.nu
    if g.kind == "Sp":
        acts = _gl_elementaries(nu, ring)
        for t in range(nu):
            acts.append(_elementary(n, {t: [(nu + t, 1, 1)]}, ring, f"x{t + 1}->x{t + 1}+c*y{t + 1}"))
            acts.append(_elementary(n, {nu + t: [(t, 1, 1)]}, ring, f"y{t + 1}->y{t + 1}+c*x{t + 1}"))
        return GeneratorFamily(g, tuple(acts), None)
    if n == 2:
        swap = swap_action(2, ring) if g.kind == "O" else None
        return GeneratorFamily(g, (), swap)
    if n == 3:
        if isinstance(ring, IntegerRing):
            raise UnsupportedGroup("the O(3) family is defined in characteristic 2 only")
        # Ad of the unipotent matrices of SL(2) on V = [[z, x], [y, z]]
        up = _elementary(3, {0: [(1, 1, 2)], 2: [(1, 1, 1)]}, ring, "Ad[[1,c],[0,1]]")
        lo = _elementary(3, {1: [(0, 1, 2)], 2: [(0, 1, 1)]}, ring, "Ad[[1,0],[c,1]]")
        return GeneratorFamily(g, (up, lo), None, mod2_only=True)
    if n == 4 and g.kind == "SO":
        if isinstance(ring, IntegerRing):
            raise UnsupportedGroup("the SO(4) family is defined in characteristic 2 only")
        # V = [[x1, x2], [y2, y1]] -> S V T^-1; rows x1, x2, y1, y2
        X1, X2, Y1, Y2 = 0, 1, 2, 3
        acts = (
            _elementary(4, {X1: [(Y2, 1, 1)], X2: [(Y1, 1, 1)]}, ring, "S=[[1,c],[0,1]]"),
            _elementary(4, {Y2: [(X1, 1, 1)], Y1: [(X2, 1, 1)]}, ring, "S=[[1,0],[c,1]]"),
            _elementary(4, {X2: [(X1, 1, 1)], Y1: [(Y2, 1, 1)]}, ring, "T=[[1,c],[0,1]]"),
            _elementary(4, {X1: [(X2, 1, 1)], Y2: [(Y1, 1, 1)]}, ring, "T=[[1,0],[c,1]]"),
        )
        return GeneratorFamily(g, acts, None, mod2_only=True)
    if n % 2 == 0 and g.kind == "O":
        return GeneratorFamily(g, tuple(_gl_elementaries(nu, ring)), swap_action(n, ring))
    raise UnsupportedGroup(f"no symbolic generator family for {g}")


def has_symbolic_family(group) -> bool:
    try:
        generator_family(group)
    except UnsupportedGroup:
        return False
    return True


# certificates


@dataclass
class Certificate:
    status: str  # "pass" or "fail"
    mode: str  # "symbolic" or "randomized"
    group: str
    generators_checked: int
    seed: Optional[int] = None
    witness: Optional[dict] = None
    trials: Optional[int] = None
    points: Optional[int] = None
    field: Optional[int] = None
    generators: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        d = {
            "status": self.status,
            "mode": self.mode,
            "group": self.group,
            "generators_checked": self.generators_checked,
            "seed": self.seed,
        }
        if self.witness is not None:
            d["witness"] = self.witness
        if self.mode == "symbolic":
            d["generators"] = list(self.generators)
        else:
            d["trials"] = self.trials
            if self.points is not None:
                d["points"] = self.points
            d["field"] = {"k": self.field}
        return d


def torus_witness(p: Polynomial) -> Optional[str]:
    for m, _ in p.sorted_terms():
        if any(torus_weights(m).values()):
            return format_monomial(m) or "1"
    return None


def _diff_witness(name: str, diff: Polynomial) -> dict:
    m, c = diff.sorted_terms()[0]
    return {"generator": name, "monomial": format_monomial(m) or "1", "coefficient": int(c)}


def check_action(p: Polynomial, A: GroupAction) -> Optional[dict]:
    """None when A fixes p identically, else a witness of the difference."""
    diff = apply(A, p) - p
    if diff.is_zero():
        return None
    return _diff_witness(A.name, diff)


def _char2(p: Polynomial) -> Polynomial:
    return reduce_mod2(p) if isinstance(p.ring, IntegerRing) else p


def invariance_check(p: Polynomial, group, mode: str = "auto", k: int = 8, seed: int = 0,
                     trials: int = 64, points: int = 64, max_reflections: int = 6) -> Certificate:
    g = parse_group(group)
    if mode not in ("auto", "symbolic", "randomized"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode != "randomized" and has_symbolic_family(g):
        return _symbolic_check(p, g)
    if mode == "symbolic":
        raise UnsupportedGroup(f"no symbolic generator family for {g}")
    return randomized_check(p, g, k=k, seed=seed, trials=trials, points=points,
                            max_reflections=max_reflections)


def _symbolic_check(p: Polynomial, g: Group) -> Certificate:
    p = _char2(p)
    fam = generator_family(g, p.ring)
    names = []
    if fam.torus:
        names.append("torus")
        w = torus_witness(p)
        if w is not None:
            return Certificate("fail", "symbolic", str(g), len(names),
                               witness={"generator": "torus", "monomial": w}, generators=names)
    for A in fam.actions + ((fam.swap,) if fam.swap is not None else ()):
        names.append(A.name)
        wit = check_action(p, A)
        if wit is not None:
            return Certificate("fail", "symbolic", str(g), len(names), witness=wit, generators=names)
    return Certificate("pass", "symbolic", str(g), len(names), generators=names)


def _coord_points(p: Polynomial, n: int, f: FieldDesc, rng, npts: int):
    vecs = sorted(_check_fits(p, n))
    vals = {i: rng.integers(0, f.order, size=(n, npts)) for i in vecs}
    return vecs, vals


def _act_points(M, vals: dict, f: FieldDesc) -> dict:
    n = len(M)
    out = {}
    for i, v in vals.items():
        w = np.zeros_like(v)
        for r in range(n):
            acc = np.zeros(v.shape[1], dtype=np.int64)
            for c in range(n):
                if M[r][c]:
                    acc ^= f.mul_arr(np.full(v.shape[1], M[r][c]), v[c])
            w[r] = acc
        out[i] = w
    return out


def _stack(cp: CompiledPoly, n: int, vals: dict) -> np.ndarray:
    rows = []
    for code in cp.variables:
        rows.append(vals[vector_of(code)][coordinate_position(code, n)])
    if not rows:
        npts = next(iter(vals.values())).shape[1] if vals else 1
        return np.zeros((0, npts), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def randomized_check(p: Polynomial, group, k: int = 8, seed: int = 0, trials: int = 64,
                     points: int = 64, max_reflections: int = 6) -> Certificate:
    """p(Av) = p(v) for random reflection products A at random points v."""
    g = parse_group(group)
    if g.kind == "Sp":
        raise UnsupportedGroup("randomized checks cover O and SO only")
    f = make_field(k)
    cp = CompiledPoly(p, f)
    elem_rng, point_rng = (np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(2))
    _, vals = _coord_points(p, g.n, f, point_rng, points)
    base = cp(_stack(cp, g.n, vals)) if vals else cp(np.zeros((0, points), dtype=np.int64))
    for trial in range(trials):
        r = int(elem_rng.integers(1, max_reflections + 1))
        if g.kind == "SO" and r % 2:
            r = r + 1 if r < max_reflections else r - 1
        M, _ = random_element_matrix(g, f, r, elem_rng)
        moved = _act_points(M, vals, f)
        got = cp(_stack(cp, g.n, moved)) if vals else base
        bad = np.nonzero(got != base)[0]
        if len(bad):
            j = int(bad[0])
            return Certificate("fail", "randomized", str(g), trial + 1, seed=seed,
                               witness={"trial": trial, "point": j, "reflections": r,
                                        "value": int(base[j]), "moved_value": int(got[j])},
                               trials=trials, points=points, field=k)
    return Certificate("pass", "randomized", str(g), trials, seed=seed, trials=trials,
                       points=points, field=k)
