"""Invariant spaces of a fixed multidegree and decomposability tests."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Optional

import numpy as np

from ..algebra.evaluate import CompiledPoly
from ..algebra.field import GF2, make_field
from ..algebra.poly import (
    IntegerRing,
    Polynomial,
    format_monomial,
    reduce_mod2,
    substitute,
)
from ..algebra.variables import coordinate_codes, coordinate_position
from ..groups import (
    Group,
    UnsupportedGroup,
    action_map,
    generator_family,
    has_symbolic_family,
    parse_group,
    random_element_matrix,
    _act_points,
    _stack,
)
from . import gf2
from .dense import kernel_np

DEFAULT_CAP = 1 << 22
RANDOMIZED_CAP = 600


class ComponentTooLarge(ValueError):
    pass


def _coord_weight(code: int, n: int) -> tuple[int, int]:
    """(t, +1 for x_t / -1 for y_t); z has no torus weight."""
    nu = n // 2
    pos = coordinate_position(code, n)
    if pos < nu:
        return pos, 1
    if pos < 2 * nu:
        return pos - nu, -1
    return -1, 0


def _vector_monomials(n: int, i: int, d: int) -> list[tuple[tuple, tuple[int, ...]]]:
    nu = n // 2
    codes = coordinate_codes(n, i)
    out = []
    for combo in combinations_with_replacement(codes, d):
        w = [0] * nu
        exps: dict[int, int] = {}
        for c in combo:
            exps[c] = exps.get(c, 0) + 1
            t, s = _coord_weight(c, n)
            if s:
                w[t] += s
        out.append((tuple(sorted(exps.items())), tuple(w)))
    return out


def component_size(n: int, alpha) -> int:
    """Number of weight-zero monomials of multidegree alpha in dimension n."""
    counts: dict[tuple, int] = {(0,) * (n // 2): 1}
    for i, d in enumerate(alpha, start=1):
        if not d:
            continue
        per: dict[tuple, int] = {}
        for _, w in _vector_monomials(n, i, d):
            per[w] = per.get(w, 0) + 1
        nxt: dict[tuple, int] = {}
        for w0, c0 in counts.items():
            for w1, c1 in per.items():
                w = tuple(a + b for a, b in zip(w0, w1))
                nxt[w] = nxt.get(w, 0) + c0 * c1
        counts = nxt
    return counts.get((0,) * (n // 2), 0)


def component_monomials(n: int, alpha, cap: int = DEFAULT_CAP) -> list[tuple]:
    """Sorted weight-zero monomials of multidegree alpha (the torus constraint)."""
    size = component_size(n, alpha)
    if size > cap:
        raise ComponentTooLarge(f"component of multidegree {tuple(alpha)} in dimension {n} "
                                f"has {size} weight-zero monomials, above the cap {cap}")
    nu = n // 2
    zero = (0,) * nu
    partial: dict[tuple, list[tuple]] = {zero: [()]}
    active = [(i, d) for i, d in enumerate(alpha, start=1) if d]
    for idx, (i, d) in enumerate(active):
        per: dict[tuple, list[tuple]] = {}
        for m, w in _vector_monomials(n, i, d):
            per.setdefault(w, []).append(m)
        last = idx == len(active) - 1
        nxt: dict[tuple, list[tuple]] = {}
        for w0, monos0 in partial.items():
            for w1, monos1 in per.items():
                w = tuple(a + b for a, b in zip(w0, w1))
                if last and w != zero:
                    continue
                bucket = nxt.setdefault(w, [])
                for a in monos0:
                    for b in monos1:
                        bucket.append(a + b)
        partial = nxt
    return sorted(partial.get(zero, []))


@dataclass
class InvariantSpace:
    group: str
    multidegree: tuple
    basis: list
    provenance: str  # "symbolic" or "randomized"
    seed: Optional[int] = None
    columns: int = 0
    constraints: int = 0

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        d = {
            "group": self.group,
            "multidegree": list(self.multidegree),
            "dimension": self.dimension,
            "basis": [str(b) for b in self.basis],
            "provenance": self.provenance,
            "columns": self.columns,
        }
        if self.seed is not None:
            d["seed"] = self.seed
        return d


def _poly_from_mask(mask: int, cols: list[tuple]) -> Polynomial:
    return Polynomial._raw(GF2, {cols[j]: 1 for j in gf2.iter_bits(mask)})


def _mask_of(p: Polynomial, index: dict) -> Optional[int]:
    mask = 0
    for m in p.terms:
        j = index.get(m)
        if j is None:
            return None
        mask |= 1 << j
    return mask


def _symbolic_rows(g: Group, cols: list[tuple], vecs) -> tuple[list[int], int]:
    fam = generator_family(g, GF2)
    acts = list(fam.actions) + ([fam.swap] if fam.swap is not None else [])
    rows: list[int] = []
    for A in acts:
        mapping = action_map(A, vecs, GF2)
        by_key: dict[tuple, int] = {}
        for j, mono in enumerate(cols):
            img = substitute(Polynomial._raw(GF2, {mono: 1}), mapping)
            terms = img.terms
            # img - mono, coefficientwise over GF(2)
            keys = set(terms)
            keys ^= {mono}
            bit = 1 << j
            for key in keys:
                by_key[key] = by_key.get(key, 0) ^ bit
        rows.extend(r for r in by_key.values() if r)
    return rows, len(acts)


def invariant_space(n: int, group, alpha, mode: str = "auto", cap: int = DEFAULT_CAP,
                    k: int = 8, seed: int = 0) -> InvariantSpace:
    g = parse_group(group)
    if g.n != n:
        raise UnsupportedGroup(f"group {g} does not act on dimension {n}")
    alpha = tuple(alpha)
    cols = component_monomials(n, alpha, cap)
    vecs = [i for i, d in enumerate(alpha, start=1) if d]
    symbolic = mode != "randomized" and has_symbolic_family(g)
    if mode == "symbolic" and not symbolic:
        raise UnsupportedGroup(f"no symbolic generator family for {g}")
    if symbolic:
        rows, _ = _symbolic_rows(g, cols, vecs)
        basis = [_poly_from_mask(v, cols) for v in gf2.kernel(rows, len(cols))]
        return InvariantSpace(str(g), alpha, basis, "symbolic", columns=len(cols), constraints=len(rows))
    return _randomized_space(g, alpha, cols, vecs, k, seed)


def _randomized_space(g: Group, alpha, cols, vecs, k: int, seed: int) -> InvariantSpace:
    if len(cols) > RANDOMIZED_CAP:
        raise ComponentTooLarge(f"randomized elimination is limited to {RANDOMIZED_CAP} columns, "
                                f"component has {len(cols)}")
    f = make_field(k)
    if not cols:
        return InvariantSpace(str(g), alpha, [], "randomized", seed, 0, 0)
    basis_poly = Polynomial._raw(GF2, {m: 1 for m in cols})
    cp = CompiledPoly(basis_poly, f)
    order = {m: r for r, m in enumerate(basis_poly.terms)}
    perm = np.array([order[m] for m in cols])
    elem_rng, point_rng = (np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(2))
    nrows = len(cols) + 32
    per_elem = 8
    blocks = []
    while sum(b.shape[0] for b in blocks) < nrows:
        r = int(elem_rng.integers(1, 7))
        M, _ = random_element_matrix(g, f, r, elem_rng)
        vals = {i: point_rng.integers(0, f.order, size=(g.n, per_elem)) for i in vecs}
        moved = _act_points(M, vals, f)
        before = _monomial_values(cp, g.n, vals)
        after = _monomial_values(cp, g.n, moved)
        blocks.append((after ^ before)[perm].T)
    A = np.vstack(blocks)
    ker = kernel_np(A, f)
    masks = []
    for v in ker:
        if any(int(a) > 1 for a in v):
            raise ArithmeticError("randomized kernel is not defined over GF(2); retry with a new seed")
        masks.append(sum(1 << j for j, a in enumerate(v) if a))
    basis = [_poly_from_mask(v, cols) for v in gf2.rref(masks)]
    return InvariantSpace(str(g), alpha, basis, "randomized", seed, len(cols), A.shape[0])


def _monomial_values(cp: CompiledPoly, n: int, vals: dict) -> np.ndarray:
    return cp.monomial_values(_stack(cp, n, vals))


# decomposability


@dataclass
class Decomposition:
    decomposable: bool
    multidegree: tuple
    certificate: Optional[list] = None  # list of (p, q) with sum p*q = target
    functional: Optional[list] = None  # monomials whose coefficient sum separates
    products_checked: int = 0
    splits: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.decomposable

    def to_json(self) -> dict:
        d = {
            "decomposable": self.decomposable,
            "multidegree": list(self.multidegree),
            "products_checked": self.products_checked,
        }
        if self.certificate is not None:
            d["certificate"] = [[str(p), str(q)] for p, q in self.certificate]
        if self.functional is not None:
            d["functional"] = list(self.functional)
        return d


def homogeneous_multidegree(p: Polynomial, m: Optional[int] = None) -> tuple:
    degs = p.multidegrees()
    if len(degs) != 1:
        raise ValueError("target must be a nonzero multihomogeneous polynomial")
    (alpha,) = degs
    if m is not None:
        alpha = alpha + (0,) * (m - len(alpha))
    return alpha


def splits(alpha) -> list[tuple[tuple, tuple]]:
    """Unordered splits beta + gamma = alpha with both parts nonzero, beta >= gamma,
    beta in lexicographically decreasing order."""
    out = []
    for beta in sorted(product(*(range(a + 1) for a in alpha)), reverse=True):
        gamma = tuple(a - b for a, b in zip(alpha, beta))
        if not any(beta) or not any(gamma) or beta < gamma:
            continue
        out.append((beta, gamma))
    return out


def is_decomposable(target: Polynomial, group, n: int, cap: int = DEFAULT_CAP,
                    mode: str = "auto", k: int = 8, seed: int = 0) -> Decomposition:
    if isinstance(target.ring, IntegerRing):
        target = reduce_mod2(target)
    g = parse_group(group)
    alpha = homogeneous_multidegree(target)
    cols = component_monomials(n, alpha, cap)
    index = {m: j for j, m in enumerate(cols)}
    tmask = _mask_of(target, index)
    if tmask is None:
        raise ValueError("target has monomials of nonzero torus weight; it is not an invariant")
    cache: dict[tuple, list] = {}

    def space(beta):
        if beta not in cache:
            cache[beta] = invariant_space(n, g, beta, mode=mode, cap=cap, k=k, seed=seed).basis
        return cache[beta]

    pairs: list[tuple[Polynomial, Polynomial]] = []
    masks: list[int] = []
    used = []
    for beta, gamma in splits(alpha):
        Bb, Bg = space(beta), space(gamma)
        if not Bb or not Bg:
            continue
        used.append((beta, gamma))
        for a, p in enumerate(Bb):
            for b, q in enumerate(Bg):
                if beta == gamma and b < a:
                    continue
                pq = p * q
                if not pq:
                    continue
                mask = _mask_of(pq, index)
                if mask == tmask:
                    return Decomposition(True, alpha, [(p, q)], None, len(masks) + 1, used)
                pairs.append((p, q))
                masks.append(mask)
    solver = gf2.SpanSolver(len(cols))
    for mask in masks:
        solver.add(mask)
    combo = solver.solve(tmask)
    if combo is not None:
        cert = [pairs[i] for i in combo]
        return Decomposition(True, alpha, cert, None, len(masks), used)
    phi = solver.separating_functional(tmask)
    functional = [format_monomial(cols[j]) for j in gf2.iter_bits(phi)]
    return Decomposition(False, alpha, None, functional, len(masks), used)


def verify_decomposition(target: Polynomial, dec: Decomposition) -> bool:
    if not dec.decomposable:
        return False
    total = Polynomial.zero(target.ring)
    for p, q in dec.certificate:
        total = total + p * q
    return total == target


def monomial_count_label(alpha) -> str:
    return "x".join(map(str, alpha))
