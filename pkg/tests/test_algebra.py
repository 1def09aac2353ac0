import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orthoinv.algebra import (
    GF2,
    MODULI,
    ZZ,
    NotDivisible,
    Polynomial,
    UnsupportedDegree,
    artin_schreier_solve,
    component,
    divide_exact,
    embed,
    field_sqrt,
    format_poly,
    is_irreducible,
    make_field,
    parse_poly,
    reduce_mod2,
    substitute,
    type_of,
    xv,
    yv,
    zv,
)
from orthoinv.algebra.evaluate import CompiledPoly, evaluate_many
from orthoinv.algebra.variables import gram_b, gram_q, param, parse_var, var_name
from orthoinv.invariants import b_inv, block_matrix, det_poly, f_F_inv, q_inv, tr_inv, tr_inv_int


# fields


def slow_mul(a, b, modulus, k):
    # schoolbook product then reduction, independent of the table code
    r = 0
    for i in range(k):
        if b >> i & 1:
            r ^= a << i
    for i in range(2 * k - 2, k - 1, -1):
        if r >> i & 1:
            r ^= modulus << (i - k)
    return r


def test_make_field_small_cases():
    assert make_field(1).modulus == 0b11
    assert make_field(2).modulus == 0b111
    with pytest.raises(UnsupportedDegree):
        make_field(17)
    with pytest.raises(UnsupportedDegree):
        make_field(0)


def brute_irreducible(m):
    d = m.bit_length() - 1
    for g in range(2, 1 << d):
        dg = g.bit_length() - 1
        if dg < 1 or dg >= d:
            continue
        r = m
        while r.bit_length() - 1 >= dg:
            r ^= g << (r.bit_length() - 1 - dg)
        if r == 0:
            return False
    return True


@pytest.mark.parametrize("k", range(1, 12))
def test_moduli_irreducible(k):
    assert is_irreducible(MODULI[k])
    assert brute_irreducible(MODULI[k])


@pytest.mark.parametrize("k", [2, 3, 4, 8])
def test_mul_matches_schoolbook(k):
    f = make_field(k)
    rng = np.random.default_rng(k)
    for a, b in rng.integers(0, f.order, size=(200, 2)):
        assert f.mul(int(a), int(b)) == slow_mul(int(a), int(b), f.modulus, k)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10), st.data())
def test_field_axioms(k, data):
    f = make_field(k)
    el = st.integers(0, f.order - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert f.mul(a, b) == f.mul(b, a)
    assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
    assert f.mul(a, b ^ c) == f.mul(a, b) ^ f.mul(a, c)
    if a:
        assert f.mul(a, f.inv(a)) == 1
    s = field_sqrt(f, a)
    assert f.mul(s, s) == a
    assert f.trace(a) in (0, 1)


def test_sqrt_examples():
    assert field_sqrt(GF2, 1) == 1
    f4 = make_field(2)
    w = 0b10
    # exhaustive squaring table of GF(4)
    squares = {x: f4.mul(x, x) for x in range(4)}
    assert squares[w ^ 1] == w
    assert field_sqrt(f4, w) == w ^ 1
    assert field_sqrt(f4, 0) == 0


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_artin_schreier_exhaustive(k):
    f = make_field(k)
    images = {f.mul(x, x) ^ x for x in range(f.order)}
    for a in range(f.order):
        x = artin_schreier_solve(f, a)
        if a in images:
            assert x is not None and f.mul(x, x) ^ x == a
        else:
            assert x is None
    assert artin_schreier_solve(f, 0) == 0


def test_artin_schreier_gf2_and_gf4():
    assert artin_schreier_solve(GF2, 1) is None
    f4 = make_field(2)
    w = 0b10
    brute = any(f4.mul(x, x) ^ x == w for x in range(4))
    assert (artin_schreier_solve(f4, w) is not None) == brute == (f4.trace(w) == 0)


@pytest.mark.parametrize("small,big", [(1, 8), (2, 4), (4, 8), (8, 16)])
def test_embedding_is_ring_homomorphism(small, big):
    fs, fb = make_field(small), make_field(big)
    rng = np.random.default_rng(0)
    for a, b in rng.integers(0, fs.order, size=(50, 2)):
        a, b = int(a), int(b)
        assert embed(fs, fb, fs.mul(a, b)) == fb.mul(embed(fs, fb, a), embed(fs, fb, b))
        assert embed(fs, fb, a ^ b) == embed(fs, fb, a) ^ embed(fs, fb, b)


# variables


def test_variable_names_round_trip():
    for code in (xv(1, 1), yv(2, 7), zv(3), gram_q(2), gram_b(1, 3), param("c")):
        assert parse_var(var_name(code)) == code
    assert var_name(xv(2, 5)) == "x2_5"
    assert var_name(param("c")) == "cc"


# polynomials


x1, y1, x2, y2 = xv(1, 1), yv(1, 1), xv(1, 2), yv(1, 2)


def P(code, ring=GF2):
    return Polynomial.var(code, ring)


def test_arith_examples():
    s = P(x1) + P(y1)
    assert (s + s).is_zero()
    xy = P(x1, ZZ) * P(y1, ZZ)
    assert xy.terms == {((x1, 1), (y1, 1)): 1}
    assert s ** 2 == P(x1) ** 2 + P(y1) ** 2


def test_substitute_examples():
    q = q_inv(1, 2)
    got = substitute(q, {x1: P(x1) + P(y1)})
    assert got == P(x1) * P(y1) + P(y1) * P(y1)
    assert substitute(q, {}) == q
    assert substitute(q, {x1: P(x1), y1: P(y1)}) == q


def test_pi_substitution_on_tr():
    # V^(2) := identity: x2 = y2 = 0, z2 = 1; Tr(V1 I) = Tr(V1) = 2 z1
    t = tr_inv_int((1, 2))
    got = substitute(t, {x2: Polynomial.zero(ZZ), y2: Polynomial.zero(ZZ), zv(2): Polynomial.one(ZZ)})
    assert got == tr_inv_int((1,))
    assert got == 2 * P(zv(1), ZZ)


def test_component_examples():
    p = P(x1) * P(y1) + P(x1) * P(y2)
    assert component(p, (1, 1)) == P(x1) * P(y2)
    b = b_inv(1, 2, 2)
    assert component(b, (1, 1)) == b


def test_component_of_block_determinant_is_F():
    D = det_poly(block_matrix((1, 2), (3, 4)), GF2)
    assert component(D, (1, 1, 1, 1)) == f_F_inv((1, 2), (3, 4))


def test_divide_exact():
    ms_minus_d = parse_poly("x1_1*y1_2 + y1_1*x1_2", ZZ) - parse_poly("x1_1*y1_2 - y1_1*x1_2", ZZ)
    assert divide_exact(ms_minus_d, 2) == parse_poly("y1_1*x1_2", ZZ)
    with pytest.raises(NotDivisible):
        divide_exact(P(x1, ZZ), 2)


def test_reduce_mod2_examples():
    assert reduce_mod2(parse_poly("2*x1_1 + y1_1", ZZ)) == P(y1)
    assert reduce_mod2(parse_poly("3*x1_1", ZZ)) == P(x1)
    assert reduce_mod2(tr_inv_int((1, 2))) == b_inv(1, 2, 2)
    assert tr_inv((1,)).is_zero()


def test_type_of():
    t = type_of(((xv(1, 1), 1), (xv(1, 2), 1), (yv(1, 3), 1)), 1)
    assert (t.sigma, t.tau) == ((2,), (1,))


int_polys = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)),
    st.integers(-3, 3), max_size=5,
).map(lambda d: Polynomial(ZZ, {tuple((v, e) for v, e in zip((x1, y1, x2), k) if e): c for k, c in d.items()}))


@settings(max_examples=100, deadline=None)
@given(int_polys, int_polys, int_polys)
def test_ring_axioms_over_int(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == Polynomial.zero(ZZ)
    assert divide_exact(a * 2, 2) == a


@settings(max_examples=100, deadline=None)
@given(int_polys, int_polys)
def test_reduce_mod2_is_a_homomorphism(a, b):
    assert reduce_mod2(a * b) == reduce_mod2(a) * reduce_mod2(b)
    assert reduce_mod2(a + b) == reduce_mod2(a) + reduce_mod2(b)


@settings(max_examples=100, deadline=None)
@given(int_polys)
def test_text_round_trip(a):
    assert parse_poly(format_poly(a), ZZ) == a
    r = reduce_mod2(a)
    assert parse_poly(format_poly(r)) == r


@settings(max_examples=50, deadline=None)
@given(int_polys, int_polys)
def test_substitution_is_a_homomorphism(a, b):
    m = {x1: P(x2, ZZ) + P(y1, ZZ) * 3, y1: P(x1, ZZ) * P(x2, ZZ)}
    assert substitute(a * b, m) == substitute(a, m) * substitute(b, m)
    assert substitute(a + b, m) == substitute(a, m) + substitute(b, m)


def test_compiled_evaluation_matches_pointwise():
    f = make_field(8)
    p = b_inv(1, 2, 4) * q_inv(3, 4) + b_inv(2, 3, 4)
    rng = np.random.default_rng(1)
    vars_ = sorted(p.variables())
    pts = {v: rng.integers(0, f.order, size=40) for v in vars_}
    fast = evaluate_many(p, f, pts)
    pf = p.change_ring(f)
    for j in range(40):
        assert fast[j] == pf.evaluate({v: int(pts[v][j]) for v in vars_})
    cp = CompiledPoly(p, f)
    assert cp.monomial_values(np.array([pts[v] for v in cp.variables])).shape == (len(p), 40)


def test_all_monomial_products_gf4_exhaustive():
    # a polynomial identity checked at every point of GF(4)^2
    f = make_field(2)
    lhs = (P(x1) + P(y1)) ** 4
    rhs = P(x1) ** 4 + P(y1) ** 4
    for a, b in itertools.product(range(4), repeat=2):
        pt = {x1: a, y1: b}
        assert lhs.change_ring(f).evaluate(pt) == rhs.change_ring(f).evaluate(pt)
