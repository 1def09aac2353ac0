import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orthoinv.algebra import GF2, ZZ, Polynomial, parse_poly, reduce_mod2, substitute, divide_exact, type_of
from orthoinv.algebra.variables import GRAM_DELTA, gram_b, gram_q, xv, yv, zv
from orthoinv.groups import apply, invariance_check, swap_action
from orthoinv.invariants import (
    b_IJ,
    b_inv,
    b_product_expand,
    build_invariant,
    d_inv,
    delta_int,
    delta_inv,
    f_even,
    f_even_params,
    f_even_term_count,
    f_F_inv,
    g_inv,
    g_relation,
    g_substitution,
    g_substitution_target,
    gamma_relation,
    gram_det,
    l_poly,
    match_sum,
    parse_invariant_id,
    p6,
    perfect_matchings,
    q_inv,
    substitute_gram,
    tr_inv,
    tr_inv_int,
)


def multidegree(p):
    degs = set()
    for mono in p.terms:
        d = Counter()
        for code, e in mono:
            d[code & ~0xFFFFF] += e
        degs.add(tuple(sorted(d.values())))
    return degs


# Q, B, D


def test_basic_invariant_strings():
    assert q_inv(1, 2) == parse_poly("x1_1*y1_1")
    assert b_inv(1, 2, 2) == parse_poly("x1_1*y1_2 + y1_1*x1_2")
    assert d_inv((1, 2), 2) == parse_poly("x1_1*y1_2 + y1_1*x1_2")
    assert q_inv(2, 3) == parse_poly("x1_2*y1_2 + z_2^2")


def test_index_errors():
    with pytest.raises(ValueError):
        b_inv(1, 1, 4)
    with pytest.raises(ValueError):
        q_inv(0, 4)
    with pytest.raises(ValueError):
        d_inv((1, 2), 3)


def test_int_polar_form_carries_zz():
    b = b_inv(1, 2, 3, ZZ)
    assert b.terms[((zv(1), 1), (zv(2), 1))] == 2
    # polar identity q(u+v) - q(u) - q(v) over Int
    u = {c: Polynomial.var(c, ZZ) for c in (xv(1, 1), yv(1, 1), zv(1))}
    summed = substitute(q_inv(1, 3, ZZ), {xv(1, 1): u[xv(1, 1)] + Polynomial.var(xv(1, 2), ZZ),
                                          yv(1, 1): u[yv(1, 1)] + Polynomial.var(yv(1, 2), ZZ),
                                          zv(1): u[zv(1)] + Polynomial.var(zv(2), ZZ)})
    assert summed - q_inv(1, 3, ZZ) - q_inv(2, 3, ZZ) == b


# plane


def test_b_IJ_examples():
    assert b_IJ((1,), (2,)) == b_inv(1, 2, 2)
    assert len(b_IJ((1, 2), (3, 4))) == 2
    assert b_IJ((1, 2), (1, 3)) == q_inv(1, 2) * b_IJ((2,), (3,))
    with pytest.raises(ValueError):
        b_IJ((1, 2), (3,))


def test_b_product_expand_example():
    first, second = b_product_expand((1,), (2,), (3,), (4,))
    assert first == ((1, 3), (2, 4)) and second == ((1, 4), (2, 3))
    assert b_product_expand((), (), (), ()) == (((), ()), ((), ()))
    with pytest.raises(ValueError):
        b_product_expand((1,), (), (), ())


multisets = st.integers(0, 3).flatmap(
    lambda s: st.tuples(*[st.lists(st.integers(1, 5), min_size=s, max_size=s)] * 2))


@settings(max_examples=50, deadline=None)
@given(multisets, multisets)
def test_b_product_formula_by_expansion(ef, gh):
    (E, F), (G, H) = ef, gh
    (a, b), (c, d) = b_product_expand(E, F, G, H)
    assert b_IJ(E, F) * b_IJ(G, H) == b_IJ(a, b) + b_IJ(c, d)


# trace invariants


def test_tr_examples():
    assert tr_inv((1, 2)) == b_inv(1, 2, 3)
    assert tr_inv((1,)).is_zero()
    assert tr_inv_int((1,)) == Polynomial.var(zv(1), ZZ) * 2


def test_tr_restrictions():
    kill_z = {zv(i): Polynomial.zero(GF2) for i in range(1, 5)}
    assert substitute(tr_inv((1, 2)), kill_z) == b_IJ((1,), (2,))
    assert substitute(tr_inv((1, 2, 3, 4)), kill_z) == b_IJ((1, 3), (2, 4))
    # pi: V^(3) := identity
    pi = {xv(1, 3): Polynomial.zero(ZZ), yv(1, 3): Polynomial.zero(ZZ), zv(3): Polynomial.one(ZZ)}
    assert reduce_mod2(substitute(tr_inv_int((1, 2, 3)), pi)) == tr_inv((1, 2))


@pytest.mark.parametrize("s", [1, 2, 3, 4])
def test_tr_is_multilinear(s):
    p = tr_inv(range(1, s + 1))
    assert p.is_zero() or multidegree(p) == {(1,) * s}


# F and G


def test_F_restriction_and_shape():
    F = f_F_inv((1, 2), (3, 4))
    assert multidegree(F) == {(1, 1, 1, 1)}
    kill = {c: Polynomial.zero(GF2) for i in range(1, 5) for c in (xv(2, i), yv(2, i))}
    assert substitute(F, kill) == b_IJ((1, 2), (3, 4))


def test_F_rejects_bad_indices():
    with pytest.raises(ValueError):
        f_F_inv((1,), (2,))
    with pytest.raises(ValueError):
        f_F_inv((1, 2), (2, 3))


@pytest.mark.parametrize("I,J", [((1, 2), (3, 4)), ((1, 2, 3), (4, 5, 6))])
def test_G_substitution(I, J):
    G = g_inv(I, J)
    assert apply(swap_action(4), G) == G
    assert substitute(G, g_substitution(I, J)) == g_substitution_target(I, J)


def test_G_substitution_target_example():
    assert g_substitution_target((1, 2), (3, 4)) == b_IJ((1,), (2,))


def test_F_and_G_invariance():
    F = f_F_inv((1, 2), (3, 4))
    assert invariance_check(F, "SO4", mode="symbolic").passed
    assert not invariance_check(F, "O4", mode="symbolic").passed
    assert invariance_check(g_inv((1, 2), (3, 4)), "O4", mode="symbolic").passed


# type-matrix invariants


def test_p6():
    p = p6()
    assert len(p) == 20 and set(p.terms.values()) == {1}
    for mono in p.terms:
        t = type_of(mono, 1)
        assert t.sigma == t.tau == (3,)
    assert invariance_check(reduce_mod2(p), "SL2", mode="symbolic").passed


def test_f_even_params():
    assert f_even_params(2, 2) == (10, 2, 3)
    assert f_even_params(2, 1) == (2, 0, 1)
    assert f_even_params(3, 2)[0] == 16
    with pytest.raises(ValueError):
        f_even_params(1, 2)


def label_count_oracle(nu, t):
    """Brute force over every labelling of the m slots by x_s / y_s."""
    m, low, high = f_even_params(nu, t)
    labels = np.array(list(itertools.product(range(2 * nu), repeat=m)), dtype=np.int8)
    counts = np.stack([(labels == c).sum(axis=1) for c in range(2 * nu)], axis=1)
    rows = {tuple(low if s == pos else high for s in range(nu)) for pos in range(nu)}
    sig, tau = counts[:, 0::2], counts[:, 1::2]
    ok_sig = np.zeros(len(labels), bool)
    coincide = np.zeros(len(labels), bool)
    ok_tau = np.zeros(len(labels), bool)
    for r in rows:
        ok_sig |= (sig == r).all(axis=1)
        ok_tau |= (tau == r).all(axis=1)
        coincide |= (sig == r).all(axis=1) & (tau == r).all(axis=1)
    return int(coincide.sum()), int((ok_sig & ok_tau).sum())


def test_f_even_count_oracle():
    coinciding, independent = label_count_oracle(2, 2)
    assert coinciding == 50400
    assert independent == 100800
    assert f_even_term_count(2, 2) == coinciding


def test_f_even_structure():
    f = f_even(2, 2)
    assert len(f) == 50400
    assert multidegree(f) == {(1,) * 10}
    for mono in itertools.islice(f.terms, 200):
        t = type_of(mono, 2)
        assert t.sigma == t.tau and sorted(t.sigma) == [2, 3]
    assert apply(swap_action(4), f) == f


def test_f_even_small_t():
    # t = 1: rows are permutations of (0, 1) on two slots
    f = f_even(2, 1)
    assert f == parse_poly("x1_1*y1_2 + y1_1*x1_2 + x2_1*y2_2 + y2_1*x2_2")
    assert f == b_inv(1, 2, 4)


# matchings and Delta


def test_perfect_matchings():
    assert perfect_matchings((1, 2)) == [((1, 2),)]
    assert perfect_matchings((1, 2, 3, 4)) == [((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))]
    assert len(perfect_matchings(range(1, 7))) == 15


def test_match_sum_coefficients():
    ms = match_sum(2)
    assert ms == b_inv(1, 2, 4, ZZ) * b_inv(3, 4, 4, ZZ) + b_inv(1, 3, 4, ZZ) * b_inv(2, 4, 4, ZZ) \
        + b_inv(1, 4, 4, ZZ) * b_inv(2, 3, 4, ZZ)
    key = lambda s: next(iter(parse_poly(s, ZZ).terms))  # noqa: E731
    assert ms.terms[key("x1_1*x2_2*y1_3*y2_4")] == 1
    assert ms.terms[key("y1_1*y1_2*x1_3*x1_4")] % 2 == 0


@pytest.mark.parametrize("nu", [1, 2, 3])
def test_match_sum_agrees_with_det_mod2(nu):
    assert reduce_mod2(match_sum(nu)) == reduce_mod2(d_inv(range(1, 2 * nu + 1), 2 * nu, ZZ))
    divide_exact(match_sum(nu) - d_inv(range(1, 2 * nu + 1), 2 * nu, ZZ), 2)


def test_delta_examples():
    assert delta_inv(1) == parse_poly("y1_1*x1_2")
    for nu in (1, 2):
        d = delta_inv(nu)
        assert apply(swap_action(2 * nu), d) != d
    assert invariance_check(delta_inv(2), "SO4", mode="symbolic").passed
    # Delta and its swap differ by the perfect-matching sum mod 2
    d = delta_int(2)
    assert reduce_mod2(d) + apply(swap_action(4), reduce_mod2(d)) == reduce_mod2(match_sum(2))


# relations


def test_gram_det_examples():
    Q1, Q2 = Polynomial.var(gram_q(1), ZZ), Polynomial.var(gram_q(2), ZZ)
    B12 = Polynomial.var(gram_b(1, 2), ZZ)
    assert gram_det(2) == Q1 * Q2 * 4 - B12 * B12
    assert gram_det(1) == Q1 * 2
    for n in (1, 3, 5):
        assert all(c % 2 == 0 for c in gram_det(n).terms.values())


@pytest.mark.parametrize("n", [3, 5])
def test_g_relation_vanishes(n):
    assert substitute_gram(g_relation(n, signed=True), n).is_zero()
    assert substitute_gram(reduce_mod2(g_relation(n)), n).is_zero()


def test_g_relation_sign_matters_over_int():
    assert not substitute_gram(g_relation(3, signed=False), 3).is_zero()


def test_gamma_n2_by_hand():
    Q1, Q2 = Polynomial.var(gram_q(1), ZZ), Polynomial.var(gram_q(2), ZZ)
    B12, D = Polynomial.var(gram_b(1, 2), ZZ), Polynomial.var(GRAM_DELTA, ZZ)
    assert gamma_relation(2) == D * D - D * B12 + Q1 * Q2


@pytest.mark.parametrize("n", [2, 4])
def test_gamma_relation_vanishes(n):
    assert all(c % 4 == 0 for c in l_poly(n).terms.values())
    assert substitute_gram(gamma_relation(n), n).is_zero()
    assert substitute_gram(reduce_mod2(gamma_relation(n)), n).is_zero()


def test_relation_preconditions():
    with pytest.raises(ValueError):
        g_relation(4)
    with pytest.raises(ValueError):
        l_poly(3)


# identifiers


@pytest.mark.parametrize("ident", ["Q:1", "B:1,2", "BIJ:1,2|3,4", "TR:1,2,3", "F:1,2|3,4",
                                   "G:1,2|3,4", "FEVEN:nu=2,t=2", "MS:nu=2", "DELTA:nu=2", "GREL:n=3"])
def test_identifier_round_trip(ident):
    assert str(parse_invariant_id(ident)) == ident


def test_identifiers_build():
    assert build_invariant("Q:1", 4) == q_inv(1, 4)
    assert build_invariant("BIJ:1,2|3,4") == b_IJ((1, 2), (3, 4))
    with pytest.raises(ValueError):
        build_invariant("Q:1")
    with pytest.raises(ValueError):
        parse_invariant_id("NOPE:1")
