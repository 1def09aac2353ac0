import pytest
from hypothesis import given, settings, strategies as st

from orthoinv.algebra import GF2, ZZ, Polynomial, parse_poly
from orthoinv.algebra.variables import gram_b, gram_q
from orthoinv.invariants import b_inv, q_inv, substitute_gram, tr_inv
from orthoinv.invspace import NotInvariant, OddZError, express_in_B, express_QB, multigraphs


def gram(s):
    return parse_poly(s)


def test_multigraphs():
    assert multigraphs((1, 1)) == [{(1, 2): 1}]
    assert len(multigraphs((1, 1, 1, 1))) == 3
    assert multigraphs((1, 1, 1)) == []
    assert multigraphs((2, 0)) == []
    graphs = multigraphs((2, 1, 1))
    assert {tuple(sorted(g.items())) for g in graphs} == {(((1, 2), 1), ((1, 3), 1))}


def test_express_in_B_examples():
    assert express_in_B(b_inv(1, 2, 4), 2) == Polynomial.var(gram_b(1, 2), GF2)
    p = b_inv(1, 2, 4) * b_inv(1, 3, 4)
    P = express_in_B(p, 2)
    assert substitute_gram(P, 4) == p
    assert express_in_B(parse_poly("x1_1*y1_2"), 1) is None
    with pytest.raises(ValueError):
        express_in_B(parse_poly("z_1*z_2"), 1)


def test_express_in_B_sees_past_the_orthogonal_invariants():
    # Q is orthogonal but not symplectic
    assert express_in_B(q_inv(1, 2), 1) is None


def test_express_QB_examples():
    Q1 = Polynomial.var(gram_q(1), GF2)
    B12 = Polynomial.var(gram_b(1, 2), GF2)
    assert express_QB(q_inv(1, 3) ** 2, 3) == Q1 ** 2
    assert express_QB(tr_inv((1, 2)) ** 2, 3) == B12 ** 2
    assert express_QB(Polynomial.zero(GF2), 3).is_zero()


def test_express_QB_errors():
    with pytest.raises(OddZError):
        express_QB(parse_poly("z_1*x1_2*y1_2"), 3)
    with pytest.raises(NotInvariant):
        express_QB(parse_poly("x1_1*y1_2"), 3)
    with pytest.raises(ValueError):
        express_QB(q_inv(1, 4), 4)


gram_factor = st.sampled_from(["Q_1", "Q_2", "Q_3", "B_1_2", "B_1_3", "B_2_3"])
gram_mono = st.lists(gram_factor, min_size=1, max_size=3).map("*".join)
gram_poly = st.lists(gram_mono, min_size=1, max_size=3).map(" + ".join)


@settings(max_examples=20, deadline=None)
@given(gram_poly, st.sampled_from([3, 5]))
def test_express_QB_round_trip(text, n):
    f = substitute_gram(gram(text), n)
    if f.is_zero():
        return
    out = express_QB(f, n)
    assert substitute_gram(out, n) == f


def test_int_input_is_reduced():
    # the 2 z_1 z_2 term of the integral polar form dies mod 2
    f = q_inv(1, 3, ZZ) + b_inv(1, 2, 3, ZZ)
    assert express_QB(f, 3) == Polynomial.var(gram_q(1), GF2) + Polynomial.var(gram_b(1, 2), GF2)
