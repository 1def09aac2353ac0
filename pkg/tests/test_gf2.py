import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orthoinv.algebra import GF2, make_field
from orthoinv.invspace import dense, gf2

rows_st = st.integers(1, 8).flatmap(
    lambda w: st.tuples(st.just(w), st.lists(st.integers(0, (1 << w) - 1), max_size=10)))


def brute_kernel(rows, ncols):
    return [x for x in range(1 << ncols) if all(gf2.dot(r, x) == 0 for r in rows)]


def brute_span(rows):
    span = {0}
    for r in rows:
        span |= {s ^ r for s in span}
    return span


@settings(max_examples=200, deadline=None)
@given(rows_st)
def test_kernel_matches_brute_force(data):
    w, rows = data
    K = gf2.kernel(rows, w)
    assert brute_span(K) == set(brute_kernel(rows, w))
    assert len(K) == w - gf2.rank(rows)


@settings(max_examples=200, deadline=None)
@given(rows_st, st.randoms(use_true_random=False))
def test_rank_and_rref_ignore_row_order(data, rnd):
    _, rows = data
    shuffled = list(rows)
    rnd.shuffle(shuffled)
    assert gf2.rank(rows) == gf2.rank(shuffled)
    assert gf2.rref(rows) == gf2.rref(shuffled)
    assert brute_span(gf2.rref(rows)) == brute_span(rows)


def test_rref_is_reduced():
    rng = random.Random(4)
    rows = [rng.getrandbits(40) for _ in range(25)]
    R = gf2.rref(rows)
    pivots = [gf2.low_bit(r) for r in R]
    assert pivots == sorted(pivots)
    for i, r in enumerate(R):
        for j, p in enumerate(pivots):
            assert (r >> p & 1) == (i == j)


def test_kernel_examples():
    # x0 + x1 = 0 on three columns
    assert gf2.kernel([0b011], 3) == [0b011, 0b100]
    assert gf2.kernel([], 2) == [0b01, 0b10]
    assert gf2.kernel([0b1, 0b10], 2) == []


@settings(max_examples=100, deadline=None)
@given(rows_st, st.integers(0, 255))
def test_span_solver(data, target):
    w, rows = data
    target &= (1 << w) - 1
    s = gf2.SpanSolver(w)
    for r in rows:
        s.add(r)
    combo = s.solve(target)
    if target in brute_span(rows):
        acc = 0
        for i in combo:
            acc ^= rows[i]
        assert acc == target
        assert s.separating_functional(target) is None
    else:
        assert combo is None
        phi = s.separating_functional(target)
        assert gf2.dot(phi, target) == 1
        assert all(gf2.dot(phi, r) == 0 for r in rows)


def test_linear_system_width_check():
    ls = gf2.LinearSystem(columns=["a", "b"])
    ls.add_row(0b11)
    ls.add_row(0)
    assert ls.rows == [0b11] and ls.rank() == 1
    assert ls.kernel() == [0b11]
    with pytest.raises(ValueError):
        ls.add_row(0b100)


@settings(max_examples=50, deadline=None)
@given(rows_st)
def test_dense_agrees_with_bitpacked_over_gf2(data):
    w, rows = data
    lists = [[r >> j & 1 for j in range(w)] for r in rows]
    assert dense.rank(lists, GF2) == gf2.rank(rows)


@pytest.mark.parametrize("k", [4, 8])
def test_dense_kernel_over_extension(k):
    f = make_field(k)
    rng = np.random.default_rng(k)
    A = [[int(a) for a in rng.integers(0, f.order, size=7)] for _ in range(4)]
    K = dense.kernel(A, 7, f)
    assert len(K) == 7 - dense.rank(A, f)
    for v in K:
        for row in A:
            acc = 0
            for a, b in zip(row, v):
                acc ^= f.mul(a, b)
            assert acc == 0
    Knp = dense.kernel_np(np.array(A), f)
    assert len(Knp) == len(K)
    assert dense.rref([list(map(int, v)) for v in Knp], f) == dense.rref(K, f)
