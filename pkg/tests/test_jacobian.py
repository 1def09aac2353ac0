import pytest

from orthoinv.algebra import make_field
from orthoinv.algebra.variables import coordinate_codes
from orthoinv.invariants import b_inv, q_inv
from orthoinv.invspace import field_coordinates, jacobian_matrix, jacobian_rank, standard_point


def test_three_coordinates_n4():
    coords = [q_inv(1, 4), q_inv(2, 4), b_inv(1, 2, 4)]
    assert jacobian_rank(coords, standard_point(4, 2)) == 3


def test_zero_point_has_rank_zero():
    pt = {c: 0 for c in coordinate_codes(4, 1)}
    assert jacobian_rank([q_inv(1, 4)], pt) == 0


def test_odd_n3_m3():
    coords = field_coordinates(3, 3)
    names = [name for name, _ in coords]
    assert names == ["Q_1", "Q_2", "B_1_2", "B_1_3", "B_2_3", "D_1_2_3"]
    assert jacobian_rank([p for _, p in coords], standard_point(3, 3)) == 6


@pytest.mark.parametrize("n,m", [(2, 2), (4, 2), (4, 4), (4, 5), (3, 3), (5, 5), (6, 3)])
def test_full_rank(n, m):
    coords = [p for _, p in field_coordinates(n, m)]
    assert jacobian_rank(coords, standard_point(n, m)) == len(coords)


def test_coordinate_count():
    # min(m, 2nu) Q's, the B's with a small first index, and D's for the overflow vectors
    nu, m = 2, 5
    coords = field_coordinates(2 * nu + 1, m)
    top = min(m, 2 * nu)
    expected = top + sum(m - i for i in range(1, top + 1)) + (m - 2 * nu)
    assert len(coords) == expected


def test_partials_of_q():
    # d Q / d x_t = y_t, d Q / d y_t = x_t
    pt = standard_point(4, 1)
    row = jacobian_matrix([q_inv(1, 4)], pt)[0]
    assert sum(row) == 1


def test_extension_field_rank_matches():
    f = make_field(4)
    coords = [p for _, p in field_coordinates(4, 4)]
    pt = standard_point(4, 4)
    assert jacobian_rank(coords, pt, f) == jacobian_rank(coords, pt)
