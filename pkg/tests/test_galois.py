import itertools

import pytest

from negspace.galois import (ELEMENTS, ONE, OMEGA, OMEGA2, POINTS, ZERO, build_striations,
                             gf_add, gf_inv, gf_mul, gf_neg)

from oracles import GF4_ADD, GF4_MUL

E = ELEMENTS


def test_tables_match_hand_tables():
    for a, b in itertools.product(E, E):
        assert gf_add(a, b) == GF4_ADD[a][b]
        assert gf_mul(a, b) == GF4_MUL[a][b]


def test_named_products():
    assert gf_add(ONE, OMEGA) == OMEGA2
    assert gf_mul(OMEGA, OMEGA) == OMEGA2
    assert gf_mul(OMEGA, OMEGA2) == ONE


def test_field_axioms_exhaustive():
    for a, b, c in itertools.product(E, E, E):
        assert gf_add(gf_add(a, b), c) == gf_add(a, gf_add(b, c))
        assert gf_mul(gf_mul(a, b), c) == gf_mul(a, gf_mul(b, c))
        assert gf_mul(a, gf_add(b, c)) == gf_add(gf_mul(a, b), gf_mul(a, c))
    for a, b in itertools.product(E, E):
        assert gf_add(a, b) == gf_add(b, a)
        assert gf_mul(a, b) == gf_mul(b, a)
    for a in E:
        assert gf_add(a, ZERO) == a
        assert gf_mul(a, ONE) == a
        assert gf_add(a, gf_neg(a)) == ZERO
        if a != ZERO:
            assert gf_mul(a, gf_inv(a)) == ONE


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        gf_inv(ZERO)


def test_rejects_non_elements():
    with pytest.raises(ValueError):
        gf_add(4, 0)


def test_twenty_lines_of_four_points():
    s = build_striations()
    assert len(s.striations) == 5
    assert len(s.lines) == 20
    assert all(len(line.points) == 4 for line in s.lines)


def test_each_striation_partitions_the_plane():
    for striation in build_striations().striations:
        covered = [pt for line in striation for pt in line.points]
        assert sorted(covered) == sorted(POINTS)


def test_two_points_share_exactly_one_line():
    lines = build_striations().lines
    for a, b in itertools.combinations(POINTS, 2):
        assert sum(1 for line in lines if a in line and b in line) == 1


def test_nonparallel_lines_meet_once():
    s = build_striations()
    for la, lb in itertools.combinations(s.lines, 2):
        shared = len(la.points & lb.points)
        assert shared == (0 if la.striation == lb.striation else 1)


def test_every_point_on_one_line_per_striation():
    s = build_striations()
    for pt in POINTS:
        through = s.lines_through(pt)
        assert [line.striation for line in through] == [0, 1, 2, 3, 4]
