import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arithdyn.errors import ParseError
from arithdyn.heights import (AffinePoint, ProjPoint, enumerate_bounded_height,
                              format_point, h_plus, max_coordinate_for_bound, normalize,
                              parse_point, weil_height)


def test_normalize_examples():
    assert normalize([Fraction(1, 2), 3, 1]) == ProjPoint((1, 6, 2))
    assert normalize([0, 5, 0]) == ProjPoint((0, 1, 0))
    assert normalize([-2, -4]) == ProjPoint((1, 2))


def test_normalize_rejects_zero():
    with pytest.raises(ValueError):
        normalize([0, 0, 0])


def test_projpoint_requires_canonical_form():
    with pytest.raises(ValueError):
        ProjPoint((2, 4))
    with pytest.raises(ValueError):
        ProjPoint((-1, 2))


def test_weil_height_examples():
    assert weil_height(ProjPoint((2, 3, 5))) == (5, math.log(5))
    assert weil_height(ProjPoint((1, 0))).log == 0
    assert weil_height(normalize([Fraction(1, 2), 3])).max_coordinate == 6


def test_h_plus_examples():
    assert h_plus(ProjPoint((1, 0))) == 1
    assert h_plus(ProjPoint((2, 3, 5))) == math.log(5)
    assert h_plus(ProjPoint((1, 2))) == 1


def test_affine_height_uses_closure():
    P = AffinePoint((Fraction(1, 2), Fraction(-3, 4)))
    assert P.closure() == ProjPoint((2, -3, 4))
    assert weil_height(P).max_coordinate == 4


nonzero_rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30).filter(bool)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.fractions(-50, 50, max_denominator=30), min_size=2, max_size=4)
       .filter(any), nonzero_rationals)
def test_height_projective_invariance(v, lam):
    assert weil_height(normalize([lam * x for x in v])) == weil_height(normalize(v))


def test_enumeration_examples():
    pts = list(enumerate_bounded_height(1, math.log(2), "affine"))
    vals = {p.coords[0] for p in pts}
    assert len(pts) == 7
    assert vals == {0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2)}
    proj = list(enumerate_bounded_height(1, 0, "projective"))
    assert set(proj) == {ProjPoint((0, 1)), ProjPoint((1, 0)), ProjPoint((1, 1)),
                         ProjPoint((1, -1))}
    assert list(enumerate_bounded_height(2, -0.5)) == []


@pytest.mark.parametrize("M", [1, 2, 3, 7, 20, 50])
def test_affine_count_matches_double_loop(M):
    # [DERIVED] direct count of coprime (a, b), b >= 1, max(|a|, b) <= M
    expected = sum(1 for b in range(1, M + 1) for a in range(-M, M + 1)
                   if math.gcd(a, b) == 1)
    got = list(enumerate_bounded_height(1, math.log(M), "affine"))
    assert len(got) == expected
    assert len(set(got)) == len(got)


def test_projective_p2_enumeration_matches_brute_force():
    M = 4
    brute = set()
    rng = range(-M, M + 1)
    for a in rng:
        for b in rng:
            for c in rng:
                if (a, b, c) != (0, 0, 0):
                    brute.add(normalize([a, b, c]))
    got = list(enumerate_bounded_height(2, math.log(M)))
    assert len(got) == len(set(got))
    assert set(got) == brute


def test_enumeration_order_by_max_coordinate():
    pts = list(enumerate_bounded_height(2, math.log(3)))
    keys = [max(abs(c) for c in p.coords) for p in pts]
    assert keys == sorted(keys)
    assert pts == list(enumerate_bounded_height(2, math.log(3)))


@settings(max_examples=30, deadline=None)
@given(st.floats(0, 2.5), st.floats(0, 1))
def test_enumeration_monotone(B, extra):
    small = set(enumerate_bounded_height(1, B, "affine"))
    big = set(enumerate_bounded_height(1, B + extra, "affine"))
    assert small <= big


def test_max_coordinate_for_bound_is_exact_at_integers():
    for M in (1, 2, 3, 10, 100, 1000, 27182):
        assert max_coordinate_for_bound(math.log(M)) == M
    assert max_coordinate_for_bound(-1) == 0


def test_point_serialization_round_trip():
    for text in ("[1:-6:2]", "(1/2, -3)", "(0, 5)"):
        P = parse_point(text)
        assert parse_point(format_point(P)) == P
    assert parse_point("[2:4:6]") == ProjPoint((1, 2, 3))
    with pytest.raises(ParseError):
        parse_point("(1, x)")
