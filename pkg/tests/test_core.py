from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubecover.core import (
    COEFF_ABOVE_ONE,
    NON_INTEGER_COEFF,
    SUM_BELOW_ONE,
    CapExceeded,
    CubePoint,
    Hyperplane,
    InvalidInput,
    InvalidPoint,
    canonical_masks,
    classify_weight1,
    covered_points,
    format_rational,
    mask_weight,
    parse_rational,
    plane_weight,
    point_weight,
    stability_gap,
    total_weight,
)

F = Fraction


def H(*cs):
    return Hyperplane([F(c) for c in cs])


def harmonic(n):
    return sum(F(1, s) for s in range(1, n + 1))


@pytest.mark.parametrize("n,support,expected", [
    (6, (1, 4), F(1, 30)),
    (3, (1, 2, 3), F(1, 3)),
    (5, (2,), F(1, 5)),
])
def test_point_weight(n, support, expected):
    assert point_weight(CubePoint(n, support)) == expected


def test_origin_and_out_of_range_points_rejected():
    with pytest.raises(InvalidPoint):
        CubePoint(3, ())
    with pytest.raises(InvalidPoint):
        CubePoint(3, (4,))
    with pytest.raises(InvalidPoint):
        mask_weight(3, 0)


@pytest.mark.parametrize("coeffs,expected", [
    ((1, 1), [(1,), (2,)]),
    ((2, -1), [(1, 2)]),
    ((2, 1, 1), [(2,), (3,)]),
    ((0, 0), []),
])
def test_covered_points(coeffs, expected):
    assert [p.support for p in covered_points(H(*coeffs))] == expected


@pytest.mark.parametrize("coeffs,expected", [
    ((1, 1), F(1)),
    ((2, 1, 1), F(2, 3)),
    ((F(1, 2), F(1, 2)), F(1, 2)),
    ((0, 0), F(0)),
])
def test_plane_weight(coeffs, expected):
    assert plane_weight(H(*coeffs)) == expected


def test_classifier_examples():
    v = classify_weight1(H(1, 1, -1, 0, 1))
    assert v.is_weight1 and not v.failed_conditions
    assert classify_weight1(H(2, 1, 1)).failed_conditions == {COEFF_ABOVE_ONE}
    assert classify_weight1(H(F(1, 2), F(1, 2))).failed_conditions == {NON_INTEGER_COEFF}
    assert classify_weight1(H(0, 0)).failed_conditions == {SUM_BELOW_ONE}
    assert classify_weight1(H(F(3, 2), -2)).failed_conditions == {
        COEFF_ABOVE_ONE, SUM_BELOW_ONE, NON_INTEGER_COEFF}


@pytest.mark.parametrize("coeffs,expected", [
    ((1, 1, 1, 0, -1, -1), F(0)),
    ((2, 1, 1), F(1, 3)),
    ((0, 0), F(1)),
])
def test_stability_gap(coeffs, expected):
    assert stability_gap(H(*coeffs)) == expected


def test_canonical_order_small():
    # {1},{2},{3},{1,2},{1,3},{2,3},{1,2,3}
    assert canonical_masks(3) == (1, 2, 4, 3, 5, 6, 7)
    with pytest.raises(CapExceeded):
        canonical_masks(21)


def test_parse_rational_grammar():
    assert parse_rational("-3/2") == F(-3, 2)
    assert parse_rational("+4") == 4
    assert parse_rational(" 6/4 ") == F(3, 2)
    for bad in ["", "1.5", "1/", "/2", "1/0", "a", "1/-2", "--1", "1e3"]:
        with pytest.raises(InvalidInput):
            parse_rational(bad)
    assert format_rational(F(-6, 4)) == "-3/2"


def test_hyperplane_equality_and_parse():
    assert Hyperplane.parse("1, -1/2 0") == H(1, F(-1, 2), 0)
    assert H(1, 2) != H(2, 1)
    assert str(H(1, F(-1, 2))) == "1 -1/2"
    with pytest.raises(InvalidInput):
        Hyperplane([])
    with pytest.raises(InvalidInput):
        Hyperplane([1] * 21)


@pytest.mark.parametrize("n", range(1, 11))
def test_total_weight_is_harmonic(n):
    assert total_weight(n) == harmonic(n)


def test_weight_per_layer_is_one_over_t():
    # Each layer of t-subsets carries total weight 1/t.
    n = 7
    for t in range(1, n + 1):
        assert comb(n, t) * point_weight(CubePoint(n, tuple(range(1, t + 1)))) == F(1, t)


rationals = st.fractions(min_value=-4, max_value=3, max_denominator=4)
small_ints = st.integers(min_value=-5, max_value=1).map(F)
coeff = st.one_of(rationals, small_ints)


@st.composite
def planes(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    return Hyperplane(draw(st.lists(coeff, min_size=n, max_size=n)))


@given(planes())
def test_covered_points_match_direct_membership(h):
    got = {p.support for p in covered_points(h)}
    expect = {
        s for t in range(1, h.n + 1) for s in combinations(range(1, h.n + 1), t)
        if sum(h.coeffs[i - 1] for i in s) == 1
    }
    assert got == expect


@given(planes())
def test_weight_at_most_one_and_dichotomy(h):
    w = plane_weight(h)
    assert 0 <= w <= 1
    verdict = classify_weight1(h)
    if verdict.is_weight1:
        assert w == 1
    else:
        assert w <= 1 - F(1, h.n)
    assert verdict.is_weight1 == (not verdict.failed_conditions)


def test_weight_bound_and_dichotomy_population(random_planes):
    checked = 0
    for n, hs in random_planes.items():
        for h in hs:
            w = plane_weight(h)
            assert w <= 1
            if classify_weight1(h).is_weight1:
                assert w == 1
            else:
                assert w <= 1 - F(1, n)
            checked += 1
    assert checked >= 10_000


@pytest.mark.parametrize("n", range(1, 6))
def test_dichotomy_exhaustive_integer_box(n):
    # Every integer vector in a small box, n <= 5.
    from itertools import product
    lo = -2 if n <= 4 else -1
    for cs in product(range(lo, 3), repeat=n):
        h = Hyperplane(cs)
        w = plane_weight(h)
        if classify_weight1(h).is_weight1:
            assert w == 1
        else:
            assert w <= 1 - F(1, n)
