"""Rational hyperplanes: primitivity, heights, exact form ranges,
bounded enumeration."""
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from singvec import (
    Box,
    Hyperplane,
    NotPrimitive,
    RatInterval,
    ZeroForm,
    coordinate_hyperplane,
    enumerate_hyperplanes,
    hyperplanes_meeting,
    interval_linform,
    make_primitive,
)

F = Fraction


def test_constructor_validates():
    with pytest.raises(ZeroForm):
        Hyperplane(1, (0, 0))
    with pytest.raises(NotPrimitive):
        Hyperplane(2, (4, 6))
    p = Hyperplane(2, (4, 7))
    assert p.dim == 2
    assert p.height() == 7


def test_make_primitive():
    p = make_primitive(4, (-2, -6))
    # gcd 2 divided out, then sign flipped so the lead coefficient is
    # positive
    assert (p.m0, p.mvec) == (-2, (1, 3))
    with pytest.raises(ZeroForm):
        make_primitive(3, (0, 0, 0))


def test_form_at_and_str():
    p = Hyperplane(1, (2, -3))
    assert p.form_at((F(1, 2), F(0))) == 0
    assert p.form_at((1, 1)) == -2
    assert str(p) == "(1; 2,-3)"


def test_coordinate_hyperplane_height_is_denominator():
    p = coordinate_hyperplane(2, F(3, 7), 3)
    assert p.mvec == (0, 7, 0)
    assert p.m0 == 3
    assert p.height() == 7
    assert p.form_at((0, F(3, 7), 0)) == 0
    with pytest.raises(ZeroForm):
        coordinate_hyperplane(4, F(1, 2), 3)


def test_interval_linform_exact_on_box():
    p = Hyperplane(1, (2, -3))
    box = Box((RatInterval(F(0), F(1)), RatInterval(F(0), F(1))))
    iv = interval_linform(p, box)
    # extremes of 2x - 3y - 1 over the unit square
    assert (iv.lo, iv.hi) == (F(-4), F(1))
    with pytest.raises(ZeroForm):
        interval_linform(p, Box((RatInterval(F(0), F(1)),)))


corner_picks = st.lists(st.booleans(), min_size=2, max_size=2)


@given(
    st.integers(-5, 5),
    st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
    corner_picks,
)
def test_interval_linform_attained_at_corners(m0, mvec, picks):
    if all(c == 0 for c in mvec):
        return
    g = math.gcd(m0, *mvec)
    if g != 1:
        return
    p = Hyperplane(m0, mvec)
    box = Box((RatInterval(F(0), F(1, 3)), RatInterval(F(1, 2), F(2))))
    iv = interval_linform(p, box)
    corner = tuple(
        side.hi if pick else side.lo for side, pick in zip(box.sides, picks)
    )
    v = p.form_at(corner)
    assert iv.lo <= v <= iv.hi


def test_enumeration_frozen_counts():
    # height 1, |m0| <= 1 in the plane: 12 primitive forms
    planes = list(enumerate_hyperplanes(2, 1, 1))
    assert len(planes) == 12
    assert len(set(planes)) == 12
    # with constant term forced to zero only the 4 sign-normalized
    # nonzero directions survive
    through_origin = [p for p in planes if p.m0 == 0]
    assert len(through_origin) == 4
    for p in planes:
        assert p.height() <= 1
        assert abs(p.m0) <= 1
        assert math.gcd(p.m0, *p.mvec) == 1
        lead = next(c for c in p.mvec if c != 0)
        assert lead > 0
    with pytest.raises(ZeroForm):
        list(enumerate_hyperplanes(2, 0, 1))


def test_enumeration_is_sorted_and_json_round_trips():
    planes = list(enumerate_hyperplanes(2, 2, 1))
    keys = [(p.mvec, p.m0) for p in planes]
    assert keys == sorted(keys)
    for p in planes[:10]:
        assert Hyperplane.from_json(p.to_json()) == p


def test_hyperplanes_meeting_only_yields_crossers():
    box = Box((RatInterval(F(1, 10), F(2, 10)), RatInterval(F(1, 10), F(2, 10))))
    hit = list(hyperplanes_meeting(2, 3, box))
    assert hit
    for p in hit:
        iv = interval_linform(p, box)
        assert iv.lo <= 0 <= iv.hi
    # and nothing with the same bounds that crosses was skipped
    full = [
        p
        for p in enumerate_hyperplanes(2, 3, 10)
        if interval_linform(p, box).contains(F(0))
    ]
    assert set(hit) == set(full)


def test_hyperplanes_meeting_small_box_misses_far_planes():
    box = Box((RatInterval(F(1, 100), F(2, 100)), RatInterval(F(1, 100), F(2, 100))))
    hit = list(hyperplanes_meeting(2, 1, box))
    # x = 0 style planes do not cross a box separated from the axes
    assert all(p.m0 == 0 for p in hit)
