"""Polynomial helpers: exact evaluation, division, Sturm counts,
bisection."""
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from singvec import RatInterval
from singvec.polys import (
    bisect_root,
    count_roots,
    deflate_root,
    poly_add,
    poly_degree,
    poly_deriv,
    poly_divmod,
    poly_eval,
    poly_gcd,
    poly_mul,
    poly_scale,
    poly_trim,
    square_free_part,
    sturm_chain,
)

coeff = st.fractions(
    min_value=Fraction(-20), max_value=Fraction(20), max_denominator=12
)
polys = st.lists(coeff, min_size=1, max_size=6)
points = st.fractions(
    min_value=Fraction(-8), max_value=Fraction(8), max_denominator=16
)

F = Fraction


def fl(*xs):
    return [F(x) for x in xs]


def test_trim_and_degree():
    assert poly_trim(fl(1, 2, 0, 0)) == fl(1, 2)
    assert poly_trim(fl(0, 0)) == []
    assert poly_degree(fl(0)) == -1
    assert poly_degree(fl(5)) == 0
    assert poly_degree(fl(4, -6, 0, 1)) == 3


def test_eval_horner():
    # x^3 - 6x + 4 at 2: 8 - 12 + 4 = 0
    p = fl(4, -6, 0, 1)
    assert poly_eval(p, F(2)) == 0
    assert poly_eval(p, F(0)) == 4
    assert poly_eval(p, F(1, 2)) == F(1, 8) - 3 + 4


@given(polys, polys, points)
def test_ring_identities(p, q, x):
    assert poly_eval(poly_add(p, q), x) == poly_eval(p, x) + poly_eval(q, x)
    assert poly_eval(poly_mul(p, q), x) == poly_eval(p, x) * poly_eval(q, x)
    assert poly_eval(poly_scale(p, F(3)), x) == 3 * poly_eval(p, x)


@given(polys, polys)
def test_divmod_reconstructs(p, d):
    d = poly_trim(d)
    if poly_degree(d) < 0:
        return
    q, r = poly_divmod(p, d)
    assert poly_trim(poly_add(poly_mul(q, d), r)) == poly_trim(p)
    assert poly_degree(r) < poly_degree(d)


def test_deriv():
    assert poly_deriv(fl(4, -6, 0, 1)) == fl(-6, 0, 3)
    assert poly_deriv(fl(7)) == []


def test_gcd_of_common_factor():
    # (x-1)(x-2) and (x-1)(x+3) share exactly (x-1)
    a = poly_mul(fl(-1, 1), fl(-2, 1))
    b = poly_mul(fl(-1, 1), fl(3, 1))
    g = poly_gcd(a, b)
    # monic normalization up to scale: root must be 1
    assert poly_degree(g) == 1
    assert poly_eval(g, F(1)) == 0


def test_square_free_strips_multiplicity():
    # (x-1)^2 (x+2) -> roots {1, -2} each once
    p = poly_mul(poly_mul(fl(-1, 1), fl(-1, 1)), fl(2, 1))
    sf = square_free_part(p)
    assert poly_degree(sf) == 2
    assert poly_eval(sf, F(1)) == 0
    assert poly_eval(sf, F(-2)) == 0


def test_count_roots_frozen():
    # x^2 - 2 has one root in (0, 2] and one in (-2, 0]
    p = fl(-2, 0, 1)
    assert count_roots(p, F(0), F(2)) == 1
    assert count_roots(p, F(-2), F(0)) == 1
    assert count_roots(p, F(-2), F(2)) == 2
    assert count_roots(p, F(2), F(3)) == 0
    # multiple root counted once
    sq = poly_mul(fl(-1, 1), fl(-1, 1))
    assert count_roots(sq, F(0), F(2)) == 1


def test_sturm_chain_endpoints():
    chain = sturm_chain(fl(-2, 0, 1))
    assert chain[0] == fl(-2, 0, 1)
    assert chain[1] == fl(0, 2)
    assert all(poly_degree(c) >= 0 for c in chain)


def test_deflate_root_exact():
    p = fl(4, -6, 0, 1)  # root at 2
    q = deflate_root(p, F(2))
    assert q == fl(-2, 2, 1)
    assert poly_eval(q, F(2)) != 0  # simple root fully removed
    with pytest.raises(ValueError):
        deflate_root(p, F(1))


def test_bisect_root_converges():
    p = fl(-2, 0, 1)
    out = bisect_root(p, RatInterval(F(1), F(2)), F(1, 10**12))
    assert out.width <= F(1, 10**12)
    assert poly_eval(p, out.lo) < 0 < poly_eval(p, out.hi)


def test_bisect_root_exact_hit_collapses():
    p = fl(-1, 0, 1)  # roots at +-1; midpoint of [0, 2] is the root
    out = bisect_root(p, RatInterval(F(0), F(2)), F(1, 4))
    assert out.lo == out.hi == 1


def test_bisect_root_needs_sign_change():
    with pytest.raises(ValueError):
        bisect_root(fl(1, 0, 1), RatInterval(F(0), F(1)), F(1, 8))


@given(
    st.fractions(min_value=F(-5), max_value=F(5), max_denominator=8),
    st.fractions(min_value=F(-5), max_value=F(5), max_denominator=8),
)
def test_deflate_then_eval_agrees(r, x):
    # p = (x - r) * (x^2 + 1); deflating r recovers the cofactor
    p = poly_mul([-r, F(1)], fl(1, 0, 1))
    q = deflate_root(p, r)
    assert poly_eval(q, x) == x * x + 1
