"""Dense rational polynomials with Sturm-chain root counting.

Coefficients are ascending: coeffs[i] multiplies x**i.  Everything is a
plain list of Fractions; no classes, to keep the arithmetic transparent.
The root isolation here backs the algebraic-number descriptors, so the
counting must be exact, not floating point.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exact import RatInterval

Poly = list[Fraction]


def poly_trim(p: Sequence[Fraction]) -> Poly:
    out = list(p)
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_degree(p: Sequence[Fraction]) -> int:
    q = poly_trim(p)
    return len(q) - 1 if q else -1


def poly_eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(list(p)):
        acc = acc * x + c
    return acc


def poly_add(p: Sequence[Fraction], q: Sequence[Fraction]) -> Poly:
    n = max(len(p), len(q))
    return poly_trim(
        [
            (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
            for i in range(n)
        ]
    )


def poly_scale(p: Sequence[Fraction], c: Fraction) -> Poly:
    return poly_trim([c * a for a in p])


def poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> Poly:
    p, q = poly_trim(p), poly_trim(q)
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_trim(out)


def poly_deriv(p: Sequence[Fraction]) -> Poly:
    return poly_trim([Fraction(i) * c for i, c in enumerate(p)][1:])


def poly_divmod(p: Sequence[Fraction], d: Sequence[Fraction]) -> tuple[Poly, Poly]:
    p, d = poly_trim(p), poly_trim(d)
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [Fraction(0)] * max(0, len(p) - len(d) + 1)
    lead = d[-1]
    while len(rem) >= len(d):
        c = rem[-1] / lead
        k = len(rem) - len(d)
        quo[k] = c
        for i, a in enumerate(d):
            rem[k + i] -= c * a
        rem = poly_trim(rem)
        if not rem:
            break
    return poly_trim(quo), rem


def poly_gcd(p: Sequence[Fraction], q: Sequence[Fraction]) -> Poly:
    a, b = poly_trim(p), poly_trim(q)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a:
        a = poly_scale(a, 1 / a[-1])  # monic
    return a


def square_free_part(p: Sequence[Fraction]) -> Poly:
    p = poly_trim(p)
    if poly_degree(p) < 1:
        return list(p)
    g = poly_gcd(p, poly_deriv(p))
    if poly_degree(g) < 1:
        return list(p)
    q, r = poly_divmod(p, g)
    assert not r
    return q


def sturm_chain(p: Sequence[Fraction]) -> list[Poly]:
    """Sturm sequence of the square-free part of p."""
    p0 = square_free_part(p)
    chain = [p0, poly_deriv(p0)]
    while poly_degree(chain[-1]) > 0:
        _, r = poly_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append(poly_scale(r, Fraction(-1)))
    return [c for c in chain if c]


def _sign_changes(chain: list[Poly], x: Fraction) -> int:
    signs = []
    for c in chain:
        v = poly_eval(c, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: Sequence[Fraction], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in the half-open interval (lo, hi]."""
    if lo > hi:
        raise ValueError("lo > hi")
    if lo == hi:
        return 0
    chain = sturm_chain(p)
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


def deflate_root(p: Sequence[Fraction], r: Fraction) -> Poly:
    """Divide out an exact rational root.  Raises if r is not a root."""
    if poly_eval(p, r) != 0:
        raise ValueError(f"{r} is not a root")
    q, rem = poly_divmod(p, [-r, Fraction(1)])
    assert not rem
    return q


def bisect_root(
    p: Sequence[Fraction], bracket: RatInterval, width: Fraction
) -> RatInterval:
    """Shrink a sign-change bracket below the requested width.

    Requires p(lo) and p(hi) to have strict opposite signs; midpoints
    that land exactly on the root collapse the bracket to a point.
    """
    lo, hi = bracket.lo, bracket.hi
    flo = poly_eval(p, lo)
    fhi = poly_eval(p, hi)
    if flo == 0:
        return RatInterval(lo, lo)
    if fhi == 0:
        return RatInterval(hi, hi)
    if (flo > 0) == (fhi > 0):
        raise ValueError("no sign change over bracket")
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = poly_eval(p, mid)
        if fm == 0:
            return RatInterval(mid, mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return RatInterval(lo, hi)
