"""Nested-box construction of well-approximable points on digit-set
products.

Each step pins one coordinate at a rational anchor whose height pushes
the norm value strictly upward, narrows the previously pinned
coordinate until its approximation error clears the decay bound at the
new height, detaches so the old anchor leaves the box permanently, and
finally descends in all coordinates until every low-height rational
hyperplane (per the step's height schedule) is separated from the box.

Every choice below is a deterministic function of the construction
spec: candidate
pins come out of a breadth-first, digit-lexicographic enumeration, and
separation descents pick coordinates and digits by fixed exact-value
rules.  Running the same spec twice yields byte-identical certificates.
"""
from __future__ import annotations

import dataclasses
from fractions import Fraction

from .certificates import (
    AvoidedEntry,
    Certificate,
    ConstructionSpec,
    Step,
    default_avoidance_heights,
)
from .digitsets import Cylinder, rationals_in
from .errors import DepthExhausted, NoRationalFound, SingvecError, UsageError
from .exact import Box
from .hyperplanes import (
    Hyperplane,
    coordinate_hyperplane,
    hyperplanes_meeting,
    interval_linform,
)

# Pins live at most this many levels below the current cylinder; the
# search is breadth-first so in practice the first or second level
# already qualifies, but a hard cap keeps degenerate specs from
# spinning forever.
_PIN_DEPTH_SLACK = 4096


def _box(cyls) -> Box:
    return Box(tuple(c.hull() for c in cyls))


def _pick_pin(cyl: Cylinder, norm, k: int, n: int, prev_phi):
    """First (shallowest, then digit-lexicographic) sub-cylinder whose
    hull sits strictly inside the current hull and whose anchor's
    height strictly raises the norm value.  Returns (p, q, phi, sub)."""
    outer = cyl.hull()
    cap = cyl.depth + _PIN_DEPTH_SLACK
    for anchor, sub in rationals_in(cyl, cyl.depth + 1):
        if sub.depth > cap:
            raise NoRationalFound(
                f"no admissible pin within {_PIN_DEPTH_SLACK} levels "
                f"below depth {cyl.depth} in coordinate {k}",
                cap,
            )
        if not outer.contains_interior(sub.hull()):
            continue
        q = anchor.denominator
        qvec = tuple(q if j == k - 1 else 0 for j in range(n))
        phi = norm.phi(qvec)
        if prev_phi is not None and not phi > prev_phi:
            continue
        return anchor.numerator, q, phi, sub
    raise NoRationalFound(f"pin enumeration exhausted in coordinate {k}", cap)


def _narrow_detach(cyl: Cylinder, p: int, q: int, eps) -> Cylinder:
    """Shrink around the anchor p/q until |q*x - p| < eps holds on the
    whole hull, then step off the anchor (second-smallest digit) and
    take one smallest-digit level so both hull endpoints move strictly
    inward relative to the starting hull."""
    width = cyl.hull().width
    need = q * width  # |q*x - p| <= q*width on [p/q, p/q + width]
    base = cyl.system.base
    levels = 0
    if not need * Fraction(1, base**0) < eps:
        levels = 1
        while not need * Fraction(1, base**levels) < eps:
            levels *= 2
        lo, hi = levels // 2, levels
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if need * Fraction(1, base**mid) < eps:
                hi = mid
            else:
                lo = mid
        levels = hi
    narrowed = cyl.descend_min(levels)
    second = cyl.system.digits[1]
    return narrowed.child(second).descend_min(1)


def _shrink_forced(cyl: Cylinder) -> Cylinder:
    """Second-smallest digit then smallest digit: two levels that move
    both hull endpoints strictly inward for any digit set."""
    return cyl.child(cyl.system.digits[1]).descend_min(1)


def _separate(cyls: list, plane: Hyperplane, pin_k: int, max_depth: int):
    """Descend until the plane's form interval over the box excludes 0.

    The coordinate with the widest hull among those the form actually
    uses is split each level (ties to the smaller index).  On the
    freshly pinned coordinate only the smallest digit is allowed, so
    the pin anchor never leaves the hull; elsewhere the first child
    that already separates wins, otherwise the child pushing the form's
    midpoint farthest from zero.
    """
    used = 0
    while True:
        iv = interval_linform(plane, _box(cyls))
        if not iv.contains(Fraction(0)):
            return used
        if used >= max_depth:
            raise DepthExhausted(
                f"could not separate {plane} within {max_depth} levels", used
            )
        j = max(
            (j for j, c in enumerate(plane.mvec) if c != 0),
            key=lambda j: (cyls[j].hull().width, -j),
        )
        if j == pin_k - 1:
            cyls[j] = cyls[j].child(cyls[j].system.dmin)
        else:
            cyls[j] = _separating_child(cyls, plane, j)
        used += 1


def _separating_child(cyls: list, plane: Hyperplane, j: int) -> Cylinder:
    trial = list(cyls)
    best = None
    best_score = None
    for child in cyls[j].children():
        trial[j] = child
        iv = interval_linform(plane, _box(trial))
        if not iv.contains(Fraction(0)):
            return child
        score = abs(iv.mid)
        if best is None or score > best_score:
            best, best_score = child, score
    return best


def construct(spec: ConstructionSpec) -> Certificate:
    """Run the construction and return its certificate."""
    n = spec.dim
    cyls = [Cylinder.root(f) for f in spec.product.factors]
    steps: list[Step] = []
    avoided: list[AvoidedEntry] = []
    prev_phi = None
    prev_pin = None  # (p, q, k) of the previous step
    k = 1
    for nu in range(1, spec.steps + 1):
        prev_box = _box(cyls)
        p, q, phi, sub = _pick_pin(cyls[k - 1], spec.norm, k, n, prev_phi)
        cyls[k - 1] = sub
        eps = spec.phi.value_at(phi)
        if steps:
            steps[-1] = dataclasses.replace(steps[-1], bound_used=eps)
        if prev_pin is not None:
            pp, pq, pk = prev_pin
            if cyls[pk - 1].anchor() != Fraction(pp, pq):
                raise SingvecError(
                    "internal error: pin anchor drifted before narrowing"
                )
            cyls[pk - 1] = _narrow_detach(cyls[pk - 1], pp, pq, eps)
        for j in range(n):
            if j == k - 1 or (prev_pin is not None and j == prev_pin[2] - 1):
                continue
            cyls[j] = _shrink_forced(cyls[j])
        pin_plane = coordinate_hyperplane(k, Fraction(p, q), n)
        height = spec.avoidance_heights[nu - 1]
        candidates = [
            plane
            for plane in hyperplanes_meeting(n, height, _box(cyls))
            if plane != pin_plane
        ]
        for plane in candidates:
            _separate(cyls, plane, k, spec.max_depth)
            avoided.append(AvoidedEntry(nu, plane))
        box = _box(cyls)
        if not prev_box.contains_interior(box):
            raise SingvecError(
                f"internal error: step {nu} box is not strictly nested"
            )
        steps.append(Step(nu, k, p, q, phi, None, tuple(cyls), box))
        prev_phi = phi
        prev_pin = (p, q, k)
        k = k % n + 1
    return Certificate(spec, tuple(steps), tuple(avoided), steps[-1].box)


def extend_spec(spec: ConstructionSpec, extra_steps: int) -> ConstructionSpec:
    """The same spec with extra steps appended to the schedule.  A
    default schedule keeps following the default rule; a custom one is
    padded with its last height (still non-decreasing)."""
    if extra_steps < 1:
        raise UsageError("extra_steps must be positive")
    total = spec.steps + extra_steps
    if spec.avoidance_heights == default_avoidance_heights(spec.steps):
        heights = default_avoidance_heights(total)
    else:
        heights = spec.avoidance_heights + (
            spec.avoidance_heights[-1],
        ) * extra_steps
    return dataclasses.replace(
        spec, steps=total, avoidance_heights=heights
    )


def refine_point(cert: Certificate, extra_steps: int) -> Certificate:
    """Continue a finished construction for extra_steps more pins.

    The construction is a deterministic function of its construction
    spec, so the
    cheapest faithful continuation is a re-run under the extended spec;
    the old steps must come back verbatim, and that is checked.
    """
    out = construct(extend_spec(cert.spec, extra_steps))
    old = [(s.nu, s.k, s.p, s.q) for s in cert.steps]
    new = [(s.nu, s.k, s.p, s.q) for s in out.steps[: len(old)]]
    if old != new:
        raise SingvecError(
            "internal error: refined run does not extend the original"
        )
    return out
