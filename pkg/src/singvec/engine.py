"""Minimal integer-form distances under height cutoffs.

The central quantity: given a norm-like height Phi on integer vectors
and a real target vector xi, the function psi(t) is the smallest
nearest-integer distance of the dot product q . xi over nonzero integer
q with Phi(q) <= t.  Everything else in the module is built around
evaluating psi exactly (rational targets), enclosing it rigorously
(algebraic targets), walking its record thresholds, and scanning
weighted variants over affine families.

Rational targets go through modular arithmetic on a common denominator,
so results are exact.  Irrational targets go through fixed-point
integer enclosures whose precision doubles until the comparison at hand
is decided; if 4096 bits cannot decide it, PrecisionExhausted is raised
rather than ever guessing.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .bounds import badness_exponent
from .errors import (
    DegenerateRecord,
    EmptyRange,
    PrecisionExhausted,
    UsageError,
)
from .exact import RatInterval, nearest_int_dist, rat_str
from .powers import PowerValue
from .realdesc import (
    ExactReal,
    LinearCombinationReal,
    ProductReal,
    RealDescriptor,
    parse_real,
)

_START_BITS = 64
_MAX_BITS = 4096
_DEFAULT_TOL = Fraction(1, 10**30)


# -- heights -----------------------------------------------------------


@dataclass(frozen=True)
class NormSpec:
    """Height function on integer vectors: either the sup norm, or the
    weighted variant (max_j |q_j|**(1/s_j))**(1/n) for positive rational
    weights s summing to 1.  Both are max-type, so the sublevel set
    {Phi(q) <= t} is an axis-aligned box with exactly computable
    integer caps."""

    kind: str
    weights: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.kind == "sup":
            if self.weights is not None:
                raise UsageError("sup norm takes no weights")
            return
        if self.kind != "weighted":
            raise UsageError(f"unknown norm kind: {self.kind!r}")
        if not self.weights:
            raise UsageError("weighted norm needs weights")
        ws = tuple(Fraction(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if any(not 0 < w < 1 for w in ws):
            raise UsageError("weights must lie strictly between 0 and 1")
        if sum(ws) != 1:
            raise UsageError("weights must sum to 1")

    def check_dim(self, n: int) -> None:
        if self.kind == "weighted" and len(self.weights) != n:
            raise UsageError(
                f"norm has {len(self.weights)} weights but vectors have "
                f"{n} coordinates"
            )

    def coordinate_caps(self, t: Fraction, n: int) -> tuple[int, ...]:
        """Per-coordinate bound T_j such that Phi(q) <= t iff
        |q_j| <= T_j for every j."""
        t = Fraction(t)
        if t <= 0:
            return (0,) * n
        if self.kind == "sup":
            cap = t.numerator // t.denominator
            return (cap,) * n
        self.check_dim(n)
        return tuple(power_floor(t, n * s) for s in self.weights)

    def phi(self, q: Sequence[int]) -> PowerValue:
        """Height of a nonzero integer vector, exact."""
        if all(c == 0 for c in q):
            raise UsageError("height of the zero vector is undefined")
        if self.kind == "sup":
            return PowerValue(max(abs(c) for c in q))
        self.check_dim(len(q))
        best: PowerValue | None = None
        for c, s in zip(q, self.weights):
            if c == 0:
                continue
            v = PowerValue(abs(c), Fraction(s.denominator, s.numerator))
            if best is None or v > best:
                best = v
        assert best is not None
        return best.pow(Fraction(1, len(q)))

    def label(self) -> str:
        if self.kind == "sup":
            return "sup"
        return "weighted:" + ",".join(rat_str(w) for w in self.weights)

    def to_json(self) -> dict:
        if self.kind == "sup":
            return {"kind": "sup"}
        return {"kind": "weighted", "weights": [rat_str(w) for w in self.weights]}

    @staticmethod
    def from_json(obj: dict) -> "NormSpec":
        if obj.get("kind") == "sup":
            return NormSpec("sup")
        if obj.get("kind") == "weighted":
            return NormSpec(
                "weighted", tuple(Fraction(w) for w in obj["weights"])
            )
        raise UsageError(f"unknown norm kind: {obj.get('kind')!r}")

    @staticmethod
    def parse(text: str) -> "NormSpec":
        text = text.strip()
        if text == "sup":
            return NormSpec("sup")
        if text.startswith("weighted:"):
            parts = text[len("weighted:"):].split(",")
            return NormSpec("weighted", tuple(Fraction(p) for p in parts))
        raise UsageError(f"cannot parse norm: {text!r}")


SUP_NORM = NormSpec("sup")


def power_floor(t: Fraction, e: Fraction) -> int:
    """Largest integer m >= 0 with m <= t**e, decided by exact
    cross-powering (never by evaluating t**e itself)."""
    t = Fraction(t)
    e = Fraction(e)
    if e <= 0:
        raise UsageError("exponent must be positive")
    if t <= 0:
        return 0
    num, den = e.numerator, e.denominator
    big_p = t.numerator**num
    big_r = t.denominator**num
    # m <= t**e  <=>  m**den * big_r <= big_p
    if big_r > big_p:
        return 0
    lo, hi = 1, 2
    while hi**den * big_r <= big_p:
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**den * big_r <= big_p:
            lo = mid
        else:
            hi = mid
    return lo


# -- candidate vectors -------------------------------------------------


def witness_key(q: Sequence[int]) -> tuple:
    """Deterministic tie-break order on integer vectors: compare
    coordinatewise by absolute value, nonnegative before negative."""
    return tuple((abs(c), 0 if c >= 0 else 1) for c in q)


def signed_box(caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All nonzero integer vectors with |q_j| <= caps[j], one
    representative per antipodal pair (first nonzero coordinate
    positive)."""
    n = len(caps)
    q = [0] * n

    def rec(j: int, lead: bool) -> Iterator[tuple[int, ...]]:
        if j == n:
            if not lead:
                yield tuple(q)
            return
        cap = caps[j]
        if lead:
            q[j] = 0
            yield from rec(j + 1, True)
            for v in range(1, cap + 1):
                q[j] = v
                yield from rec(j + 1, False)
        else:
            for v in range(-cap, cap + 1):
                q[j] = v
                yield from rec(j + 1, False)
        q[j] = 0

    yield from rec(0, True)


def as_descriptor(x) -> RealDescriptor:
    if isinstance(x, RealDescriptor):
        return x
    if isinstance(x, str):
        return parse_real(x)
    return ExactReal(Fraction(x))


# -- scaled-integer distance intervals ---------------------------------


def _dist_scaled(lo: int, hi: int, scale: int) -> tuple[int, int]:
    """Given integer bounds on scale*x, return integer bounds on
    scale*<x> where <x> is the nearest-integer distance.  Exact interval
    arithmetic on the periodic tent function."""
    span = hi - lo
    half = scale >> 1
    if span >= scale:
        return 0, half
    r = lo % scale
    rhi = r + span  # < 2*scale
    if r == 0 or rhi >= scale:
        dlo = 0
    else:
        dlo = r if r <= scale - rhi else scale - rhi
    if r <= half <= rhi or rhi >= scale + half:
        dhi = half
    else:
        da = r if 2 * r <= scale else scale - r
        rb = rhi if rhi < scale else rhi - scale
        db = rb if 2 * rb <= scale else scale - rb
        dhi = da if da >= db else db
    return dlo, dhi


def _scaled_pairs(
    descs: Sequence[RealDescriptor],
    vals: Sequence[Fraction | None],
    bits: int,
) -> list[tuple[int, int]]:
    """Integer enclosures (A, B) with A <= 2**bits * x_j <= B."""
    scale = 1 << bits
    width = Fraction(1, scale)
    out = []
    for d, v in zip(descs, vals):
        if v is not None:
            lo = hi = v
        else:
            iv = d.enclose(width)
            lo, hi = iv.lo, iv.hi
        a = (lo.numerator * scale) // lo.denominator
        b = -((-hi.numerator * scale) // hi.denominator)
        out.append((a, b))
    return out


def _dot_interval(q: Sequence[int], pairs: Sequence[tuple[int, int]]) -> tuple[int, int]:
    lo = hi = 0
    for c, (a, b) in zip(q, pairs):
        if c > 0:
            lo += c * a
            hi += c * b
        elif c < 0:
            lo += c * b
            hi += c * a
    return lo, hi


# -- psi ---------------------------------------------------------------


def psi(
    norm: NormSpec, xi, t, tol=None
) -> tuple[RatInterval, tuple[int, ...]]:
    """Smallest nearest-integer distance of q . xi over nonzero integer
    q with norm height at most t, together with a minimizing q.

    Rational targets give a point interval and the exact minimizer (ties
    broken by witness_key).  Irrational targets give an enclosure; the
    refinement stops once the minimizer is unique, or once the enclosure
    width drops below tol when one is supplied.
    """
    t = Fraction(t)
    descs = [as_descriptor(x) for x in xi]
    n = len(descs)
    if n < 1:
        raise UsageError("target vector must have at least one coordinate")
    norm.check_dim(n)
    caps = norm.coordinate_caps(t, n)
    if all(c == 0 for c in caps):
        raise EmptyRange(f"no nonzero integer vector has height <= {t}")
    vals = [d.exact_value() for d in descs]
    if all(v is not None for v in vals):
        dist, q = _min_dist_exact(caps, vals)
        return RatInterval(dist, dist), q
    return _min_dist_interval(descs, vals, caps, tol)


def _min_dist_exact(
    caps: Sequence[int], vals: Sequence[Fraction]
) -> tuple[Fraction, tuple[int, ...]]:
    den = math.lcm(*(v.denominator for v in vals))
    nums = [v.numerator * (den // v.denominator) % den for v in vals]
    best_n = None
    best_key = None
    best_q = None
    for q in signed_box(caps):
        acc = 0
        for c, a in zip(q, nums):
            acc += c * a
        r = acc % den
        dn = r if 2 * r <= den else den - r
        if best_n is None or dn < best_n:
            best_n, best_key, best_q = dn, witness_key(q), q
        elif dn == best_n:
            k = witness_key(q)
            if k < best_key:
                best_key, best_q = k, q
    assert best_q is not None
    return Fraction(best_n, den), best_q


def _min_dist_interval(
    descs: Sequence[RealDescriptor],
    vals: Sequence[Fraction | None],
    caps: Sequence[int],
    tol,
) -> tuple[RatInterval, tuple[int, ...]]:
    # Exact zero is only certifiable on the rational coordinates, so
    # scan candidates supported there first.
    zero_caps = [c if v is not None else 0 for c, v in zip(caps, vals)]
    if any(zero_caps):
        exact_vals = [v if v is not None else Fraction(0) for v in vals]
        zero_key = None
        zero_q = None
        for q in signed_box(zero_caps):
            acc = Fraction(0)
            for c, v in zip(q, exact_vals):
                if c:
                    acc += c * v
            if nearest_int_dist(acc) == 0:
                k = witness_key(q)
                if zero_key is None or k < zero_key:
                    zero_key, zero_q = k, q
        if zero_q is not None:
            return RatInterval(Fraction(0), Fraction(0)), zero_q

    early_unique = tol is None
    tol = _DEFAULT_TOL if tol is None else Fraction(tol)
    bits = _START_BITS
    while bits <= _MAX_BITS:
        scale = 1 << bits
        pairs = _scaled_pairs(descs, vals, bits)
        min_hi = None
        min_lo = None
        for q in signed_box(caps):
            lo, hi = _dot_interval(q, pairs)
            dlo, dhi = _dist_scaled(lo, hi, scale)
            if min_hi is None or dhi < min_hi:
                min_hi = dhi
            if min_lo is None or dlo < min_lo:
                min_lo = dlo
        count = 0
        best_key = None
        best_q = None
        for q in signed_box(caps):
            lo, hi = _dot_interval(q, pairs)
            dlo, _ = _dist_scaled(lo, hi, scale)
            if dlo <= min_hi:
                count += 1
                k = witness_key(q)
                if best_key is None or k < best_key:
                    best_key, best_q = k, q
        narrow = Fraction(min_hi - min_lo, scale) <= tol
        if narrow or (early_unique and count == 1):
            return (
                RatInterval(Fraction(min_lo, scale), Fraction(min_hi, scale)),
                best_q,
            )
        bits *= 2
    raise PrecisionExhausted(
        "could not separate the minimal distance at 4096 bits; "
        "the target may satisfy an exact integer relation"
    )


def psi_enclosure(norm: NormSpec, xi, t, bits: int = 128) -> RatInterval:
    """Sound enclosure of the minimal distance at one fixed working
    precision, skipping witness resolution.

    A single pass over the candidate box: both ends are outer bounds,
    so .hi is always a true upper bound for the value and .lo a true
    lower bound.  Meant for bulk checks (certificate spot checks) where
    the exact scan would grind on huge rational targets.
    """
    t = Fraction(t)
    descs = [as_descriptor(x) for x in xi]
    n = len(descs)
    norm.check_dim(n)
    caps = norm.coordinate_caps(t, n)
    if all(c == 0 for c in caps):
        raise EmptyRange(f"no nonzero integer vector has height <= {t}")
    vals = [d.exact_value() for d in descs]
    scale = 1 << bits
    pairs = _scaled_pairs(descs, vals, bits)
    min_lo = None
    min_hi = None
    for q in signed_box(caps):
        lo, hi = _dot_interval(q, pairs)
        dlo, dhi = _dist_scaled(lo, hi, scale)
        if min_hi is None or dhi < min_hi:
            min_hi = dhi
            if min_hi == 0:
                return RatInterval(Fraction(0), Fraction(0))
        if min_lo is None or dlo < min_lo:
            min_lo = dlo
    return RatInterval(Fraction(min_lo, scale), Fraction(min_hi, scale))


def psi_simultaneous(xi, t, tol=None) -> tuple[RatInterval, int]:
    """Smallest over 1 <= q <= floor(t) of the largest per-coordinate
    nearest-integer distance of q * xi, with the smallest minimizing q.
    """
    t = Fraction(t)
    descs = [as_descriptor(x) for x in xi]
    if not descs:
        raise UsageError("target vector must have at least one coordinate")
    cap = t.numerator // t.denominator if t > 0 else 0
    if cap < 1:
        raise EmptyRange(f"no positive integer is at most {t}")
    vals = [d.exact_value() for d in descs]
    if all(v is not None for v in vals):
        best = None
        best_q = None
        for q in range(1, cap + 1):
            d = max(nearest_int_dist(q * v) for v in vals)
            if best is None or d < best:
                best, best_q = d, q
        return RatInterval(best, best), best_q

    early_unique = tol is None
    tol = _DEFAULT_TOL if tol is None else Fraction(tol)
    bits = _START_BITS
    while bits <= _MAX_BITS:
        scale = 1 << bits
        pairs = _scaled_pairs(descs, vals, bits)
        dists = []
        for q in range(1, cap + 1):
            dlo = dhi = 0
            for a, b in pairs:
                clo, chi = _dist_scaled(q * a, q * b, scale)
                if clo > dlo:
                    dlo = clo
                if chi > dhi:
                    dhi = chi
            dists.append((dlo, dhi))
        min_hi = min(d[1] for d in dists)
        min_lo = min(d[0] for d in dists)
        pool = [q for q, d in enumerate(dists, start=1) if d[0] <= min_hi]
        narrow = Fraction(min_hi - min_lo, scale) <= tol
        if narrow or (early_unique and len(pool) == 1):
            return (
                RatInterval(Fraction(min_lo, scale), Fraction(min_hi, scale)),
                pool[0],
            )
        bits *= 2
    raise PrecisionExhausted(
        "could not separate the simultaneous minimum at 4096 bits"
    )


def dirichlet_check(xi, t, mode: str = "dual") -> bool:
    """Whether the pigeonhole guarantee holds at threshold t:
    psi(t) <= t**(-n) in dual mode, or the simultaneous minimum is at
    most t**(-1/n).  Decided exactly; raises PrecisionExhausted rather
    than ever rounding the comparison."""
    t = Fraction(t)
    if t < 1:
        raise UsageError("threshold must be at least 1")
    descs = [as_descriptor(x) for x in xi]
    n = len(descs)
    if mode == "dual":
        threshold = t ** (-n)
    elif mode == "simultaneous":
        threshold = PowerValue(t, Fraction(-1, n))
    else:
        raise UsageError(f"unknown mode: {mode!r}")
    tol = Fraction(1, 10**12)
    while True:
        if mode == "dual":
            iv, _ = psi(SUP_NORM, descs, t, tol)
        else:
            iv, _ = psi_simultaneous(descs, t, tol)
        if threshold >= iv.hi:
            return True
        if threshold < iv.lo:
            return False
        tol /= 1 << 64  # forces deeper refinement; psi raises when capped


# -- record thresholds -------------------------------------------------


@dataclass(frozen=True)
class RecordEntry:
    """One strict improvement of the running minimum: at height
    `threshold` the distance drops to `value`, attained by `witness`."""

    threshold: PowerValue
    value: RatInterval
    witness: tuple[int, ...]


@dataclass(frozen=True)
class RecordSequence:
    norm: NormSpec
    t_max: Fraction
    entries: tuple[RecordEntry, ...]

    def __post_init__(self):
        for prev, cur in zip(self.entries, self.entries[1:]):
            if not prev.threshold < cur.threshold:
                raise ValueError("record thresholds must strictly increase")
            if not cur.value.hi < prev.value.lo:
                raise ValueError("record values must strictly decrease")


def record_sequence(
    norm: NormSpec, xi, t_max, tol=None
) -> RecordSequence:
    """All thresholds up to t_max where psi strictly improves, each with
    its exact (or rigorously enclosed) new value and a witness."""
    t_max = Fraction(t_max)
    descs = [as_descriptor(x) for x in xi]
    n = len(descs)
    norm.check_dim(n)
    caps = norm.coordinate_caps(t_max, n)
    if all(c == 0 for c in caps):
        raise EmptyRange(f"no nonzero integer vector has height <= {t_max}")
    vals = [d.exact_value() for d in descs]
    if all(v is not None for v in vals):
        entries = _records_exact(norm, caps, vals)
    else:
        entries = _records_interval(norm, descs, vals, caps)
    return RecordSequence(norm, t_max, tuple(entries))


def _sorted_candidates(norm: NormSpec, caps: Sequence[int]):
    """Candidates sorted by (height, witness_key); sup heights sort as
    plain integers to keep big scans cheap."""
    items = []
    if norm.kind == "sup":
        for q in signed_box(caps):
            items.append((max(abs(c) for c in q), witness_key(q), q))
        items.sort(key=lambda it: (it[0], it[1]))
        return [(PowerValue(m), k, q) for m, k, q in items]
    for q in signed_box(caps):
        items.append((norm.phi(q), witness_key(q), q))
    items.sort(key=lambda it: (it[0], it[1]))
    return items


def _records_exact(norm, caps, vals) -> list[RecordEntry]:
    den = math.lcm(*(v.denominator for v in vals))
    nums = [v.numerator * (den // v.denominator) % den for v in vals]
    entries: list[RecordEntry] = []
    best = None
    idx = 0
    items = _sorted_candidates(norm, caps)
    while idx < len(items):
        phi = items[idx][0]
        g_n = None
        g_key = None
        g_q = None
        while idx < len(items) and items[idx][0] == phi:
            _, key, q = items[idx]
            acc = 0
            for c, a in zip(q, nums):
                acc += c * a
            r = acc % den
            dn = r if 2 * r <= den else den - r
            if g_n is None or dn < g_n or (dn == g_n and key < g_key):
                g_n, g_key, g_q = dn, key, q
            idx += 1
        if best is None or g_n < best:
            val = Fraction(g_n, den)
            entries.append(RecordEntry(phi, RatInterval(val, val), g_q))
            best = g_n
    return entries


def _records_interval(norm, descs, vals, caps) -> list[RecordEntry]:
    items = _sorted_candidates(norm, caps)
    bits = _START_BITS
    while bits <= _MAX_BITS:
        scale = 1 << bits
        pairs = _scaled_pairs(descs, vals, bits)
        entries: list[RecordEntry] = []
        cur_lo = None
        cur_hi = None
        ambiguous = False
        idx = 0
        while idx < len(items) and not ambiguous:
            phi = items[idx][0]
            group = []
            while idx < len(items) and items[idx][0] == phi:
                _, key, q = items[idx]
                lo, hi = _dot_interval(q, pairs)
                group.append((_dist_scaled(lo, hi, scale), key, q))
                idx += 1
            g_lo = min(d[0] for d, _, _ in group)
            g_hi = min(d[1] for d, _, _ in group)
            pool = [(k, q) for d, k, q in group if d[0] <= g_hi]
            if cur_lo is not None and g_lo >= cur_hi:
                continue  # certainly no improvement
            if (cur_lo is None or g_hi < cur_lo) and len(pool) == 1:
                entries.append(
                    RecordEntry(
                        phi,
                        RatInterval(
                            Fraction(g_lo, scale), Fraction(g_hi, scale)
                        ),
                        pool[0][1],
                    )
                )
                cur_lo, cur_hi = g_lo, g_hi
            else:
                ambiguous = True
        if not ambiguous:
            return entries
        bits *= 2
    raise PrecisionExhausted(
        "record comparison undecidable at 4096 bits; two candidate "
        "distances may coincide exactly"
    )


def exponent_estimate(seq: RecordSequence) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Decay-rate estimate from a record ledger: for consecutive records
    the slope -log(value_k) / log(threshold_{k+1}), and the minimum of
    those slopes.  Slopes are computed in floating point and snapped to
    small rationals; they are estimates, not certified bounds."""
    entries = seq.entries
    if len(entries) < 2:
        raise UsageError("need at least two records to estimate an exponent")
    if any(e.value.lo <= 0 for e in entries):
        raise DegenerateRecord(
            "a record value enclosure touches zero; the decay exponent "
            "is not finite"
        )
    slopes = []
    for cur, nxt in zip(entries, entries[1:]):
        v = cur.value.hi
        num = math.log(v.numerator) - math.log(v.denominator)
        slope = -num / nxt.threshold.log_float()
        slopes.append(Fraction(slope).limit_denominator(10**12))
    return min(slopes), tuple(slopes)


# -- affine families ---------------------------------------------------


@dataclass(frozen=True)
class AffineSubspaceSpec:
    """The affine family x -> (x, shift + matrix . x) in n coordinates,
    where x ranges over s-dimensional parameter space.  shift has one
    entry per dependent coordinate; matrix is (n-s) rows of s entries.
    """

    shift: tuple[RealDescriptor, ...]
    matrix: tuple[tuple[RealDescriptor, ...], ...]

    def __post_init__(self):
        if not self.shift:
            raise UsageError("affine family needs at least one dependent coordinate")
        if len(self.matrix) != len(self.shift):
            raise UsageError("matrix must have one row per dependent coordinate")
        widths = {len(row) for row in self.matrix}
        if len(widths) != 1 or 0 in widths:
            raise UsageError("matrix rows must share one positive length")
        object.__setattr__(
            self, "shift", tuple(as_descriptor(v) for v in self.shift)
        )
        object.__setattr__(
            self,
            "matrix",
            tuple(tuple(as_descriptor(v) for v in row) for row in self.matrix),
        )

    @property
    def subspace_dim(self) -> int:
        return len(self.matrix[0])

    @property
    def ambient_dim(self) -> int:
        return self.subspace_dim + len(self.shift)

    @property
    def exponent(self) -> Fraction:
        return badness_exponent(self.subspace_dim, self.ambient_dim)

    def augmented_rows(self) -> tuple[tuple[RealDescriptor, ...], ...]:
        """Rows of [shift | matrix]; dotted with (q0, q1, ..., qs) they
        give the forms whose fractional parts measure badness."""
        return tuple(
            (self.shift[i],) + tuple(self.matrix[i])
            for i in range(len(self.shift))
        )


def lift_affine(spec: AffineSubspaceSpec, x) -> tuple[RealDescriptor, ...]:
    """The point of the family at parameter x: x itself followed by
    shift + matrix . x, each coordinate as a descriptor."""
    xs = [as_descriptor(v) for v in x]
    if len(xs) != spec.subspace_dim:
        raise UsageError(
            f"parameter needs {spec.subspace_dim} coordinates, got {len(xs)}"
        )
    out: list[RealDescriptor] = list(xs)
    for i, row in enumerate(spec.matrix):
        terms = []
        for entry, part in zip(row, xs):
            ev = entry.exact_value()
            pv = part.exact_value()
            if ev is not None:
                terms.append((ev, part))
            elif pv is not None:
                terms.append((pv, entry))
            else:
                terms.append((Fraction(1), ProductReal(entry, part)))
        sv = spec.shift[i].exact_value()
        if sv is not None:
            out.append(LinearCombinationReal(terms, sv))
        else:
            terms.append((Fraction(1), spec.shift[i]))
            out.append(LinearCombinationReal(terms))
    return tuple(out)


# -- weighted badness scans --------------------------------------------


@dataclass(frozen=True)
class BadnessResult:
    """Enclosure of the scan minimum of ||q||**w * max_i <row_i . q>
    over nonzero |q|_inf <= height_cap, the vector attaining the upper
    end, and the exponent w used."""

    value: RatInterval
    witness: tuple[int, ...]
    exponent: Fraction
    height_cap: int


def _power_table(w: Fraction, cap: int, bits: int) -> tuple[list, list, int]:
    """Integer bounds on m**w, m = 0..cap, at the given scale (scale 1
    and exact values when w is an integer)."""
    if w.denominator == 1:
        e = int(w)
        table = [m**e for m in range(cap + 1)]
        return table, table, 1
    scale = 1 << bits
    los = [0] * (cap + 1)
    his = [0] * (cap + 1)
    for m in range(1, cap + 1):
        los[m], his[m] = PowerValue(m, w).scaled_bounds(bits)
    return los, his, scale


def badness_infimum(
    spec: AffineSubspaceSpec, height_cap: int, bits: int = _START_BITS
) -> BadnessResult:
    """Minimum over nonzero integer q, |q|_inf <= height_cap, of
    ||q||_inf**w * max_i <[shift | matrix]_i . q>, enclosed rigorously.

    If an exact rational candidate lands on the family (distance zero)
    the result is the exact point zero.  Otherwise the enclosure is
    refined until its lower end is positive or 1024 bits are spent,
    and then reported honestly either way."""
    if height_cap < 1:
        raise UsageError("height cap must be at least 1")
    w = spec.exponent
    rows = spec.augmented_rows()
    k = spec.subspace_dim + 1
    exact_rows = [[e.exact_value() for e in row] for row in rows]
    col_exact = [
        all(row[j] is not None for row in exact_rows) for j in range(k)
    ]

    zero_caps = [height_cap if col_exact[j] else 0 for j in range(k)]
    if any(zero_caps):
        z_key = None
        z_q = None
        for q in signed_box(zero_caps):
            hit = True
            for row in exact_rows:
                acc = Fraction(0)
                for c, v in zip(q, row):
                    if c:
                        acc += c * v
                if nearest_int_dist(acc) != 0:
                    hit = False
                    break
            if hit:
                key = witness_key(q)
                if z_key is None or key < z_key:
                    z_key, z_q = key, q
        if z_q is not None:
            zero = RatInterval(Fraction(0), Fraction(0))
            return BadnessResult(zero, z_q, w, height_cap)

    if all(col_exact):
        return _badness_exact(exact_rows, height_cap, w)

    cur = bits
    while True:
        out = _badness_scan(rows, exact_rows, height_cap, w, cur)
        if out.value.lo > 0 or cur >= 1024:
            return out
        cur *= 2


def _weighted_value(dist: Fraction, m: int, w: Fraction):
    if w.denominator == 1:
        return dist * m ** int(w)
    return PowerValue(m, w).mul_fraction(dist)


def _badness_exact(exact_rows, cap: int, w: Fraction) -> BadnessResult:
    best = None
    best_key = None
    best_q = None
    k = len(exact_rows[0])
    for q in signed_box([cap] * k):
        dmax = Fraction(0)
        for row in exact_rows:
            acc = Fraction(0)
            for c, v in zip(q, row):
                if c:
                    acc += c * v
            d = nearest_int_dist(acc)
            if d > dmax:
                dmax = d
        val = _weighted_value(dmax, max(abs(c) for c in q), w)
        key = witness_key(q)
        if best is None or val < best or (val == best and key < best_key):
            best, best_key, best_q = val, key, q
    if isinstance(best, Fraction):
        iv = RatInterval(best, best)
    else:
        f = best.as_fraction()
        iv = RatInterval(f, f) if f is not None else best.enclose(_START_BITS)
    return BadnessResult(iv, best_q, w, cap)


def _badness_scan(rows, exact_rows, cap, w, bits) -> BadnessResult:
    scale = 1 << bits
    row_pairs = [
        _scaled_pairs(row, exact_rows[i], bits) for i, row in enumerate(rows)
    ]
    pw_lo, pw_hi, pw_scale = _power_table(w, cap, bits)
    k = len(rows[0])
    min_lo = None
    min_hi = None
    best_key = None
    best_q = None
    for q in signed_box([cap] * k):
        d_lo = d_hi = 0
        for pairs in row_pairs:
            lo, hi = _dot_interval(q, pairs)
            a, b = _dist_scaled(lo, hi, scale)
            if a > d_lo:
                d_lo = a
            if b > d_hi:
                d_hi = b
        m = max(abs(c) for c in q)
        v_lo = d_lo * pw_lo[m]
        v_hi = d_hi * pw_hi[m]
        if min_lo is None or v_lo < min_lo:
            min_lo = v_lo
        if min_hi is None or v_hi < min_hi:
            min_hi, best_key, best_q = v_hi, witness_key(q), q
        elif v_hi == min_hi:
            key = witness_key(q)
            if key < best_key:
                best_key, best_q = key, q
    total = scale * pw_scale
    iv = RatInterval(Fraction(min_lo, total), Fraction(min_hi, total))
    return BadnessResult(iv, best_q, w, cap)


def simultaneous_badness_min(
    xi, w, height_cap: int, bits: int = _START_BITS
) -> tuple[RatInterval, int]:
    """Minimum over 1 <= q <= height_cap of
    q**w * max_j <q * xi_j>, with the smallest attaining q."""
    if height_cap < 1:
        raise UsageError("height cap must be at least 1")
    w = Fraction(w)
    if w <= 0:
        raise UsageError("exponent must be positive")
    descs = [as_descriptor(v) for v in xi]
    vals = [d.exact_value() for d in descs]
    if all(v is not None for v in vals):
        best = None
        best_q = None
        for q in range(1, height_cap + 1):
            d = max(nearest_int_dist(q * v) for v in vals)
            val = _weighted_value(d, q, w) if d else Fraction(0)
            if best is None or val < best:
                best, best_q = val, q
        if isinstance(best, Fraction):
            iv = RatInterval(best, best)
        else:
            f = best.as_fraction()
            iv = RatInterval(f, f) if f is not None else best.enclose(_START_BITS)
        return iv, best_q

    cur = bits
    while True:
        scale = 1 << cur
        pairs = _scaled_pairs(descs, vals, cur)
        pw_lo, pw_hi, pw_scale = _power_table(w, height_cap, cur)
        min_lo = None
        min_hi = None
        best_q = None
        for q in range(1, height_cap + 1):
            d_lo = d_hi = 0
            for a, b in pairs:
                clo, chi = _dist_scaled(q * a, q * b, scale)
                if clo > d_lo:
                    d_lo = clo
                if chi > d_hi:
                    d_hi = chi
            v_lo = d_lo * pw_lo[q]
            v_hi = d_hi * pw_hi[q]
            if min_lo is None or v_lo < min_lo:
                min_lo = v_lo
            if min_hi is None or v_hi < min_hi:
                min_hi, best_q = v_hi, q
        if min_lo > 0 or cur >= 1024:
            total = scale * pw_scale
            return (
                RatInterval(Fraction(min_lo, total), Fraction(min_hi, total)),
                best_q,
            )
        cur *= 2


def lower_bound_check(
    spec: AffineSubspaceSpec, x, height_cap: int, c
) -> tuple[bool, int | None]:
    """Check <q * xi> >= c * q**(-w) for every 1 <= q <= height_cap,
    where xi is the family point at parameter x and w the family
    exponent.  Returns (True, None) or (False, first failing q)."""
    if height_cap < 1:
        raise UsageError("height cap must be at least 1")
    c = Fraction(c)
    if c <= 0:
        raise UsageError("the constant must be positive")
    w = spec.exponent
    xi = lift_affine(spec, x)
    vals = [d.exact_value() for d in xi]

    def threshold(q: int):
        if w.denominator == 1:
            return c / Fraction(q) ** int(w)
        return PowerValue(q, -w).mul_fraction(c)

    if all(v is not None for v in vals):
        for q in range(1, height_cap + 1):
            d = max(nearest_int_dist(q * v) for v in vals)
            thr = threshold(q)
            ok = d >= thr if isinstance(thr, Fraction) else thr <= d
            if not ok:
                return False, q
        return True, None

    pending = list(range(1, height_cap + 1))
    bits = _START_BITS
    while pending:
        if bits > _MAX_BITS:
            raise PrecisionExhausted(
                f"bound comparison undecidable at 4096 bits for q={pending[0]}"
            )
        scale = 1 << bits
        pairs = _scaled_pairs(xi, vals, bits)
        still = []
        for q in pending:
            d_lo = d_hi = 0
            for a, b in pairs:
                clo, chi = _dist_scaled(q * a, q * b, scale)
                if clo > d_lo:
                    d_lo = clo
                if chi > d_hi:
                    d_hi = chi
            thr = threshold(q)
            f_lo = Fraction(d_lo, scale)
            f_hi = Fraction(d_hi, scale)
            holds = f_lo >= thr if isinstance(thr, Fraction) else thr <= f_lo
            fails = f_hi < thr if isinstance(thr, Fraction) else thr > f_hi
            if holds:
                continue
            if fails:
                return False, q
            still.append(q)
        pending = still
        bits *= 2
    return True, None


# -- randomized pigeonhole suite ---------------------------------------


@dataclass(frozen=True)
class SuiteReport:
    vectors: int
    t_max: int
    dual_violations: tuple
    simultaneous_violations: tuple

    @property
    def ok(self) -> bool:
        return not self.dual_violations and not self.simultaneous_violations


def _dual_staircase(nums: Sequence[int], den: int, cap: int) -> list[int]:
    """best[m] = smallest distance numerator (over common denominator
    den) among nonzero q with |q|_inf = m, m = 1..cap.  Sentinel den
    marks empty shells."""
    n = len(nums)
    best = [den] * (cap + 1)
    if n == 2:
        a1, a2 = nums
        for q1 in range(cap + 1):
            b1 = q1 * a1 % den
            lo2 = -cap if q1 else 1
            for q2 in range(lo2, cap + 1):
                r = (b1 + q2 * a2) % den
                dn = r if 2 * r <= den else den - r
                aq2 = -q2 if q2 < 0 else q2
                m = q1 if q1 >= aq2 else aq2
                if dn < best[m]:
                    best[m] = dn
        return best
    if n == 3:
        a1, a2, a3 = nums
        for q1 in range(cap + 1):
            b1 = q1 * a1 % den
            lo2 = -cap if q1 else 0
            for q2 in range(lo2, cap + 1):
                b2 = (b1 + q2 * a2) % den
                aq2 = -q2 if q2 < 0 else q2
                m12 = q1 if q1 >= aq2 else aq2
                lo3 = -cap if (q1 or q2) else 1
                for q3 in range(lo3, cap + 1):
                    r = (b2 + q3 * a3) % den
                    dn = r if 2 * r <= den else den - r
                    aq3 = -q3 if q3 < 0 else q3
                    m = m12 if m12 >= aq3 else aq3
                    if dn < best[m]:
                        best[m] = dn
        return best
    for q in signed_box([cap] * n):
        acc = 0
        for c, a in zip(q, nums):
            acc += c * a
        r = acc % den
        dn = r if 2 * r <= den else den - r
        m = max(abs(c) for c in q)
        if dn < best[m]:
            best[m] = dn
    return best


def dirichlet_suite(
    count: int = 100,
    dims: Sequence[int] = (2, 3),
    t_max: int = 50,
    seed: int = 20260819,
) -> SuiteReport:
    """Pigeonhole stress test: `count` seeded pseudo-random rational
    targets, every integer threshold up to t_max, both the dual and the
    simultaneous inequality, all checked exactly."""
    if count < 1 or t_max < 1:
        raise UsageError("count and t_max must be positive")
    rng = random.Random(seed)
    dual_bad = []
    sim_bad = []
    for idx in range(count):
        n = dims[idx % len(dims)]
        den = rng.randrange(11, 1000)
        nums = [rng.randrange(0, den) for _ in range(n)]
        best = _dual_staircase(nums, den, t_max)
        run = den
        for t in range(1, t_max + 1):
            if best[t] < run:
                run = best[t]
            if run * t**n > den:
                dual_bad.append(
                    {"vector": idx, "t": t, "num": run, "den": den, "n": n}
                )
        run = den
        big_d = den**n
        for q in range(1, t_max + 1):
            mx = 0
            for a in nums:
                r = q * a % den
                dn = r if 2 * r <= den else den - r
                if dn > mx:
                    mx = dn
            if mx < run:
                run = mx
            if run**n * q > big_d:
                sim_bad.append(
                    {"vector": idx, "t": q, "num": run, "den": den, "n": n}
                )
    return SuiteReport(count, t_max, tuple(dual_bad), tuple(sim_bad))
