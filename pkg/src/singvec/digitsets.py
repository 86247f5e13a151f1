"""Digit-restricted subsets of the real line and their cylinder tree.

A DigitSystem fixes a base b and an allowed digit set D of size >= 2;
the point set is S = {offset + scale * sum d_i b^-i : d_i in D}.  The
middle-thirds set is base 3 with digits {0, 2}.  A Cylinder is the set
of points sharing a finite digit prefix; its hull is a closed rational
interval and its anchor (the all-minimum-digit tail point) is a rational
member of S.  Anchors of deeper and deeper cylinders supply the dense
rationals that the pinning construction consumes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Iterator

from .errors import UsageError
from .exact import Box, RatInterval, rat, rat_str


@dataclass(frozen=True)
class DigitSystem:
    base: int
    digits: tuple[int, ...]
    offset: Fraction = Fraction(0)
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        if self.base < 2:
            raise UsageError("base must be at least 2")
        digits = tuple(sorted(set(self.digits)))
        object.__setattr__(self, "digits", digits)
        if len(digits) < 2:
            raise UsageError("need at least 2 allowed digits (perfectness)")
        if digits[0] < 0 or digits[-1] >= self.base:
            raise UsageError("digits must lie in 0..base-1")
        object.__setattr__(self, "offset", Fraction(self.offset))
        object.__setattr__(self, "scale", Fraction(self.scale))
        if self.scale <= 0:
            raise UsageError("scale must be positive")

    @property
    def dmin(self) -> int:
        return self.digits[0]

    @property
    def dmax(self) -> int:
        return self.digits[-1]

    def hull(self) -> RatInterval:
        span = Fraction(1, self.base - 1)
        return RatInterval(
            self.offset + self.scale * self.dmin * span,
            self.offset + self.scale * self.dmax * span,
        )

    def to_json(self) -> dict:
        return {
            "base": self.base,
            "digits": list(self.digits),
            "offset": rat_str(self.offset),
            "scale": rat_str(self.scale),
        }

    @staticmethod
    def from_json(obj: dict) -> "DigitSystem":
        return DigitSystem(
            int(obj["base"]),
            tuple(int(d) for d in obj["digits"]),
            rat(str(obj.get("offset", "0"))),
            rat(str(obj.get("scale", "1"))),
        )

    @staticmethod
    def digits_str(base: int, digits: tuple[int, ...]) -> str:
        if base <= 10:
            return "".join(str(d) for d in digits)
        return ",".join(str(d) for d in digits)

    @staticmethod
    def parse_digits(base: int, text: str) -> tuple[int, ...]:
        text = text.strip()
        if not text:
            return ()
        if "," in text:
            return tuple(int(x) for x in text.split(","))
        if base > 10:
            return (int(text),)
        return tuple(int(ch) for ch in text)


class Cylinder:
    """Points of a digit system sharing a fixed finite prefix.

    prefix_value and unit are cached so a child costs O(1) arithmetic
    regardless of depth; deep descents do not re-scan the prefix.
    """

    __slots__ = ("system", "prefix", "prefix_value", "unit")

    def __init__(self, system: DigitSystem, prefix=(), _value=None, _unit=None):
        self.system = system
        self.prefix = tuple(prefix)
        if _value is not None:
            self.prefix_value = _value
            self.unit = _unit
            return
        bad = [d for d in self.prefix if d not in system.digits]
        if bad:
            raise UsageError(f"digits {bad} are not allowed in this system")
        # Integer Horner pass, then one Fraction: linear in the prefix
        # length even for prefixes tens of thousands of digits deep.
        b = system.base
        acc = 0
        for d in self.prefix:
            acc = acc * b + d
        denom = b ** len(self.prefix)
        self.prefix_value = system.offset + system.scale * Fraction(acc, denom)
        self.unit = system.scale * Fraction(1, denom)

    @classmethod
    def root(cls, system: DigitSystem) -> "Cylinder":
        return cls(system, ())

    @property
    def depth(self) -> int:
        return len(self.prefix)

    def child(self, digit: int) -> "Cylinder":
        if digit not in self.system.digits:
            raise UsageError(f"digit {digit} not allowed")
        b = self.system.base
        return Cylinder(
            self.system,
            self.prefix + (digit,),
            _value=self.prefix_value + self.unit * Fraction(digit, b),
            _unit=self.unit / b,
        )

    def children(self) -> list["Cylinder"]:
        return [self.child(d) for d in self.system.digits]

    def extend(self, digits) -> "Cylinder":
        cyl = self
        for d in digits:
            cyl = cyl.child(d)
        return cyl

    def descend_min(self, levels: int) -> "Cylinder":
        """Follow the smallest digit `levels` times, in O(1) arithmetic.

        Keeps the anchor fixed: the hull's low endpoint does not move.
        """
        if levels <= 0:
            return self
        sysm = self.system
        b, dmin = sysm.base, sysm.dmin
        bump = self.unit * dmin * Fraction(b**levels - 1, b**levels * (b - 1))
        return Cylinder(
            sysm,
            self.prefix + (dmin,) * levels,
            _value=self.prefix_value + bump,
            _unit=self.unit / b**levels,
        )

    def hull(self) -> RatInterval:
        sysm = self.system
        span = Fraction(1, sysm.base - 1)
        return RatInterval(
            self.prefix_value + self.unit * sysm.dmin * span,
            self.prefix_value + self.unit * sysm.dmax * span,
        )

    def anchor(self) -> Fraction:
        """The all-minimum-digit tail point: hull.lo, a member of S."""
        return self.prefix_value + self.unit * Fraction(
            self.system.dmin, self.system.base - 1
        )

    def prefix_str(self) -> str:
        return DigitSystem.digits_str(self.system.base, self.prefix)

    def __repr__(self):
        return f"Cylinder({self.system.base}:{self.prefix_str()!r})"


def cylinder_interval(c: Cylinder) -> RatInterval:
    return c.hull()


def anchor_rational(c: Cylinder) -> Fraction:
    return c.anchor()


def rationals_in(
    c: Cylinder, min_depth: int
) -> Iterator[tuple[Fraction, Cylinder]]:
    """Anchors of sub-cylinders at depth >= min_depth, each exactly once.

    Breadth-first by depth, digit-lexicographic within a level.  A
    sub-cylinder whose last digit is the minimum digit shares its anchor
    with its parent, so past the starting level those are skipped.
    """
    if min_depth < c.depth:
        raise UsageError("min_depth must be at least the prefix depth")
    dmin = c.system.dmin
    digits = c.system.digits
    depth = min_depth
    while True:
        for tail in iproduct(digits, repeat=depth - c.depth):
            if depth > min_depth and (not tail or tail[-1] == dmin):
                continue
            sub = c.extend(tail)
            yield sub.anchor(), sub
        depth += 1


@dataclass(frozen=True)
class ProductSet:
    factors: tuple[DigitSystem, ...]

    def __post_init__(self):
        if len(self.factors) < 2:
            raise UsageError("need at least 2 factors (n >= 2)")

    @property
    def dim(self) -> int:
        return len(self.factors)

    def hull(self) -> Box:
        return Box(tuple(f.hull() for f in self.factors))

    def to_json(self) -> list:
        return [f.to_json() for f in self.factors]

    @staticmethod
    def from_json(obj: list) -> "ProductSet":
        return ProductSet(tuple(DigitSystem.from_json(f) for f in obj))
