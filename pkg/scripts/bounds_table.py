"""Print the certified constant tables: transference constants for a
range of dimensions, then root enclosures for the exponent bounds on
lines, affine subspaces, and hypersurfaces.

Usage: python3 scripts/bounds_table.py [--tol 1e-12] [--n-max 10]
"""
import argparse
from decimal import Decimal
from fractions import Fraction

from singvec import (
    badness_exponent,
    hypersurface_exponent_bound,
    refined_exponent_bound,
    transference_constants,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tol", default="1e-12", help="enclosure width")
    parser.add_argument("--n-max", type=int, default=10)
    args = parser.parse_args()
    tol = Fraction(Decimal(args.tol))

    print("transference constants (exact rationals)")
    print(f"{'n':>3}  {'basic':>12}  {'classical':>12}")
    for n in range(2, args.n_max + 1):
        tc = transference_constants(n)
        print(f"{n:>3}  {str(tc.basic):>12}  {str(tc.classical):>12}")

    print()
    print("exponent bounds (certified enclosures, midpoint shown)")
    print(f"{'s':>3} {'n':>3}  {'linear':>10}  {'refined':>18}")
    for s, n in ((1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)):
        linear = badness_exponent(s, n)
        enclosure = refined_exponent_bound(s, n, tol)
        mid = (enclosure.lo + enclosure.hi) / 2
        print(f"{s:>3} {n:>3}  {str(linear):>10}  {float(mid):>18.12f}")

    print()
    print("hypersurface bounds (degree-d graphs)")
    print(f"{'n':>3} {'d':>3}  {'enclosure midpoint':>18}")
    for n, d in ((2, 2), (2, 3), (3, 2)):
        enclosure = hypersurface_exponent_bound(n, d, tol)
        mid = (enclosure.lo + enclosure.hi) / 2
        print(f"{n:>3} {d:>3}  {float(mid):>18.12f}")


if __name__ == "__main__":
    main()
