"""Sweep the badness scan over growing height caps for one or more
cubic generators and write the results as CSV (exact rational columns
plus a float rendering of the midpoint).

Usage: python3 scripts/badness_sweep.py [--theta cbrt2 ...]
       [--q-max 1000] [--output sweep.csv]
"""
import argparse
import csv
import sys

from singvec import AffineSubspaceSpec, ProductReal, badness_infimum, parse_real


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--theta", action="append", default=None,
                        help="generator descriptor (repeatable)")
    parser.add_argument("--q-max", type=int, default=1000)
    parser.add_argument("--output", default=None)
    args = parser.parse_args()
    thetas = args.theta or ["cbrt2"]

    rows = [["theta", "cap", "value_lo", "value_hi", "value", "witness"]]
    for label in thetas:
        theta = parse_real(label)
        family = AffineSubspaceSpec(
            (theta,), ((ProductReal(theta, theta),),)
        )
        cap = 10
        while cap <= args.q_max:
            result = badness_infimum(family, cap)
            mid = (result.value.lo + result.value.hi) / 2
            rows.append([
                label,
                str(cap),
                str(result.value.lo),
                str(result.value.hi),
                f"{float(mid):.12g}",
                " ".join(str(c) for c in result.witness),
            ])
            cap *= 10
    if args.output is None:
        csv.writer(sys.stdout).writerows(rows)
    else:
        with open(args.output, "w", newline="") as handle:
            csv.writer(handle).writerows(rows)
        print(f"wrote {args.output} ({len(rows) - 1} rows)")


if __name__ == "__main__":
    main()
