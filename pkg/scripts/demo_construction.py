"""Build a nested-box certificate on the twofold middle-thirds set,
verify it from scratch, and print the step table with the verdict.

Usage: python3 scripts/demo_construction.py [--steps 4] [--weighted]
       [--output cert.json]
"""
import argparse
from fractions import Fraction
from pathlib import Path

from singvec import (
    ConstructionSpec,
    DigitSystem,
    NormSpec,
    PhiSpec,
    ProductSet,
    construct,
    default_spot_checks,
    verify_certificate,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=4)
    parser.add_argument("--weighted", action="store_true",
                        help="use weights (2/3, 1/3) instead of the sup norm")
    parser.add_argument("--output", type=Path, default=None)
    args = parser.parse_args()

    thirds = DigitSystem(3, (0, 2))
    norm = (
        NormSpec("weighted", (Fraction(2, 3), Fraction(1, 3)))
        if args.weighted else NormSpec("sup")
    )
    spec = ConstructionSpec(
        product=ProductSet((thirds, thirds)),
        norm=norm,
        phi=PhiSpec("pow", exponent=Fraction(5)),
        steps=args.steps,
    )
    cert = construct(spec)

    print(f"{'step':>4}  {'k':>2}  {'anchor':<16}  {'height':<24}")
    for step in cert.steps:
        anchor = f"{step.p}/{step.q}"
        print(f"{step.nu:>4}  {step.k:>2}  {anchor:<16}  {step.phi_of_q}")
    widths = [side.width for side in cert.final_box.sides]
    print("final box widths:", ", ".join(str(w) for w in widths))

    if args.output is not None:
        args.output.write_text(cert.dumps())
        print(f"wrote {args.output}")

    spots = default_spot_checks(cert)
    report = verify_certificate(cert)
    print(f"spot thresholds: {', '.join(str(t) for t in spots) or 'none'}")
    for spot in report.spot_checks:
        verdict = "ok" if spot.ok else "FAIL"
        print(f"  t={spot.t}: value <= {float(spot.value.hi):.3e}, "
              f"bound {float(spot.bound):.3e}, {verdict}")
    print("verified" if report.ok else "VERIFICATION FAILED")
    for line in report.failures:
        print("  failure:", line)


if __name__ == "__main__":
    main()
