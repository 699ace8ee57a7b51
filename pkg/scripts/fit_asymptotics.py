"""Fit the labelled constellation count as a polynomial in the polygon sizes and
compare its top homogeneous part with the volume of circle gluings.

Example: python3 scripts/fit_asymptotics.py --shape 1,1,1 --genus 0 --faces 1
"""

import argparse
import time
from fractions import Fraction

from cacti.closed_forms import Shape, fit_P, leading_in_lengths, stratum_dimension
from cacti.oracle.types import gluing_volume


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--shape", default="1,1,1", help="polygons per color")
    ap.add_argument("--genus", type=int, default=0)
    ap.add_argument("--faces", type=int, default=1)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--scales", default="10,100,1000", help="size multipliers for the ratio P/Q")
    args = ap.parse_args()

    shape = Shape.of(*(int(s) for s in args.shape.split(",")))
    d = stratum_dimension(args.genus, shape.m, args.faces)
    print(f"shape {shape.multiplicities}, genus {args.genus}, faces {args.faces}, degree {d}")

    t0 = time.perf_counter()
    P = fit_P(shape, args.genus, args.faces, threads=args.threads)
    print(f"P = {P}    ({time.perf_counter() - t0:.1f}s)")
    Q = gluing_volume(shape.circles(), args.genus, args.faces, identify_equal=False)
    top = leading_in_lengths(P, shape)
    print(f"Q = {Q}")
    print(f"top part of P matches Q: {top == Q}")

    # P / Q along the ray n = t * (1, 2, 3, ...)
    base = list(range(1, shape.m + 1))
    for t in (int(s) for s in args.scales.split(",")):
        point = [t * b for b in base]
        p = P.evaluate(dict(zip(shape.size_vars(), point)))
        q = Q.evaluate(dict(zip(shape.length_vars(), point)))
        ratio = float(Fraction(p) / q) if q else float("nan")
        print(f"  t={t:<6} P/Q = {ratio:.6f}")
    return 0 if top == Q else 1


if __name__ == "__main__":
    raise SystemExit(main())
