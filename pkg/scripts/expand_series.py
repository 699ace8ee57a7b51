"""Print the generating-function expansion for a set of circles, and optionally
check it against a direct Gaussian expansion at integer N."""

import argparse

from cacti.algebra import fraction_str
from cacti.circles import parse_circles
from cacti.matrix_model import F_series, f_series, wick_F_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--circles", default="1:a;2:b")
    ap.add_argument("--max-degree", type=int, default=4)
    ap.add_argument("--wick-N", type=int, default=None, help="also run the Gaussian check at this N")
    args = ap.parse_args()

    cs = parse_circles(args.circles)
    print(f"circles {cs}")
    f = f_series(cs, args.max_degree)
    print("f (planar, one face):")
    variables, rows = f.sorted_terms()
    for exps, coef in rows:
        mono = " ".join(f"{v}^{e}" if e > 1 else v for v, e in zip(variables, exps) if e) or "1"
        print(f"  {fraction_str(coef):>8}  {mono}")
    F = F_series(cs, args.max_degree)
    print(f"F with N: {F}")
    if args.wick_N is not None:
        report = []
        ok = wick_F_check(cs, args.max_degree, args.wick_N, report=report)
        print(f"Gaussian expansion at N={args.wick_N} agrees: {ok}")
        for degs, lhs, rhs in report:
            print(f"  degrees {degs}: gaussian {fraction_str(lhs)}, series {fraction_str(rhs)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
