"""Command line entry point. Results go to stdout as JSON, diagnostics to stderr."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from .algebra import Poly, fraction_str
from .circles import parse_circles
from .closed_forms import (
    cacti_passport,
    circle_cacti_multi,
    constellations_1n_closed,
    constellations_1n_sum,
)
from .matrix_model import F_series, f_series
from .monodromy import NoSuchConstellation, parse_passport
from .oracle.factorizations import weighted_1n_count, weighted_cactus_count, weighted_constellation_count
from .oracle.types import gluing_volume
from .verify import VerifyConfig, resolve_suite, run, tier_for_budget

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_USAGE = 2

DEFAULTS = {"budget": "60", "max_degree": "8", "threads": str(os.cpu_count() or 1)}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def load_config(path: str | None) -> dict:
    """``key = value`` lines; ``#`` starts a comment."""
    conf = dict(DEFAULTS)
    if not path:
        return conf
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}")
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in DEFAULTS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        conf[key] = value.strip()
    return conf


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _value_json(x):
    if isinstance(x, Poly):
        return x.to_json()
    return fraction_str(Fraction(x))


def cmd_count(args, conf) -> int:
    threads = args.threads
    if args.kind == "one-n":
        if not args.sizes:
            raise UsageError("count one-n needs --sizes")
        try:
            sizes = [int(s) for s in args.sizes.split(",")]
        except ValueError:
            raise UsageError(f"malformed sizes {args.sizes!r}")
        if any(s < 2 for s in sizes):
            raise UsageError("polygons need at least 2 sides")
        oracle = weighted_1n_count(sizes, threads=threads)
        k, n = len(sizes), sum(sizes) - len(sizes) - 1
        formula = Fraction(constellations_1n_closed(k, n))
        out = {
            "formula": fraction_str(formula),
            "double_sum": fraction_str(constellations_1n_sum(sizes)),
            "oracle": fraction_str(oracle),
            "agree": formula == oracle,
        }
        _emit(out)
        return EXIT_OK if out["agree"] else EXIT_DISAGREE

    if not args.passport:
        raise UsageError(f"count {args.kind} needs --passport")
    try:
        x = parse_passport(args.passport)
    except ValueError as exc:
        raise UsageError(str(exc))

    if args.kind == "cacti":
        formula = cacti_passport(x, args.variant)
        oracle = weighted_cactus_count(x, threads=threads)
        out = {"formula": fraction_str(formula), "oracle": fraction_str(oracle), "agree": formula == oracle}
        _emit(out)
        return EXIT_OK if out["agree"] else EXIT_DISAGREE

    if args.genus is None or args.faces is None:
        raise UsageError("count constellations needs --genus and --faces")
    oracle = weighted_constellation_count(x, args.genus, args.faces, threads=threads)
    _emit({"oracle": fraction_str(oracle)})
    return EXIT_OK


def cmd_volume(args, conf) -> int:
    try:
        cs = parse_circles(args.circles)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.symbolic and not cs.is_symbolic():
        raise UsageError("--symbolic needs symbolic lengths for every circle")
    if not args.symbolic and not cs.is_numeric():
        raise UsageError("symbolic lengths need --symbolic")
    if cs.k < 2:
        raise UsageError("need circles of at least 2 colors")
    vol = gluing_volume(cs, args.genus, args.faces)
    if args.symbolic:
        out = {"volume": vol.to_json(), "expression": str(vol)}
    else:
        out = {"volume": fraction_str(vol.constant_term())}
    code = EXIT_OK
    if args.genus == 0 and args.faces == 1:
        formula = circle_cacti_multi(cs)
        out["formula"] = formula.to_json() if args.symbolic else fraction_str(formula.constant_term())
        out["agree"] = formula == vol
        code = EXIT_OK if out["agree"] else EXIT_DISAGREE
    _emit(out)
    return code


def cmd_expand_f(args, conf) -> int:
    ceiling = int(conf["max_degree"])
    if args.max_degree > ceiling:
        raise UsageError(f"--max-degree {args.max_degree} exceeds the configured ceiling {ceiling}")
    try:
        cs = parse_circles(args.circles)
    except ValueError as exc:
        raise UsageError(str(exc))
    if not cs.is_symbolic():
        raise UsageError("expand-f needs symbolic lengths")
    if cs.k < 2:
        raise UsageError("need circles of at least 2 colors")
    series = F_series(cs, args.max_degree) if args.with_N else f_series(cs, args.max_degree)
    _emit({"series": series.to_json(), "expression": str(series)})
    return EXIT_OK


def cmd_verify(args, conf) -> int:
    budget = args.budget if args.budget is not None else float(conf["budget"])
    try:
        resolve_suite(args.suite)
    except KeyError:
        raise UsageError(f"unknown suite {args.suite!r}")
    cfg = VerifyConfig(budget=budget, threads=args.threads)
    print(f"suite {args.suite}, size tier {tier_for_budget(budget)}", file=sys.stderr)
    t0 = time.perf_counter()
    report = run(args.suite, cfg)
    for c in report.checks:
        mark = "ok  " if c.passed else "FAIL"
        print(f"  {mark} {c.name}: {c.lhs} vs {c.rhs}", file=sys.stderr)
    n_ok = sum(c.passed for c in report.checks)
    print(f"{n_ok}/{len(report.checks)} checks passed in {time.perf_counter() - t0:.1f}s", file=sys.stderr)
    _emit(report.to_json())
    return EXIT_OK if report.passed else EXIT_DISAGREE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cacti", description="Exact counts of cacti, constellations and circle gluings.")
    parser.add_argument("--threads", type=int, default=None, help="worker processes (default: available cores)")
    parser.add_argument("--config", default=None, help="key=value file with defaults (budget, max_degree, threads)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", help="closed form against brute-force count")
    p.add_argument("kind", choices=["cacti", "constellations", "one-n"])
    p.add_argument("--passport", help='e.g. "2,2;3"')
    p.add_argument("--sizes", help='polygon sizes for one-n, e.g. "2,2,2"')
    p.add_argument("--genus", type=int)
    p.add_argument("--faces", type=int)
    p.add_argument("--variant", choices=["corrected", "printed"], default="corrected")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("volume", help="volume of the space of gluings")
    p.add_argument("--circles", required=True, help='e.g. "1:l1,l2;2:s" or "1:2;2:3/2"')
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--faces", type=int, default=1)
    p.add_argument("--symbolic", action="store_true")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("expand-f", help="series expansion of the generating function")
    p.add_argument("--circles", required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--with-N", dest="with_N", action="store_true", help="keep N (sum over gluings)")
    p.set_defaults(func=cmd_expand_f)

    p = sub.add_parser("verify", help="run a cross-validation suite")
    p.add_argument("--suite", default="all")
    p.add_argument("--budget", type=float, default=None, help="seconds; selects problem sizes")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        conf = load_config(args.config)
        if args.threads is None:
            args.threads = int(conf["threads"])
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        return args.func(args, conf)
    except UsageError as exc:
        print(f"cacti: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoSuchConstellation as exc:
        print(f"cacti: no such constellation: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
