"""Cross-validation suites: closed forms against brute-force oracles."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .algebra import fraction_str
from .circles import CircleSet
from .closed_forms import (
    Shape,
    asymptotic_check,
    cacti_distinct,
    cacti_passport,
    cactus_passports,
    cayley,
    circle_cacti_distinct,
    circle_cacti_multi,
    constellations_1n_closed,
    constellations_1n_pq,
    constellations_1n_reduced,
    constellations_1n_sum,
    fit_P,
    leading_in_lengths,
    stratum_dimension,
)
from .matrix_model import (
    F_series,
    f_series,
    forms_are_inverse,
    gaussian_shift_check,
    is_positive_definite,
    mat_inverse,
    model_forms,
    wick,
    wick_F_check,
    bilinear,
)
from .monodromy import Passport, parse_passport
from .oracle.factorizations import weighted_1n_count, weighted_cactus_count
from .oracle.plane import all_markings, decode_cactus, encode_cactus, enumerate_plane_cacti
from .oracle.types import enumerate_topological_types, gluing_volume


@dataclass
class Check:
    name: str
    lhs: str
    rhs: str
    passed: bool

    def to_json(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "pass": self.passed}


@dataclass
class Report:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, lhs, rhs, passed: bool | None = None) -> Check:
        c = Check(name, _show(lhs), _show(rhs), lhs == rhs if passed is None else passed)
        self.checks.append(c)
        return c

    def to_json(self) -> dict:
        return {"suite": self.suite, "checks": [c.to_json() for c in self.checks], "pass": self.passed}


def _show(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, Fraction)):
        return fraction_str(Fraction(x))
    return str(x)


@dataclass(frozen=True)
class Sizes:
    """Problem sizes for one budget tier."""

    cacti_total: int = 9
    passport_n: int = 7
    one_n: tuple[tuple[int, tuple[int, ...]], ...] = ((3, (2, 3, 4, 5, 6)), (4, (3, 4, 5)))
    one_n_invariance: tuple[int, int] = (5, 12)
    circles_k: int = 5
    trees_k: int = 6
    forms_n: int = 4
    forms_k: int = 6
    series_degree: int = 6
    wick_pair_grade: int = 4
    wick_square_grade: int = 3


TIERS = {
    "small": Sizes(
        cacti_total=7, passport_n=5, one_n=((3, (2, 3, 4)), (4, (3,))), one_n_invariance=(4, 8),
        circles_k=4, trees_k=5, forms_n=2, forms_k=4, series_degree=4, wick_pair_grade=2, wick_square_grade=2,
    ),
    "medium": Sizes(
        cacti_total=8, passport_n=6, one_n=((3, (2, 3, 4, 5)), (4, (3, 4))), one_n_invariance=(5, 10),
        circles_k=5, trees_k=6, forms_n=3, forms_k=5, series_degree=5, wick_pair_grade=4, wick_square_grade=2,
    ),
    "full": Sizes(),
}


def tier_for_budget(budget: float | None) -> str:
    """Deterministic map from a time budget in seconds to a size tier."""
    if budget is None or budget >= 60:
        return "full"
    return "medium" if budget >= 15 else "small"


@dataclass(frozen=True)
class VerifyConfig:
    budget: float | None = None
    threads: int = 1
    seed: int = 0

    @property
    def sizes(self) -> Sizes:
        return TIERS[tier_for_budget(self.budget)]


# -- suites -------------------------------------------------------------------


def distinct_size_lists(max_total: int, ks=(2, 3, 4)):
    for k in ks:
        for sizes in itertools.product(range(2, max_total + 1), repeat=k):
            if sum(sizes) <= max_total:
                yield sizes


def suite_cacti(cfg: VerifyConfig) -> Report:
    rep = Report("cacti")
    for sizes in distinct_size_lists(cfg.sizes.cacti_total):
        n = sum(sizes) - len(sizes) + 1
        x = Passport.of(*[[s] for s in sizes])
        oracle = weighted_cactus_count(x, threads=cfg.threads)
        cacti = enumerate_plane_cacti(sizes)
        plane = sum((c.weight for c in cacti), Fraction(0))
        formula = cacti_distinct(list(sizes))
        rep.add(f"factorizations {sizes}", oracle, formula)
        rep.add(f"plane enumeration {sizes}", plane, formula)
        codes = {encode_cactus(c) for c in cacti}
        round_trip = all(decode_cactus(encode_cactus(c), sizes) == c for c in cacti)
        rep.add(f"merge/split round trip {sizes}", round_trip, True)
        rep.add(f"distinct encodings {sizes}", len(codes), len(cacti))
        rep.add(f"marked polygons {sizes}", len(codes), len(all_markings(n, len(sizes))))
    return rep


def printed_variant_discrepancy() -> tuple[Fraction, Fraction]:
    x = parse_passport("2,2;3")
    return cacti_passport(x, "printed"), weighted_cactus_count(x)


def suite_passports(cfg: VerifyConfig) -> Report:
    rep = Report("passports")
    for n in range(2, cfg.sizes.passport_n + 1):
        for x in cactus_passports(n):
            rep.add(f"corrected formula {x}", cacti_passport(x), weighted_cactus_count(x, threads=cfg.threads))
    printed, oracle = printed_variant_discrepancy()
    rep.add("printed formula differs from oracle on 2,2;3 (expected)", printed, oracle, passed=printed != oracle)
    for sizes in [(3, 4, 5), (2, 2, 2), (2, 5)]:
        x = Passport.of(*[[s] for s in sizes])
        rep.add(f"corrected formula reduces to distinct colors {sizes}", cacti_passport(x), cacti_distinct(list(sizes)))
    return rep


def size_multisets(k: int, total: int, smallest: int = 2):
    if k == 0:
        if total == 0:
            yield ()
        return
    for first in range(smallest, total // k + 1):
        for rest in size_multisets(k - 1, total - first, first):
            yield (first,) + rest


def suite_one_n(cfg: VerifyConfig) -> Report:
    rep = Report("one-n")
    for k, ns in cfg.sizes.one_n:
        for n in ns:
            closed = constellations_1n_closed(k, n)
            rep.add(f"reduced sum k={k} n={n}", constellations_1n_reduced(k, n), closed)
            rep.add(f"averaged double sum k={k} n={n}", constellations_1n_pq(k, n), closed)
            for sizes in list(size_multisets(k, n + k + 1))[:3]:
                rep.add(f"oracle {sizes}", weighted_1n_count(sizes, threads=cfg.threads), closed)
                rep.add(f"double sum {sizes}", constellations_1n_sum(sizes), closed)
    kmax, nmax = cfg.sizes.one_n_invariance
    for k in range(2, kmax + 1):
        for n in range(1, nmax + 1):
            values = {constellations_1n_sum(s) for s in size_multisets(k, n + k + 1)}
            expected = {Fraction(constellations_1n_closed(k, n))} if values else set()
            rep.add(f"double sum independent of sizes k={k} n={n}", sorted(values), sorted(expected))
    return rep


def _dimension_ok(types) -> bool:
    return all(sum(t.degrees) - t.m == stratum_dimension(t.genus, t.m, t.faces) for t in types if t.connected)


def suite_circle_cacti(cfg: VerifyConfig) -> Report:
    rep = Report("circle-cacti")
    for k in range(2, cfg.sizes.circles_k + 1):
        cs = CircleSet.symbolic([1] * k)
        types = enumerate_topological_types(cs, genus=0, faces=1)
        vol = gluing_volume(cs, 0, 1)
        rep.add(f"volume k={k}", vol, circle_cacti_distinct(list(cs.lengths)))
        unit = CircleSet(cs.colors, (1,) * k)
        rep.add(f"unit lengths k={k}", gluing_volume(unit, 0, 1, identify_equal=False).constant_term(), cayley(k))
        rep.add(f"dimension formula k={k}", _dimension_ok(types), True)
    for k in range(2, cfg.sizes.trees_k + 1):
        types = enumerate_topological_types(list(range(1, k + 1)), genus=0, faces=1)
        trees = {t.neighbours() for t in types}
        rep.add(f"underlying trees k={k}", len(trees), cayley(k))
    return rep


MULTI_PATTERNS = [(2, 1), (2, 2), (3, 1)]


def suite_circle_multi(cfg: VerifyConfig) -> Report:
    rep = Report("circle-multi")
    for pattern in MULTI_PATTERNS:
        cs = CircleSet.symbolic(list(pattern))
        types = enumerate_topological_types(cs, genus=0, faces=1)
        rep.add(f"volume {pattern}", gluing_volume(cs, 0, 1), circle_cacti_multi(cs))
        rep.add(f"dimension formula {pattern}", _dimension_ok(types), True)
    for by_color in [{1: ["u", "u"], 2: ["v"]}, {1: [2, 2], 2: [3]}, {1: [1, 1, 1], 2: [2]}, {1: ["a", "b"], 2: ["c", "c"]}]:
        cs = CircleSet.from_dict(by_color)
        rep.add(f"equal lengths {cs}", gluing_volume(cs, 0, 1), circle_cacti_multi(cs))
    return rep


ASYMPTOTIC_CASES = [
    ("three distinct polygons", Shape.of(1, 1, 1), 0, 1),
    ("two polygons, two faces", Shape.of(1, 1), 0, 2),
    ("two polygons, one face", Shape.of(1, 1), 0, 1),
    ("two polygons of one color and one of another", Shape.of(2, 1), 0, 1),
]


def suite_asymptotic(cfg: VerifyConfig) -> Report:
    rep = Report("asymptotic")
    for label, shape, g, p in ASYMPTOTIC_CASES:
        P = fit_P(shape, g, p, threads=cfg.threads)
        Q = gluing_volume(shape.circles(), g, p, identify_equal=False)
        rep.add(f"degree of P, {label}", P.total_degree(), stratum_dimension(g, shape.m, p))
        rep.add(f"top part of P equals Q, {label}", leading_in_lengths(P, shape), Q, asymptotic_check(P, Q, shape))
    return rep


TWO_BY_TWO_COEFFICIENTS = [
    ({}, Fraction(2)),
    ({"l_1_1": 1, "l_2_1": 1}, Fraction(3, 2)),
    ({"l_1_1": 1, "l_2_2": 1}, Fraction(3, 2)),
    ({"l_1_2": 1, "l_2_1": 1}, Fraction(3, 2)),
    ({"l_1_2": 1, "l_2_2": 1}, Fraction(3, 2)),
    ({"l_1_1": 2, "l_2_1": 2}, Fraction(2, 3)),
    ({"l_1_1": 2, "l_2_2": 2}, Fraction(2, 3)),
    ({"l_1_2": 2, "l_2_1": 2}, Fraction(2, 3)),
    ({"l_1_2": 2, "l_2_2": 2}, Fraction(2, 3)),
    ({"l_1_1": 1, "l_1_2": 1, "l_2_1": 2}, Fraction(1)),
    ({"l_1_1": 1, "l_1_2": 1, "l_2_2": 2}, Fraction(1)),
    ({"l_1_1": 2, "l_2_1": 1, "l_2_2": 1}, Fraction(1)),
    ({"l_1_2": 2, "l_2_1": 1, "l_2_2": 1}, Fraction(1)),
    ({"l_1_1": 1, "l_1_2": 1, "l_2_1": 1, "l_2_2": 1}, Fraction(3, 2)),
]


def random_form(rng: random.Random, dim: int) -> list[Fraction]:
    return [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(dim)]


def suite_matrix_model(cfg: VerifyConfig) -> Report:
    rep = Report("matrixmodel")
    s = cfg.sizes
    for N in range(1, s.forms_n + 1):
        for k in range(2, s.forms_k + 1):
            h, h_inv = model_forms(N, k)
            rep.add(f"H positive definite N={N} k={k}", is_positive_definite(h), True)
            rep.add(f"H^-1 positive definite N={N} k={k}", is_positive_definite(h_inv), True)
            rep.add(f"H and H^-1 inverse on E N={N} k={k}", forms_are_inverse(N, k), True)
    rng = random.Random(cfg.seed)
    for N, k in [(1, 2), (1, 3), (2, 2)]:
        h, _ = model_forms(N, k)
        cov = mat_inverse(h.matrix)
        lam = random_form(rng, h.dimension)
        q = bilinear(cov, lam, lam)
        for m in range(1, 5):
            rep.add(f"moment of order {2 * m}, N={N} k={k}", wick(h, [lam] * (2 * m), cov),
                    math.prod(range(1, 2 * m, 2)) * q ** m)
        rep.add(f"gaussian shift to order 4, N={N} k={k}", gaussian_shift_check(h, lam, 4), True)
    sq = CircleSet.symbolic([2, 2])
    fs = f_series(sq, 4)
    for mono, want in TWO_BY_TWO_COEFFICIENTS:
        label = "*".join(f"{v}^{e}" if e > 1 else v for v, e in mono.items()) or "1"
        rep.add(f"2x2 coefficient of {label}", fs.coefficient(mono), want)
    for mult in [(1, 1), (1, 1, 1), (2, 2)]:
        cs = CircleSet.symbolic(list(mult))
        D = s.series_degree
        rep.add(f"f equals F at N=1 {mult} degree {D}", f_series(cs, D), F_series(cs, D, 1))
    for mult, N, D in [((1, 1), 1, s.wick_pair_grade), ((1, 1), 2, s.wick_pair_grade), ((2, 2), 1, s.wick_square_grade)]:
        rep.add(f"Wick expansion equals F {mult} N={N} grade {D}", wick_F_check(CircleSet.symbolic(list(mult)), D, N), True)
    return rep


SUITES: dict[str, Callable[[VerifyConfig], Report]] = {
    "cacti": suite_cacti,
    "passports": suite_passports,
    "one-n": suite_one_n,
    "circle-cacti": suite_circle_cacti,
    "circle-multi": suite_circle_multi,
    "asymptotic": suite_asymptotic,
    "matrixmodel": suite_matrix_model,
}

# suite ids accepted on the command line in addition to the names above
ALIASES = {
    "thm1polyg": "cacti",
    "thm2polyg": "passports",
    "thm3polyg": "one-n",
    "thm1circ": "circle-cacti",
    "thm2circ": "circle-multi",
}


def resolve_suite(name: str) -> list[str]:
    if name == "all":
        return list(SUITES)
    name = ALIASES.get(name, name)
    if name not in SUITES:
        raise KeyError(name)
    return [name]


def run(name: str, cfg: VerifyConfig | None = None) -> Report:
    """Run one suite (or ``all``, merged into a single report)."""
    cfg = cfg or VerifyConfig()
    names = resolve_suite(name)
    if len(names) == 1:
        return SUITES[names[0]](cfg)
    merged = Report(name)
    for n in names:
        sub = SUITES[n](cfg)
        for c in sub.checks:
            merged.checks.append(Check(f"{n}: {c.name}", c.lhs, c.rhs, c.passed))
    return merged

