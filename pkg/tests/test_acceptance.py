"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import itertools
import math
import random
import time
from fractions import Fraction

import pytest

from cacti.algebra import Poly
from cacti.circles import CircleSet
from cacti.closed_forms import (
    Shape,
    asymptotic_check,
    cacti_distinct,
    cacti_passport,
    cactus_passports,
    cayley,
    circle_cacti_distinct,
    circle_cacti_multi,
    constellations_1n_closed,
    constellations_1n_reduced,
    constellations_1n_sum,
    fit_P,
    stratum_dimension,
)
from cacti.matrix_model import (
    F_series,
    bilinear,
    f_series,
    forms_are_inverse,
    gaussian_shift_check,
    is_positive_definite,
    mat_inverse,
    model_forms,
    wick,
    wick_F_check,
)
from cacti.monodromy import Passport, parse_passport
from cacti.oracle.factorizations import weighted_1n_count, weighted_cactus_count
from cacti.oracle.plane import all_markings, decode_cactus, encode_cactus, enumerate_plane_cacti
from cacti.oracle.types import enumerate_topological_types, face_trace, gluing_volume
from cacti.verify import TWO_BY_TWO_COEFFICIENTS, distinct_size_lists, size_multisets

PATTERNS = [(2, 1), (2, 2), (3, 1)]
ASYMPTOTIC = [(Shape.of(1, 1, 1), 0, 1), (Shape.of(1, 1), 0, 2)]


def _sizes_c1():
    return list(distinct_size_lists(9, ks=(2, 3, 4)))


def test_c01_distinct_cacti(record_criterion):
    t0 = time.perf_counter()
    bad = []
    for sizes in _sizes_c1():
        n = sum(sizes) - len(sizes) + 1
        oracle = weighted_cactus_count(Passport.of(*[[s] for s in sizes]))
        plane = sum((c.weight for c in enumerate_plane_cacti(sizes)), Fraction(0))
        if not oracle == plane == n ** (len(sizes) - 2) == cacti_distinct(list(sizes)):
            bad.append((sizes, oracle, plane))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    record_criterion(1, ok, f"{len(_sizes_c1())} size lists, factorizations = plane cacti = n^(k-2); bad={bad[:3]}", dt)
    assert ok


def test_c02_merging_bijection(record_criterion):
    t0 = time.perf_counter()
    bad = []
    for sizes in _sizes_c1():
        n = sum(sizes) - len(sizes) + 1
        cacti = enumerate_plane_cacti(sizes)
        codes = [encode_cactus(c) for c in cacti]
        if any(decode_cactus(m, sizes) != c for m, c in zip(codes, cacti)):
            bad.append((sizes, "round trip"))
        if len(set(codes)) != n ** (len(sizes) - 2) or set(codes) != set(all_markings(n, len(sizes))):
            bad.append((sizes, "image"))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 30
    record_criterion(2, ok, f"decode(encode(c)) = c and image = all n^(k-2) markings; bad={bad[:3]}", dt)
    assert ok


def test_c03_passports(record_criterion):
    t0 = time.perf_counter()
    bad = []
    count = 0
    for n in range(2, 8):
        for x in cactus_passports(n):
            count += 1
            if cacti_passport(x, "corrected") != weighted_cactus_count(x):
                bad.append(str(x))
    x = parse_passport("2,2;3")
    printed, oracle = cacti_passport(x, "printed"), weighted_cactus_count(x)
    dt = time.perf_counter() - t0
    ok = not bad and printed == 0 and oracle == 1 and dt < 300
    record_criterion(3, ok, f"corrected formula = oracle on {count} passports (n <= 7); "
                            f"printed formula on 2,2;3 gives {printed} vs oracle {oracle} (discrepancy expected)", dt)
    assert ok


@pytest.mark.xfail(strict=True, reason="the formula as typeset disagrees with the brute-force count")
def test_c03_printed_formula_matches_oracle():
    x = parse_passport("2,2;3")
    assert cacti_passport(x, "printed") == weighted_cactus_count(x)


def test_c04_one_n_constellations(record_criterion):
    t0 = time.perf_counter()
    bad = []
    cases = [(3, n) for n in range(2, 7)] + [(4, n) for n in range(3, 6)]
    for k, n in cases:
        closed = constellations_1n_closed(k, n)
        if constellations_1n_reduced(k, n) != closed:
            bad.append((k, n, "reduced"))
        for sizes in size_multisets(k, n + k + 1):
            if not weighted_1n_count(sizes) == constellations_1n_sum(sizes) == closed:
                bad.append(sizes)
    invariance = 0
    for k in range(2, 6):
        for n in range(1, 13):
            values = {constellations_1n_sum(s) for s in size_multisets(k, n + k + 1)}
            invariance += 1
            if values and values != {constellations_1n_closed(k, n)}:
                bad.append((k, n, values))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 300
    record_criterion(4, ok, f"oracle = double sum = reduced = (k-1)n^(k-2) on {len(cases)} (k,n); "
                            f"size-invariance on {invariance} (k,n); bad={bad[:3]}", dt)
    assert ok


def test_c05_circle_cacti_and_trees(record_criterion):
    t0 = time.perf_counter()
    bad = []
    for k in range(2, 6):
        cs = CircleSet.symbolic([1] * k)
        vol = gluing_volume(cs, 0, 1)
        if vol != circle_cacti_distinct(list(cs.lengths)):
            bad.append((k, "symbolic"))
        if vol.evaluate({v: 1 for v in cs.lengths}) != k ** (k - 2):
            bad.append((k, "unit"))
    for k in range(2, 7):
        types = enumerate_topological_types(list(range(1, k + 1)), genus=0, faces=1)
        if len({t.neighbours() for t in types}) != cayley(k):
            bad.append((k, "trees"))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 120
    record_criterion(5, ok, f"volume = (sum l)^(k-2) for k <= 5, unit lengths k^(k-2), trees = k^(k-2) for k <= 6; bad={bad}", dt)
    assert ok


def test_c06_circle_cacti_multi(record_criterion):
    t0 = time.perf_counter()
    bad = []
    for pattern in PATTERNS:
        cs = CircleSet.symbolic(list(pattern))
        if gluing_volume(cs, 0, 1) != circle_cacti_multi(cs):
            bad.append(pattern)
    dt = time.perf_counter() - t0
    ok = not bad and dt < 120
    record_criterion(6, ok, f"type volume = closed form for patterns {PATTERNS}; bad={bad}", dt)
    assert ok


def test_c07_asymptotic(record_criterion):
    t0 = time.perf_counter()
    bad = []
    found = []
    for shape, g, p in ASYMPTOTIC:
        P = fit_P(shape, g, p)
        Q = gluing_volume(shape.circles(), g, p, identify_equal=False)
        d = stratum_dimension(g, shape.m, p)
        found.append(str(P))
        if P.total_degree() != d or not asymptotic_check(P, Q, shape):
            bad.append((shape, g, p))
    n = [Poly.var(v) for v in ASYMPTOTIC[0][0].size_vars()]
    if fit_P(*ASYMPTOTIC[0]) != n[0] + n[1] + n[2] - 2:
        bad.append("P for three polygons")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 600
    record_criterion(7, ok, f"P = {found}; degree = 4g-4+m+2p and top part = Q; bad={bad}", dt)
    assert ok


def _types_from_criteria_5_to_7():
    out = []
    for k in range(2, 6):
        out += enumerate_topological_types(CircleSet.symbolic([1] * k), genus=0, faces=1)
    for k in range(2, 7):
        out += enumerate_topological_types(list(range(1, k + 1)), genus=0, faces=1)
    for pattern in PATTERNS:
        out += enumerate_topological_types(CircleSet.symbolic(list(pattern)), genus=0, faces=1)
    for shape, g, p in ASYMPTOTIC:
        out += enumerate_topological_types(shape.circles(), genus=g, faces=p, identify_equal=False)
    return out


def test_c08_dimension(record_criterion):
    t0 = time.perf_counter()
    types = _types_from_criteria_5_to_7()
    bad = []
    for t in types:
        faces, discs, genera, _ = face_trace(t.colors, t.degrees, t.partner)
        if discs != t.m or faces - t.m != t.faces:
            bad.append(t)
        if sum(t.degrees) - t.m != stratum_dimension(t.genus, t.m, t.faces):
            bad.append(t)
    dt = time.perf_counter() - t0
    ok = not bad
    record_criterion(8, ok, f"{len(types)} types: sum k - m = 4g-4+m+2p and one disc face per circle; bad={len(bad)}", dt)
    assert ok


def test_c09_forms(record_criterion):
    t0 = time.perf_counter()
    bad = []
    for N in range(1, 5):
        for k in range(2, 7):
            h, h_inv = model_forms(N, k)
            if not (is_positive_definite(h) and is_positive_definite(h_inv) and forms_are_inverse(N, k)):
                bad.append((N, k))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    record_criterion(9, ok, f"H, H^-1 positive definite and mutually inverse for N <= 4, k <= 6; bad={bad}", dt)
    assert ok


def test_c10_wick(record_criterion):
    t0 = time.perf_counter()
    rng = random.Random(2024)
    bad = []
    trials = 0
    for N, k in [(1, 2), (1, 4), (2, 2), (2, 3)]:
        h, _ = model_forms(N, k)
        cov = mat_inverse(h.matrix)
        for _ in range(3):
            lam = [Fraction(rng.randint(-7, 7), rng.randint(1, 5)) for _ in range(h.dimension)]
            q = bilinear(cov, lam, lam)
            for m in range(1, 5):
                trials += 1
                if wick(h, [lam] * (2 * m), cov) != math.prod(range(1, 2 * m, 2)) * q ** m:
                    bad.append((N, k, m))
            if not gaussian_shift_check(h, lam, 4):
                bad.append((N, k, "shift"))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    record_criterion(10, ok, f"<lam^2m> = (2m-1)!! H^-1(lam)^m on {trials} random cases, shift identity to order 4; bad={bad}", dt)
    assert ok


def test_c11_two_by_two(record_criterion):
    t0 = time.perf_counter()
    series = f_series(CircleSet.symbolic([2, 2]), 4)
    bad = [(mono, series.coefficient(mono), want) for mono, want in TWO_BY_TWO_COEFFICIENTS
           if series.coefficient(mono) != want]
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    record_criterion(11, ok, f"{len(TWO_BY_TWO_COEFFICIENTS)} listed coefficients of f for the 2x2 set; bad={bad}", dt)
    assert ok


def test_c12_f_equals_F(record_criterion):
    t0 = time.perf_counter()
    bad = []
    for mult in [(1, 1), (1, 1, 1), (2, 2)]:
        cs = CircleSet.symbolic(list(mult))
        if f_series(cs, 6) != F_series(cs, 6, 1):
            bad.append(mult)
    dt = time.perf_counter() - t0
    ok = not bad and dt < 600
    record_criterion(12, ok, f"f = F(N=1) to degree 6 for (1,1), (1,1,1), (2,2); bad={bad}", dt)
    assert ok


def test_c13_wick_expansion(record_criterion):
    t0 = time.perf_counter()
    bad = []
    for mult, N, D in [((1, 1), 1, 4), ((1, 1), 2, 4), ((2, 2), 1, 3)]:
        if not wick_F_check(CircleSet.symbolic(list(mult)), D, N):
            bad.append((mult, N, D))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 600
    record_criterion(13, ok, f"Gaussian moments of the circle product = F at N=1,2 (one pair) and N=1 (2x2); bad={bad}", dt)
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
