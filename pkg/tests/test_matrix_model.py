import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cacti.algebra import Poly
from cacti.circles import CircleSet, parse_circles
from cacti.matrix_model import (
    CFrac,
    F_series,
    QuadForm,
    StateSpace,
    bilinear,
    collapse_terms,
    coordinate_forms,
    f_closed,
    f_series,
    forms_are_inverse,
    gaussian_shift_check,
    is_positive_definite,
    mat_inverse,
    model_forms,
    wick,
    wick_F_check,
)


def test_state_space_dimension_and_constraints():
    for N, k in [(1, 3), (2, 2), (3, 4)]:
        sp = StateSpace(N, k)
        assert sp.dimension == k * N * N
        rnd = random.Random(N * 10 + k)
        coords = [Fraction(rnd.randint(-9, 9), rnd.randint(1, 5)) for _ in range(sp.dimension)]
        A = sp.realize(coords)
        # sum_i (A_i - A_i^dagger) = 2 sum Y_i = 0 and A_i + A_i^dagger = 2X for every i
        for a in range(N):
            for b in range(N):
                skew = CFrac()
                for i in range(k):
                    dag = CFrac(A[i][b][a].re, -A[i][b][a].im)
                    skew = skew + A[i][a][b] - dag
                assert not skew
                herm = {A[i][a][b] + CFrac(A[i][b][a].re, -A[i][b][a].im) for i in range(k)}
                assert len(herm) == 1


def test_model_forms_small_case():
    h, h_inv = model_forms(1, 2)
    assert h.matrix == [[2, 0], [0, 2]]
    assert h_inv.matrix == [[2, 0], [0, 2]]
    assert model_forms(1, 3)[0].dimension == 3
    with pytest.raises(ValueError):
        model_forms(2, 1)


@pytest.mark.parametrize("N,k", [(1, 2), (1, 5), (2, 3), (3, 2)])
def test_forms_match_coordinate_expressions(N, k):
    h, h_inv = model_forms(N, k)
    ch, ch_inv = coordinate_forms(N, k)
    assert h.matrix == ch.matrix and h_inv.matrix == ch_inv.matrix
    assert forms_are_inverse(N, k)
    assert is_positive_definite(h) and is_positive_definite(h_inv)


def test_positive_definiteness():
    assert not is_positive_definite([[1, 0], [0, -1]])
    assert is_positive_definite([[2, 1], [1, 2]])
    assert not is_positive_definite([[1, 2], [2, 1]])


def test_wick_small_cases():
    h, _ = model_forms(1, 2)
    sp = StateSpace(1, 2)
    a1, a2 = sp.entry(0, 0, 0), sp.entry(1, 0, 0)
    assert wick(h, [a1, a2]) == 1
    assert wick(h, [a1, a1]) == 0
    assert wick(h, [a1, a1, a2, a2]) == 2
    assert wick(h, [a1, a2, a2]) == 0


@settings(max_examples=25, deadline=None)
@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=3, max_size=3), st.integers(1, 4))
def test_wick_even_moments(lam, m):
    h, _ = model_forms(1, 3)
    cov = mat_inverse(h.matrix)
    q = bilinear(cov, lam, lam)
    double_factorial = 1
    for j in range(1, 2 * m, 2):
        double_factorial *= j
    assert wick(h, [lam] * (2 * m), cov) == double_factorial * q ** m


def test_gaussian_shift():
    h, _ = model_forms(1, 2)
    assert gaussian_shift_check(h, [1, 1], 4)
    assert gaussian_shift_check(h, [0, 0], 3)
    h2, _ = model_forms(2, 2)
    assert gaussian_shift_check(h2, [Fraction(j, 3) for j in range(h2.dimension)], 3)


def test_quadform_validation():
    with pytest.raises(ValueError):
        QuadForm([[1, 2], [3, 4]])
    q = QuadForm([[1, 0], [0, 3]])
    assert q([1, 2]) == 13
    assert q.inverse().matrix == [[1, 0], [0, Fraction(1, 3)]]


def test_f_closed_one_pair():
    cs = parse_circles("1:l;2:s")
    terms = f_closed(cs)
    assert sorted((sgn, str(e)) for sgn, e in terms) == [(-1, "0"), (-1, "0"), (1, "0"), (1, "l*s")]
    assert collapse_terms(terms) == [(1, Poly.var("l") * Poly.var("s")), (-1, Poly())]


def test_f_closed_two_by_two():
    cs = CircleSet.symbolic([2, 2])
    terms = f_closed(cs)
    assert len(terms) == 16
    empty = [t for t in terms if t[1].is_zero()]
    assert (1, Poly()) in empty  # every circle in V: sign (-1)^4
    assert len(collapse_terms(terms)) == 10


def test_f_series_examples():
    one = f_series(parse_circles("1:l;2:s"), 4)
    assert str(one) == "1/6*l^2*s^2 + 1/2*l*s + 1"
    sq = f_series(CircleSet.symbolic([2, 2]), 4)
    assert sq.constant_term() == 2
    assert sq.coefficient(l_1_1=1, l_2_1=1) == Fraction(3, 2)
    assert sq.coefficient(l_1_1=2, l_2_1=2) == Fraction(2, 3)
    assert sq.coefficient(l_1_1=1, l_1_2=1, l_2_1=2) == 1
    assert sq.coefficient(l_1_1=1, l_1_2=1, l_2_1=1, l_2_2=1) == Fraction(3, 2)


def test_F_series_with_N():
    F = F_series(parse_circles("1:l;2:s"), 2)
    N = Poly.var("N")
    assert F == N ** 2 + Poly.var("l") * Poly.var("s") * N ** 2 * Fraction(1, 2)


@pytest.mark.parametrize("mult", [(1, 1), (1, 1, 1), (2, 1), (2, 2)])
def test_f_equals_F_at_N1(mult):
    cs = CircleSet.symbolic(list(mult))
    assert f_series(cs, 4) == F_series(cs, 4, 1)


def test_F_series_powers_of_N():
    cs = CircleSet.symbolic([2, 2])
    F = F_series(cs, 4)
    for mono in F.terms:
        e = dict(mono).get("N", 0)
        assert e % 2 == 0 and e <= 2 * cs.m // 2


def test_monomial_grades_match_contact_parity():
    # each circle with d contacts carries l^(d-1); contacts pair up, so sum (e+1) is even
    cs = CircleSet.symbolic([1, 2])
    for mono in f_series(cs, 5).terms:
        exps = dict(mono)
        assert sum(exps.get(v, 0) + 1 for v in cs.lengths) % 2 == 0


@pytest.mark.parametrize("mult,N,D", [((1, 1), 1, 2), ((1, 1), 2, 2), ((2, 1), 1, 2)])
def test_wick_F_check(mult, N, D):
    rows = []
    assert wick_F_check(CircleSet.symbolic(list(mult)), D, N, rows)
    assert rows and all(lhs == rhs for _, lhs, rhs in rows)


def test_wick_F_check_reports_ls_coefficient():
    rows = []
    wick_F_check(parse_circles("1:l;2:s"), 2, 1, rows)
    assert dict((d, lhs) for d, lhs, _ in rows)[(2, 2)] == Fraction(1, 2)
