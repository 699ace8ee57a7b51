from fractions import Fraction

import pytest

from cacti.algebra import Poly
from cacti.circles import CircleSet, parse_circles
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
    constellations_1n_pq,
    constellations_1n_reduced,
    constellations_1n_sum,
    falling_factorial,
    fit_P,
    stratum_dimension,
)
from cacti.monodromy import Passport, parse_passport
from cacti.oracle.factorizations import weighted_cactus_count
from cacti.oracle.types import gluing_volume


def test_cacti_distinct():
    assert cacti_distinct([3, 4, 5]) == 10
    assert cacti_distinct([2, 2, 2, 2]) == 25
    assert cacti_distinct([5]) == Fraction(1, 5)
    p = cacti_distinct(["n_1_1", "n_2_1", "n_3_1", "n_4_1"])
    assert p.evaluate({"n_1_1": 2, "n_2_1": 2, "n_3_1": 2, "n_4_1": 2}) == 25


def test_falling_factorial():
    assert falling_factorial(5, 3) == 60
    assert falling_factorial(5, 0) == 1
    assert falling_factorial(1, 2) == 0
    assert falling_factorial(-1, 1) == 0


def test_cacti_passport_variants():
    x = parse_passport("3;4;5")
    assert cacti_passport(x) == 10
    assert cacti_passport(x, "printed") == 10 * 7 * 6 * 5
    assert cacti_passport(parse_passport("2,2;3")) == 1
    assert cacti_passport(parse_passport("2,2;3"), "printed") == 0
    assert cacti_passport(parse_passport("2,2")) == 0
    with pytest.raises(ValueError):
        cacti_passport(x, "other")


def test_passport_enumeration_covers_degree():
    for n in range(2, 6):
        for x in cactus_passports(n):
            assert sum(p.size - p.length for p in x) == n - 1


def test_passport_counts_do_not_depend_on_color_order():
    x = parse_passport("2,2;3;2")
    y = parse_passport("3;2;2,2")
    assert weighted_cactus_count(x) == weighted_cactus_count(y) == cacti_passport(x) == cacti_passport(y)


@pytest.mark.parametrize("k,n,expected", [(3, 2, 4), (2, 7, 1), (4, 3, 27), (5, 7, 1372)])
def test_1n_closed_and_reduced(k, n, expected):
    assert constellations_1n_closed(k, n) == expected
    assert constellations_1n_reduced(k, n) == expected
    assert constellations_1n_pq(k, n) == expected


def test_1n_double_sum():
    assert constellations_1n_sum((2, 2, 2)) == 4
    assert constellations_1n_reduced(3, 5) == 10
    assert constellations_1n_sum((2, 3, 4)) == constellations_1n_sum((3, 3, 3)) == 10


def test_circle_cacti_distinct():
    assert str(circle_cacti_distinct(["l1", "l2", "l3"])) == "l1 + l2 + l3"
    assert circle_cacti_distinct(["a", "b"]) == Poly.const(1)
    s = Poly.var("l1") + Poly.var("l2") + Poly.var("l3") + Poly.var("l4")
    assert circle_cacti_distinct(["l1", "l2", "l3", "l4"]) == s ** 2


def test_circle_cacti_multi():
    assert str(circle_cacti_multi(parse_circles("1:a,b;2:c"))) == "c"
    assert str(circle_cacti_multi(parse_circles("1:u,u;2:v"))) == "1/2*v"
    cs = CircleSet.symbolic([1, 1, 1, 1])
    assert circle_cacti_multi(cs) == circle_cacti_distinct(list(cs.lengths))
    for mult in [(2, 1), (2, 2), (3, 1), (2, 2, 1)]:
        cs = CircleSet.symbolic(list(mult))
        assert circle_cacti_multi(cs).total_degree() == stratum_dimension(0, cs.m, 1)


def test_cayley_and_dimension():
    assert [cayley(k) for k in (1, 2, 3, 5)] == [1, 1, 3, 125]
    assert stratum_dimension(0, 5, 1) == 3
    assert stratum_dimension(0, 2, 2) == 2
    assert stratum_dimension(1, 1, 1) == 3


def test_fit_P_three_polygons():
    shape = Shape.of(1, 1, 1)
    P = fit_P(shape, 0, 1)
    n = [Poly.var(v) for v in shape.size_vars()]
    assert P == n[0] + n[1] + n[2] - 2
    Q = gluing_volume(shape.circles(), 0, 1)
    assert asymptotic_check(P, Q, shape)


def test_fit_P_two_faces():
    shape = Shape.of(1, 1)
    P = fit_P(shape, 0, 2)
    assert P.total_degree() == 2
    n1, n2 = (Poly.var(v) for v in shape.size_vars())
    assert P == (n1 - 1) * (n2 - 1) * Fraction(1, 2)
    assert asymptotic_check(P, gluing_volume(shape.circles(), 0, 2), shape)


def test_fit_P_constant():
    shape = Shape.of(1, 1)
    assert fit_P(shape, 0, 1) == Poly.const(1)
