from fractions import Fraction

import pytest

from cacti.circles import CircleSet, parse_circles
from cacti.monodromy import NoSuchConstellation, Passport, parse_passport
from cacti.oracle.factorizations import (
    weighted_1n_count,
    weighted_cactus_count,
    weighted_constellation_count,
)
from cacti.oracle.plane import (
    MarkedPolygon,
    all_markings,
    decode_cactus,
    encode_cactus,
    enumerate_plane_cacti,
    merge_step,
)
from cacti.oracle.types import enumerate_topological_types, face_trace, gluing_volume, type_volume


@pytest.mark.parametrize("text,expected", [
    ("2;2", Fraction(1)),
    ("2;2;2", Fraction(4)),
    ("2,2;3", Fraction(1)),
    ("5", Fraction(1, 5)),
    ("2,2", Fraction(0)),
])
def test_weighted_cactus_count(text, expected):
    assert weighted_cactus_count(parse_passport(text)) == expected


def test_cactus_count_engines_agree():
    for text in ["3;4", "2;2;3", "2,2;3", "3,2;2;2", "4;2,2"]:
        x = parse_passport(text)
        assert weighted_cactus_count(x, engine="dp") == weighted_cactus_count(x, engine="search")


def test_cactus_count_independent_of_threads():
    x = parse_passport("3;3;2")
    assert weighted_cactus_count(x, engine="search", threads=1) == weighted_cactus_count(x, engine="search", threads=2)


@pytest.mark.parametrize("text,g,p,expected", [
    ("3;4;5", 0, 1, Fraction(10)),
    ("2;2", 0, 2, Fraction(1, 2)),
    ("2", 0, 1, Fraction(1, 2)),
])
def test_weighted_constellation_count(text, g, p, expected):
    assert weighted_constellation_count(parse_passport(text), g, p) == expected


def test_constellation_count_threads():
    x = parse_passport("3;3;2")
    assert weighted_constellation_count(x, 0, 2, threads=1) == weighted_constellation_count(x, 0, 2, threads=2)


def test_constellation_count_impossible_degree():
    with pytest.raises(NoSuchConstellation):
        weighted_constellation_count(parse_passport("5;5"), 3, 2)


@pytest.mark.parametrize("sizes,expected", [((2, 2, 2), 4), ((3, 3, 3), 10), ((2, 2), 1), ((2, 2, 2, 2), 27)])
def test_weighted_1n_count(sizes, expected):
    assert weighted_1n_count(sizes) == expected


def test_weighted_1n_count_needs_positive_n():
    with pytest.raises(NoSuchConstellation):
        weighted_1n_count((2,))


@pytest.mark.parametrize("sizes,count", [((2, 2, 2), 4), ((3, 4, 5), 10), ((2, 2), 1)])
def test_enumerate_plane_cacti(sizes, count):
    cacti = enumerate_plane_cacti(sizes)
    assert len(cacti) == count
    assert all(c.sym == 1 for c in cacti)
    assert [c.cycles for c in cacti] == sorted(c.cycles for c in cacti)


def test_plane_cacti_match_factorizations():
    for sizes in [(2, 3), (2, 2, 3), (3, 3, 2), (2, 2, 2, 2)]:
        weight = sum(c.weight for c in enumerate_plane_cacti(sizes))
        assert weight == weighted_cactus_count(Passport.of(*[[s] for s in sizes]))


def test_plane_cactus_attachments_form_a_tree():
    for c in enumerate_plane_cacti((2, 3, 2, 2)):
        att = c.attachments
        assert sorted(att) == list(range(1, c.k))
        for child, (parent, pslot, cslot) in att.items():
            assert c.cycles[parent][pslot] == c.cycles[child][cslot]


def test_monodromy_of_plane_cactus_has_long_cycle_product():
    from cacti.monodromy import MonodromyTuple, count_cycles, euler_data

    for c in enumerate_plane_cacti((3, 2, 4)):
        t = MonodromyTuple(c.n, c.monodromy())
        assert euler_data(t) == (0, 1)
        assert count_cycles(t.sigma_infinity()) == 1


@pytest.mark.parametrize("sizes", [(2, 2), (2, 2, 2), (3, 4, 5), (2, 2, 2, 2), (2, 3, 2, 2), (2, 3, 4)])
def test_bijection(sizes):
    cacti = enumerate_plane_cacti(sizes)
    n = sum(sizes) - len(sizes) + 1
    codes = [encode_cactus(c) for c in cacti]
    assert all(decode_cactus(m, sizes) == c for m, c in zip(codes, cacti))
    assert len(set(codes)) == len(cacti) == len(all_markings(n, len(sizes)))
    assert set(codes) == set(all_markings(n, len(sizes)))


def test_merge_preserves_vertex_count():
    c = enumerate_plane_cacti((3, 2, 4))[0]
    cycles = [list(cyc) for cyc in c.cycles]
    before = {v for cyc in cycles for v in cyc}
    merge_step(cycles, 1)
    assert {v for cyc in cycles for v in cyc} == before


def test_decode_rejects_bad_marking():
    with pytest.raises(ValueError):
        decode_cactus(MarkedPolygon(4, (0, 1)), (2, 2))


def test_marked_polygon_normalization():
    m = MarkedPolygon(5, (3, 0, 3))
    assert m.positions == (0, 2, 0)
    assert m.marks == {0: frozenset({2, 4}), 2: frozenset({3})}


def test_types_two_circles():
    cs = parse_circles("1:l;2:s")
    one = enumerate_topological_types(cs, genus=0, faces=1)
    assert len(one) == 1 and one[0].sym == 1
    assert face_trace(one[0].colors, one[0].degrees, one[0].partner)[:3] == (3, 2, (0,))
    two = enumerate_topological_types(cs, genus=0, faces=2)
    assert len(two) == 1 and two[0].sym == 2
    assert face_trace(two[0].colors, two[0].degrees, two[0].partner)[:2] == (4, 2)


def test_types_three_circles():
    cs = CircleSet.symbolic([1, 1, 1])
    types = enumerate_topological_types(cs, genus=0, faces=1)
    assert len(types) == 3 and all(t.sym == 1 for t in types)
    vols = sorted(str(type_volume(t, cs.lengths)) for t in types)
    assert vols == ["l_1_1", "l_2_1", "l_3_1"]


def test_triple_tangency_type():
    cs = parse_circles("1:l;2:s")
    (t,) = [t for t in enumerate_topological_types(cs, contact_counts=[3, 3]) if t.genus == 0]
    assert t.sym == 3 and t.faces == 3
    assert type_volume(t, cs.lengths) == gluing_volume(cs, 0, 3)
    assert str(type_volume(t, cs.lengths)) == "1/12*l^2*s^2"


def test_type_json_schema():
    cs = parse_circles("1:l;2:s")
    (t,) = enumerate_topological_types(cs, genus=0, faces=2)
    assert t.to_json() == {
        "circles": [{"color": 1, "id": 0}, {"color": 2, "id": 1}],
        "contacts": [[0, 1], [2, 3]],
        "matching": [list(p) for p in t.matching()],
        "genus": 0,
        "faces": 2,
        "sym": 2,
    }


def test_equal_length_circles_are_identified():
    assert str(gluing_volume(parse_circles("1:u,u;2:v"), 0, 1)) == "1/2*v"
    assert str(gluing_volume(parse_circles("1:a,b;2:c"), 0, 1)) == "c"


@pytest.mark.parametrize("mult,g,p", [((2, 2), 0, 1), ((2, 2), 0, 2), ((3, 1), 1, 1), ((2, 1), 0, 3)])
def test_identification_equals_symmetrised_volume(mult, g, p):
    from cacti.algebra import Poly

    cs = CircleSet.symbolic(list(mult))
    first = {c: next(x for x, cc in zip(cs.lengths, cs.colors) if cc == c) for c in cs.color_list}
    sub = {x: first[c] for x, c in zip(cs.lengths, cs.colors)}
    eq = CircleSet(cs.colors, tuple(sub[x] for x in cs.lengths))
    aut = 1
    for c in eq.color_list:
        aut *= eq.aut(c)
    lhs = gluing_volume(cs, g, p).substitute({k: Poly.var(v) for k, v in sub.items()})
    assert lhs == gluing_volume(eq, g, p) * aut


def test_connected_types_are_connected_and_satisfy_dimension():
    cs = CircleSet.symbolic([2, 2])
    for g, p in [(0, 1), (0, 2), (1, 1), (0, 3)]:
        for t in enumerate_topological_types(cs, genus=g, faces=p):
            reach = {0}
            frontier = [0]
            while frontier:
                a = frontier.pop()
                for u, v in t.neighbours():
                    for x, y in ((u, v), (v, u)):
                        if x == a and y not in reach:
                            reach.add(y)
                            frontier.append(y)
            assert reach == set(range(t.m))
            assert sum(t.degrees) - t.m == 4 * g - 4 + t.m + 2 * p
