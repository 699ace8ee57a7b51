"""Topological types of circle gluings with pairwise contacts.

A type is a perfect matching on contact slots: circle ``c`` carries ``k_c``
slots in the order met along the circle, and every slot is glued to a slot of
a circle of another color. Two matchings describe the same type when they
differ by rotating the slots of each circle (and, optionally, by swapping
circles of equal color and length).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from ..algebra import Poly
from ..circles import CircleSet, length_poly


@dataclass(frozen=True)
class TopologicalType:
    colors: tuple[int, ...]
    degrees: tuple[int, ...]
    partner: tuple[int, ...]
    sym: int
    faces: int
    component_genera: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.colors)

    @property
    def contacts(self) -> int:
        return len(self.partner) // 2

    @property
    def genus(self) -> int:
        return sum(self.component_genera)

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    @property
    def euler_characteristic(self) -> int:
        return self.m - self.contacts + self.faces

    @property
    def offsets(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate((0,) + self.degrees[:-1]))

    def slots(self, c: int) -> range:
        off = self.offsets[c]
        return range(off, off + self.degrees[c])

    def matching(self) -> list[tuple[int, int]]:
        return [(a, b) for a, b in enumerate(self.partner) if a < b]

    def neighbours(self) -> frozenset[tuple[int, int]]:
        """Pairs of circles that touch at least once."""
        owner = self.owners()
        return frozenset(tuple(sorted((owner[a], owner[b]))) for a, b in self.matching())

    def owners(self) -> list[int]:
        return [c for c, d in enumerate(self.degrees) for _ in range(d)]

    def to_json(self) -> dict:
        return {
            "circles": [{"color": col, "id": j} for j, col in enumerate(self.colors)],
            "contacts": [list(self.slots(c)) for c in range(self.m)],
            "matching": [list(p) for p in self.matching()],
            "genus": self.genus,
            "faces": self.faces,
            "sym": self.sym,
        }


def face_trace(colors: Sequence[int], degrees: Sequence[int], partner: Sequence[int]):
    """Trace faces of the 4-valent gluing graph.

    Each contact is a vertex where two circles touch. Counterclockwise around
    it the arc ends are ``a_out, a_in, b_out, b_in``: the two ends of each
    circle are adjacent, so the circles touch without crossing. Faces are
    traced with the face on the left, every circle running counterclockwise
    around its own disc.

    Returns ``(faces, disc_faces, genus per component, components)`` where
    ``faces`` counts all faces, discs included.
    """
    m = len(degrees)
    offsets = list(itertools.accumulate([0] + list(degrees[:-1])))
    owner = [c for c, d in enumerate(degrees) for _ in range(d)]

    def nxt(h):
        c = owner[h]
        return offsets[c] + (h - offsets[c] + 1) % degrees[c]

    def prv(h):
        c = owner[h]
        return offsets[c] + (h - offsets[c] - 1) % degrees[c]

    # half-edge ends at the contact of slot h: ("out", h) starts arc h, ("in", h) ends arc prv(h)
    rotation = {}
    for h, g in enumerate(partner):
        if h < g:
            ring = [("out", h), ("in", h), ("out", g), ("in", g)]
            for i, end in enumerate(ring):
                rotation[end] = (ring, i)

    def step(dart):
        arc, d = dart  # arc h runs from slot h to slot nxt(h)
        arrive = ("in", nxt(arc)) if d == 1 else ("out", arc)
        ring, i = rotation[arrive]
        kind, h = ring[(i - 1) % 4]
        return (h, 1) if kind == "out" else (prv(h), -1)

    darts = [(h, d) for h in range(len(partner)) for d in (1, -1)]
    seen = set()
    orbits = []
    for dart in darts:
        if dart in seen:
            continue
        orbit = []
        x = dart
        while x not in seen:
            seen.add(x)
            orbit.append(x)
            x = step(x)
        orbits.append(orbit)

    disc = 0
    for orbit in orbits:
        if all(d == 1 for _, d in orbit) and len({owner[h] for h, _ in orbit}) == 1:
            c = owner[orbit[0][0]]
            if len(orbit) == degrees[c]:
                disc += 1
    if disc != m:
        raise AssertionError("a circle does not bound its own disc under the rotation rule")

    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for h, g in enumerate(partner):
        parent[find(owner[h])] = find(owner[g])
    comps: dict = {}
    for c in range(m):
        comps.setdefault(find(c), []).append(c)
    components = tuple(tuple(v) for v in sorted(comps.values()))
    genera = []
    for comp in components:
        cs = set(comp)
        v = sum(degrees[c] for c in comp) // 2
        e = sum(degrees[c] for c in comp)
        f = sum(1 for orbit in orbits if owner[orbit[0][0]] in cs)
        chi = v - e + f
        assert chi % 2 == 0 and chi <= 2
        genera.append((2 - chi) // 2)
    return len(orbits), disc, tuple(genera), components


def _matchings(slot_colors: Sequence[int]) -> Iterator[tuple[int, ...]]:
    n = len(slot_colors)
    partner = [-1] * n

    def rec():
        try:
            first = partner.index(-1)
        except ValueError:
            yield tuple(partner)
            return
        for j in range(first + 1, n):
            if partner[j] == -1 and slot_colors[j] != slot_colors[first]:
                partner[first], partner[j] = j, first
                yield from rec()
                partner[first] = partner[j] = -1

    if n % 2 == 0:
        yield from rec()


class _SymmetryGroup:
    """Slot relabelings: per-circle rotations composed with allowed circle swaps."""

    def __init__(self, degrees, swappable):
        m = len(degrees)
        self.offsets = list(itertools.accumulate([0] + list(degrees[:-1])))
        classes: dict = {}
        for c in range(m):
            classes.setdefault(swappable(c), []).append(c)
        perm_choices = []
        for members in classes.values():
            perm_choices.append([(members, p) for p in itertools.permutations(members)])
        circle_perms = []
        for combo in itertools.product(*perm_choices):
            pi = list(range(m))
            for members, p in combo:
                for src, dst in zip(members, p):
                    pi[src] = dst
            circle_perms.append(pi)
        self.maps = []
        for pi in circle_perms:
            for shifts in itertools.product(*(range(d) for d in degrees)):
                mp = []
                for c, d in enumerate(degrees):
                    tgt = self.offsets[pi[c]]
                    for s in range(d):
                        mp.append(tgt + (s + shifts[c]) % d)
                self.maps.append(mp)

    def image(self, mp, partner):
        out = [0] * len(partner)
        for h, g in enumerate(partner):
            out[mp[h]] = mp[g]
        return tuple(out)


def _degree_vectors(m: int, total: int) -> Iterator[tuple[int, ...]]:
    """Positive integer vectors of length ``m`` summing to ``total``."""
    if m == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - m + 2):
        for rest in _degree_vectors(m - 1, total - first):
            yield (first,) + rest


def _feasible(colors, degrees) -> bool:
    by_color: dict = {}
    for c, d in zip(colors, degrees):
        by_color[c] = by_color.get(c, 0) + d
    total = sum(degrees)
    return total % 2 == 0 and all(2 * v <= total for v in by_color.values())


def types_for_degrees(
    colors: Sequence[int],
    degrees: Sequence[int],
    swappable=None,
) -> Iterator[TopologicalType]:
    """All types with the given contact count on each circle."""
    colors = tuple(colors)
    degrees = tuple(degrees)
    if not _feasible(colors, degrees):
        return
    swappable = swappable or (lambda c: c)
    group = _SymmetryGroup(degrees, lambda c: (swappable(c), degrees[c]))
    slot_colors = [colors[c] for c, d in enumerate(degrees) for _ in range(d)]
    for partner in _matchings(slot_colors):
        minimal = True
        hits = 0
        for mp in group.maps:
            img = group.image(mp, partner)
            if img < partner:
                minimal = False
                break
            if img == partner:
                hits += 1
        if not minimal:
            continue
        faces, _, genera, comps = face_trace(colors, degrees, partner)
        yield TopologicalType(colors, degrees, partner, hits, faces - len(colors), genera, comps)


def enumerate_topological_types(
    circles: CircleSet | Sequence[int],
    *,
    genus: int | None = None,
    faces: int | None = None,
    connected: bool = True,
    contact_counts: Sequence[int] | None = None,
    max_grade: int | None = None,
    identify_equal: bool = True,
) -> list[TopologicalType]:
    """Isomorphism classes of pairwise-contact types satisfying the constraints.

    ``circles`` is a :class:`CircleSet` or just a list of colors (all circles
    distinguishable). With ``identify_equal`` circles of equal color and length
    may be swapped by an isomorphism. Types never contain isolated circles.
    ``max_grade`` bounds ``sum(k_c - 1)``, the total degree of the volume.
    """
    if isinstance(circles, CircleSet):
        colors = circles.colors
        if identify_equal:
            canon = {}
            for j in range(circles.m):
                canon[j] = next(i for i in range(j + 1) if circles.interchangeable(i, j))
            swappable = canon.__getitem__
        else:
            swappable = None
    else:
        colors = tuple(circles)
        swappable = None
    m = len(colors)
    if m < 2:
        return []

    if contact_counts is not None:
        vectors = [tuple(contact_counts)]
    elif connected and genus is not None and faces is not None:
        contacts = m + faces - 2 + 2 * genus
        vectors = list(_degree_vectors(m, 2 * contacts)) if contacts >= m - 1 else []
    elif max_grade is not None:
        vectors = [v for total in range(m, m + max_grade + 1) for v in _degree_vectors(m, total)]
    else:
        raise ValueError("need contact_counts, (genus, faces) for connected types, or max_grade")

    if swappable is not None:
        # a swap of equal circles permutes the degree vector, so keep one
        # representative: degrees non-increasing within each class
        classes: dict = {}
        for c in range(m):
            classes.setdefault(swappable(c), []).append(c)
        vectors = [
            v for v in vectors
            if all(v[a] >= v[b] for cl in classes.values() for a, b in zip(cl, cl[1:]))
        ]

    out = []
    for degrees in vectors:
        for t in types_for_degrees(colors, degrees, swappable):
            if connected and not t.connected:
                continue
            if faces is not None and t.faces != faces:
                continue
            if genus is not None and t.genus != genus:
                continue
            out.append(t)
    out.sort(key=lambda t: (t.degrees, t.partner))
    return out


def type_volume(t: TopologicalType, lengths: Sequence) -> Poly:
    """``(1/|Sym|) prod_c l_c^(k_c - 1) / (k_c - 1)!``."""
    vol = Poly.const(Fraction(1, t.sym))
    for x, k in zip(lengths, t.degrees):
        p = x if isinstance(x, Poly) else length_poly(x)
        vol = vol * (p ** (k - 1)) * Fraction(1, math.factorial(k - 1))
    return vol


def gluing_volume(
    circles: CircleSet, genus: int, faces: int, identify_equal: bool = True
) -> Poly:
    """Volume of the space of connected gluings with given genus and faces."""
    types = enumerate_topological_types(circles, genus=genus, faces=faces, identify_equal=identify_equal)
    vol = Poly()
    for t in types:
        vol = vol + type_volume(t, circles.lengths)
    return vol
