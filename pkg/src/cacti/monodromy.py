"""Permutations, partitions, passports and monodromy tuples.

Permutations are stored 0-based as tuples of images. The product of a tuple
``(s1, ..., sk)`` applies ``s1`` first; with that convention the faces of the
natural embedding are the cycles of ``s_inf = (s1 ... sk)^-1`` (checked against
explicit face tracing in :func:`trace_constellation_faces`).
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from itertools import permutations as _permutations
from typing import Iterator, Sequence


class NoSuchConstellation(ValueError):
    """Riemann-Hurwitz bookkeeping admits no ground set for the data."""


# -- partitions -------------------------------------------------------------


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def padded(self, n: int) -> "Partition":
        if self.size > n:
            raise ValueError(f"partition {self.parts} does not fit in {n} points")
        return Partition(self.parts + (1,) * (n - self.size))

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


@dataclass(frozen=True)
class Passport:
    """Side counts of the polygons of each color (all parts >= 2)."""

    colors: tuple[Partition, ...]

    def __post_init__(self):
        colors = tuple(c if isinstance(c, Partition) else Partition(tuple(c)) for c in self.colors)
        if not colors:
            raise ValueError("a passport needs at least one color")
        for c in colors:
            if not c.parts or min(c.parts) < 2:
                raise ValueError(f"passport entries must be >= 2: {c.parts}")
        object.__setattr__(self, "colors", colors)

    @classmethod
    def of(cls, *colors: Sequence[int]) -> "Passport":
        return cls(tuple(Partition(tuple(c)) for c in colors))

    @property
    def k(self) -> int:
        return len(self.colors)

    def __iter__(self):
        return iter(self.colors)

    def __str__(self) -> str:
        return ";".join(str(c) for c in self.colors)


_PASSPORT_RE = re.compile(r"^\d+(,\d+)*(;\d+(,\d+)*)*$")


def parse_passport(text: str) -> Passport:
    """Parse ``"2,2;3"`` into ``Passport([2,2],[3])``."""
    if not _PASSPORT_RE.match(text):
        raise ValueError(f"malformed passport {text!r}")
    return Passport.of(*([int(x) for x in color.split(",")] for color in text.split(";")))


def passport_aut(x: Partition | Sequence[int]) -> int:
    """``a_2! a_3! ...`` where ``a_j`` is the multiplicity of part ``j``."""
    parts = x.parts if isinstance(x, Partition) else tuple(x)
    return math.prod(math.factorial(m) for m in Counter(parts).values())


def centralizer_order(parts: Sequence[int]) -> int:
    """``z_lambda = prod_j j^{m_j} m_j!``."""
    return math.prod(j ** m * math.factorial(m) for j, m in Counter(parts).items())


def constellation_degree(x: Passport, genus: int, faces: int) -> int:
    """Ground-set size forced by Riemann-Hurwitz: ``2 - 2g - p + sum(n_i - p_i)``."""
    n = 2 - 2 * genus - faces + sum(c.size - c.length for c in x)
    if n < 1 or n < max(max(c.parts) for c in x):
        raise NoSuchConstellation(f"no constellation with passport {x}, genus {genus}, {faces} faces")
    return n


# -- permutations -----------------------------------------------------------


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]  # 0-based

    def __post_init__(self):
        imgs = tuple(self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a bijection: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        """Build from 1-based cycles, e.g. ``from_cycles(3, (1, 2))``."""
        imgs = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                imgs[a - 1] = b - 1
        return cls(tuple(imgs))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def then(self, other: "Permutation") -> "Permutation":
        """Apply ``self`` first, then ``other``."""
        return Permutation(compose(self.images, other.images))

    def inverse(self) -> "Permutation":
        return Permutation(invert(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        return cycles_of(self.images)

    def __str__(self) -> str:
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cyc)


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """``p`` first, then ``q``."""
    return tuple(q[x] for x in p)


def invert(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def cycles_of(p: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = p[x]
        out.append(tuple(cyc))
    return out


def count_cycles(p: Sequence[int]) -> int:
    seen = [False] * len(p)
    c = 0
    for start in range(len(p)):
        if not seen[start]:
            c += 1
            x = start
            while not seen[x]:
                seen[x] = True
                x = p[x]
    return c


def cycle_lengths(p: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if not seen[start]:
            length = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = p[x]
                length += 1
            out.append(length)
    return tuple(sorted(out, reverse=True))


def cycle_type(p: Permutation | Sequence[int]) -> Partition:
    imgs = p.images if isinstance(p, Permutation) else p
    return Partition(cycle_lengths(imgs))


def long_cycle(n: int) -> tuple[int, ...]:
    """The 0-based image tuple of ``(1 2 ... n)``."""
    return tuple((i + 1) % n for i in range(n))


def iterate_cycle_type(n: int, lam: Partition | Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Every permutation of cycle type ``lam`` on ``n`` points, lexicographically."""
    return iter(permutations_of_type(n, lam))


def permutations_of_type(n: int, lam: Partition | Sequence[int]) -> list[tuple[int, ...]]:
    parts = tuple(lam.parts if isinstance(lam, Partition) else lam)
    if sum(parts) != n:
        raise ValueError(f"cycle type {parts} does not sum to {n}")
    return list(_class_cache(n, tuple(sorted(parts, reverse=True))))


_CLASS_CACHE: dict = {}


def _class_cache(n: int, parts: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    key = (n, parts)
    if key in _CLASS_CACHE:
        return _CLASS_CACHE[key]
    out = []
    imgs = [None] * n

    def rec(remaining: list[int], lengths: Counter):
        if not remaining:
            out.append(tuple(imgs))
            return
        x = remaining[0]
        rest = remaining[1:]
        for length in sorted(lengths):
            if lengths[length] == 0:
                continue
            lengths[length] -= 1
            for others in _permutations(rest, length - 1):
                cyc = (x,) + others
                for a, b in zip(cyc, cyc[1:] + (x,)):
                    imgs[a] = b
                left = [y for y in rest if y not in others]
                rec(left, lengths)
            lengths[length] += 1

    rec(list(range(n)), Counter(parts))
    out.sort()
    result = tuple(out)
    _CLASS_CACHE[key] = result
    return result


# -- monodromy tuples -------------------------------------------------------


@dataclass(frozen=True)
class MonodromyTuple:
    n: int
    sigma: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        sig = tuple(s.images if isinstance(s, Permutation) else tuple(s) for s in self.sigma)
        for s in sig:
            if len(s) != self.n or sorted(s) != list(range(self.n)):
                raise ValueError("every permutation must act on the same n points")
        object.__setattr__(self, "sigma", sig)

    @classmethod
    def from_cycles(cls, n: int, *perms: Sequence[Sequence[int]]) -> "MonodromyTuple":
        """Each argument is a list of 1-based cycles for one color."""
        return cls(n, tuple(Permutation.from_cycles(n, *cycles).images for cycles in perms))

    @property
    def k(self) -> int:
        return len(self.sigma)

    def product(self) -> tuple[int, ...]:
        prod = tuple(range(self.n))
        for s in self.sigma:
            prod = compose(prod, s)
        return prod

    def sigma_infinity(self) -> tuple[int, ...]:
        return invert(self.product())


def product_of(perms: Sequence[Sequence[int]], n: int) -> tuple[int, ...]:
    prod = tuple(range(n))
    for s in perms:
        prod = compose(prod, s)
    return prod


def is_transitive(t: MonodromyTuple | tuple[int, Sequence[Sequence[int]]]) -> bool:
    n, sigma = (t.n, t.sigma) if isinstance(t, MonodromyTuple) else t
    return orbit_count(n, sigma) <= 1


def orbit_count(n: int, sigma: Sequence[Sequence[int]]) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for s in sigma:
        for x in range(n):
            a, b = find(x), find(s[x])
            if a != b:
                parent[a] = b
                comps -= 1
    return comps


def euler_data(t: MonodromyTuple) -> tuple[int, int]:
    """``(genus, faces)`` of a transitive tuple via Riemann-Hurwitz."""
    if not is_transitive(t):
        raise ValueError("euler_data needs a transitive tuple")
    return genus_faces(t.n, t.sigma)


def genus_faces(n: int, sigma: Sequence[Sequence[int]]) -> tuple[int, int]:
    s_inf = invert(product_of(sigma, n))
    faces = count_cycles(s_inf)
    ramification = sum(n - count_cycles(s) for s in sigma) + (n - faces)
    chi = 2 * n - ramification
    assert chi % 2 == 0 and chi <= 2, f"impossible Euler characteristic {chi}"
    return (2 - chi) // 2, faces


def trace_constellation_faces(t: MonodromyTuple) -> tuple[int, int, int]:
    """Face-trace the natural embedding of the polygons of a tuple.

    Vertices are the ``n`` points, polygon sides are ``v -> sigma_i(v)`` for
    every non-fixed ``v``. Around a vertex the half-edges are, counterclockwise,
    ``out_1, in_1, out_2, in_2, ...`` with colors whose polygon misses the
    vertex skipped. Faces are traced with the face on the left.

    Returns ``(polygon_faces, exterior_faces, euler_characteristic)``.
    """
    n, sigma = t.n, t.sigma
    inv = [invert(s) for s in sigma]
    colors_at = [[i for i, s in enumerate(sigma) if s[v] != v] for v in range(n)]
    # dart (i, u, +1): u -> sigma_i(u); dart (i, u, -1): sigma_i(u) -> u.
    darts = [(i, u, d) for i, s in enumerate(sigma) for u in range(n) if s[u] != u for d in (1, -1)]

    def successor(dart):
        i, u, d = dart
        if d == 1:
            w = sigma[i][u]
            return (i, w, 1)
        # arrived at u through out_i; next clockwise half-edge is in_{previous color}
        cols = colors_at[u]
        j = cols[(cols.index(i) - 1) % len(cols)]
        return (j, inv[j][u], -1)

    seen = set()
    polygon_faces = exterior = 0
    for d in darts:
        if d in seen:
            continue
        x = d
        while x not in seen:
            seen.add(x)
            x = successor(x)
        if d[2] == 1:
            polygon_faces += 1
        else:
            exterior += 1
    vertices = sum(1 for v in range(n) if colors_at[v])
    edges = len(darts) // 2
    return polygon_faces, exterior, vertices - edges + polygon_faces + exterior
