"""Direct enumeration of plane cacti and the polygon-merging bijection.

A cactus with one polygon per color is stored as the counterclockwise vertex
cycle of each polygon. At a shared vertex the polygons are forced into
increasing color order, so these cycles determine the embedding.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


def _relabel(cycles: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    names: dict = {}
    out = []
    for cyc in cycles:
        row = []
        for v in cyc:
            if v not in names:
                names[v] = len(names)
            row.append(names[v])
        out.append(tuple(row))
    return tuple(out)


def canonical_cycles(cycles: Sequence[Sequence[int]]) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Minimal relabelled encoding over all polygon rotations, and ``|Sym|``."""
    best = None
    hits = 0
    for shifts in itertools.product(*(range(len(c)) for c in cycles)):
        rotated = [tuple(c[s:]) + tuple(c[:s]) for c, s in zip(cycles, shifts)]
        enc = _relabel(rotated)
        if best is None or enc < best:
            best, hits = enc, 1
        elif enc == best:
            hits += 1
    return best, hits


def _incidence(cycles):
    adj: dict = {}
    for i, cyc in enumerate(cycles):
        for v in cyc:
            adj.setdefault(("P", i), []).append(("V", v))
            adj.setdefault(("V", v), []).append(("P", i))
    return adj


def _path(adj, src, dst):
    prev = {src: None}
    queue = deque([src])
    while queue:
        node = queue.popleft()
        if node == dst:
            break
        for nxt in adj.get(node, ()):
            if nxt not in prev:
                prev[nxt] = node
                queue.append(nxt)
    if dst not in prev:
        raise ValueError("nodes are not connected")
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    return path[::-1]


def is_cactus(sizes: Sequence[int], cycles: Sequence[Sequence[int]]) -> bool:
    """Tree-shaped, connected, no repeated vertex on a polygon."""
    if any(len(c) != s or len(set(c)) != s for c, s in zip(cycles, sizes)):
        return False
    verts = {v for c in cycles for v in c}
    if len(verts) != sum(sizes) - len(sizes) + 1:
        return False
    adj = _incidence(cycles)
    seen = {("P", 0)}
    stack = [("P", 0)]
    while stack:
        for nxt in adj[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen) == len(adj)


@dataclass(frozen=True)
class PlaneCactus:
    """Cactus with polygon ``i`` of color ``i + 1`` and ``sizes[i]`` sides."""

    sizes: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]
    sym: int = field(default=1, compare=False)

    @classmethod
    def from_cycles(cls, sizes: Sequence[int], cycles: Sequence[Sequence[int]]) -> "PlaneCactus":
        sizes = tuple(sizes)
        if not is_cactus(sizes, cycles):
            raise ValueError("cycles do not describe a cactus")
        canon, sym = canonical_cycles(cycles)
        return cls(sizes, canon, sym)

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def n(self) -> int:
        return sum(self.sizes) - self.k + 1

    @property
    def polygons(self) -> list[tuple[int, int]]:
        return [(i + 1, s) for i, s in enumerate(self.sizes)]

    @property
    def weight(self) -> Fraction:
        return Fraction(1, self.sym)

    @property
    def attachments(self) -> dict[int, tuple[int, int, int]]:
        """BFS tree from polygon 0: child -> (parent, parent slot, own slot)."""
        where = {}
        for i, cyc in enumerate(self.cycles):
            for slot, v in enumerate(cyc):
                where.setdefault(v, []).append((i, slot))
        out = {}
        seen = {0}
        queue = deque([0])
        while queue:
            p = queue.popleft()
            for pslot, v in enumerate(self.cycles[p]):
                for c, cslot in where[v]:
                    if c not in seen:
                        seen.add(c)
                        out[c] = (p, pslot, cslot)
                        queue.append(c)
        return out

    def monodromy(self) -> tuple[tuple[int, ...], ...]:
        """Polygon cycles as permutations of the ``n`` vertices."""
        out = []
        for cyc in self.cycles:
            imgs = list(range(self.n))
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                imgs[a] = b
            out.append(tuple(imgs))
        return tuple(out)


def _rooted_trees(k: int):
    """Parent arrays of all trees on ``0..k-1`` rooted at 0."""
    for parents in itertools.product(range(k), repeat=k - 1):
        par = (None,) + parents
        ok = True
        for v in range(1, k):
            seen = set()
            x = v
            while x != 0:
                if x in seen or par[x] == x:
                    ok = False
                    break
                seen.add(x)
                x = par[x]
            if not ok:
                break
        if ok:
            yield par


def _glue(sizes, par, slots):
    """Union-find gluing: child ``c`` attaches its slot 0 to ``slots[c]`` of its parent."""
    ids = {}
    for i, s in enumerate(sizes):
        for j in range(s):
            ids[(i, j)] = (i, j)

    def find(x):
        while ids[x] != x:
            ids[x] = ids[ids[x]]
            x = ids[x]
        return x

    for c in range(1, len(sizes)):
        ids[find((c, 0))] = find((par[c], slots[c]))
    return [tuple(find((i, j)) for j in range(s)) for i, s in enumerate(sizes)]


def enumerate_plane_cacti(sizes: Sequence[int]) -> list[PlaneCactus]:
    """Every cactus with one polygon per color, once up to isomorphism."""
    sizes = tuple(int(s) for s in sizes)
    if any(s < 2 for s in sizes):
        raise ValueError("polygons need at least 2 sides")
    k = len(sizes)
    if k == 1:
        return [PlaneCactus.from_cycles(sizes, [tuple(range(sizes[0]))])]
    found: dict = {}
    for par in _rooted_trees(k):
        for choice in itertools.product(*(range(sizes[par[c]]) for c in range(1, k))):
            slots = (None,) + choice
            cyc = _glue(sizes, par, slots)
            cactus = PlaneCactus.from_cycles(sizes, cyc)
            found.setdefault(cactus.cycles, cactus)
    return [found[key] for key in sorted(found)]


# -- merging bijection ------------------------------------------------------


@dataclass(frozen=True)
class MarkedPolygon:
    """An ``size``-gon whose vertex ``positions[j]`` carries label ``j + 2``.

    Normalized by rotation so that label 2 sits at vertex 0.
    """

    size: int
    positions: tuple[int, ...]

    def __post_init__(self):
        pos = tuple(self.positions)
        if any(not 0 <= p < self.size for p in pos):
            raise ValueError("mark outside the polygon")
        if pos:
            shift = pos[0]
            pos = tuple((p - shift) % self.size for p in pos)
        object.__setattr__(self, "positions", pos)

    @property
    def marks(self) -> dict[int, frozenset[int]]:
        out: dict = {}
        for j, p in enumerate(self.positions):
            out.setdefault(p, set()).add(j + 2)
        return {p: frozenset(s) for p, s in sorted(out.items())}


def all_markings(n: int, k: int) -> list[MarkedPolygon]:
    """All ``n^(k-2)`` normalized markings of an ``n``-gon by labels ``2..k``."""
    return [MarkedPolygon(n, (0,) + rest) for rest in itertools.product(range(n), repeat=k - 2)]


def merge_step(cycles: list[list[int]], i: int) -> int:
    """Merge polygon ``i`` into polygon 0 in place; return the marked vertex."""
    adj = _incidence(cycles)
    path = _path(adj, ("P", 0), ("P", i))
    a = path[1][1]
    b = path[-2][1]
    m = cycles[0]
    pos = m.index(a)
    m_rot = m[pos:] + m[:pos]  # a, a', x_2, ...
    q = cycles[i]
    qpos = q.index(b)
    q_rot = q[qpos:] + q[:qpos]  # b, u_1, ..., u_{n_i-1}
    cycles[0] = [a] + q_rot[1:] + m_rot[1:]
    cycles[i] = []
    return b


def split_step(cycles: list[list[int]], i: int, b: int, size_i: int) -> None:
    """Inverse of :func:`merge_step`: cut polygon ``i`` back out of polygon 0."""
    m = cycles[0]
    if b in m:
        a = b
    else:
        live = [c if c else [] for c in cycles]
        adj = _incidence([c for c in live])
        if ("V", b) not in adj:
            raise ValueError(f"marked vertex {b} is not on the current cactus")
        path = _path(adj, ("V", b), ("P", 0))
        a = path[-2][1]
    pos = m.index(a)
    m_rot = m[pos:] + m[:pos]
    if len(m_rot) - (size_i - 1) < 2:
        raise ValueError("marking cannot be split into polygons of the recorded sizes")
    arc = m_rot[1:size_i]
    if b in arc:
        raise ValueError("marking cannot be split into polygons of the recorded sizes")
    cycles[i] = [b] + arc
    cycles[0] = [a] + m_rot[size_i:]


def encode_cactus(c: PlaneCactus) -> MarkedPolygon:
    """Merge colors ``2..k`` into color 1 in turn, marking the cut vertices."""
    cycles = [list(cyc) for cyc in c.cycles]
    marks = {}
    for i in range(1, c.k):
        marks[i] = merge_step(cycles, i)
    final = cycles[0]
    return MarkedPolygon(len(final), tuple(final.index(marks[i]) for i in range(1, c.k)))


def decode_cactus(m: MarkedPolygon, sizes: Sequence[int]) -> PlaneCactus:
    sizes = tuple(sizes)
    k = len(sizes)
    if m.size != sum(sizes) - k + 1 or len(m.positions) != k - 1:
        raise ValueError("marking does not match the recorded sizes")
    cycles: list[list[int]] = [list(range(m.size))] + [[] for _ in range(k - 1)]
    for i in range(k - 1, 0, -1):
        split_step(cycles, i, m.positions[i - 1], sizes[i])
    if len(cycles[0]) != sizes[0]:
        raise ValueError("marking cannot be split into polygons of the recorded sizes")
    return PlaneCactus.from_cycles(sizes, cycles)
