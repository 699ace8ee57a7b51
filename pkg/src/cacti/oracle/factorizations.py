"""Brute-force factorization counts for cacti and constellations.

Every count here is obtained by enumerating permutation tuples; none of the
closed formulas are consulted. Two engines are available:

* a group-algebra convolution over all of ``S_n`` (numpy, ``n <= 8``), used when
  the target product is fixed and transitivity is automatic;
* a pruned tuple search that fixes the last permutation from the target, used
  whenever a per-tuple predicate (transitivity, genus) is needed.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import permutations
from typing import Callable, Sequence

import numpy as np

from ..monodromy import (
    NoSuchConstellation,
    Passport,
    compose,
    constellation_degree,
    count_cycles,
    cycle_lengths,
    genus_faces,
    invert,
    long_cycle,
    orbit_count,
    permutations_of_type,
)

DP_MAX_N = 8

_GROUP_CACHE: dict = {}


def _group(n: int):
    """All of S_n as an array, plus a key -> row lookup table."""
    if n not in _GROUP_CACHE:
        elems = np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)
        powers = n ** np.arange(n, dtype=np.int64)
        keys = elems @ powers
        lookup = np.full(n ** n, -1, dtype=np.int64)
        lookup[keys] = np.arange(len(elems))
        _GROUP_CACHE[n] = (elems, powers, lookup)
    return _GROUP_CACHE[n]


def _padded_class(n: int, parts: Sequence[int]) -> list[tuple[int, ...]] | None:
    if sum(parts) > n:
        return None
    return permutations_of_type(n, tuple(parts) + (1,) * (n - sum(parts)))


def count_factorizations_dp(n: int, classes: Sequence[Sequence[tuple[int, ...]]], target: Sequence[int]) -> int:
    """Number of tuples with ``s_i in classes[i]`` whose product is ``target``."""
    elems, powers, lookup = _group(n)
    bound = math.prod(len(c) for c in classes)
    dtype = np.int64 if bound < 2 ** 62 else object
    f = np.zeros(len(elems), dtype=dtype)
    f[lookup[int(np.dot(np.arange(n), powers))]] = 1
    for cls in classes[:-1]:
        g = np.zeros_like(f)
        for s in cls:
            # row r holds pi; s applied after pi
            idx = lookup[np.asarray(s, dtype=np.int64)[elems] @ powers]
            g[idx] += f
        f = g
    total = 0
    for s in classes[-1]:
        partial = compose(target, invert(s))  # pi with pi then s == target
        total += int(f[lookup[int(np.dot(partial, powers))]])
    return total


def _search_chunk(args) -> int:
    n, classes, target, last_type, predicate, first_choices = args
    count = 0
    k = len(classes)

    def rec(i, prod, chosen):
        nonlocal count
        if i == k - 1:
            last = compose(invert(prod), target)
            if cycle_lengths(last) != last_type:
                return
            if predicate is None or predicate(chosen + [last]):
                count += 1
            return
        for s in classes[i]:
            chosen.append(s)
            rec(i + 1, compose(prod, s), chosen)
            chosen.pop()

    for s in first_choices:
        if k == 1:
            if s == tuple(target) and (predicate is None or predicate([s])):
                count += 1
            continue
        rec(1, s, [s])
    return count


def count_factorizations_search(
    n: int,
    classes: Sequence[Sequence[tuple[int, ...]]],
    target: Sequence[int],
    predicate: Callable | None = None,
    threads: int = 1,
) -> int:
    """Pruned search: iterate ``s_1 .. s_{k-1}``; ``s_k`` is forced by ``target``."""
    target = tuple(target)
    last_type = cycle_lengths(classes[-1][0])
    first = list(classes[0])
    if threads <= 1 or len(first) < 2:
        return _search_chunk((n, classes, target, last_type, predicate, first))
    chunks = [first[i::threads] for i in range(threads)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(_search_chunk, [(n, classes, target, last_type, predicate, c) for c in chunks])
        return sum(parts)


def _ordered_by_size(classes):
    # Class sums are central, so the count is invariant under reordering factors.
    return sorted(classes, key=len)


def weighted_cactus_count(x: Passport, threads: int = 1, engine: str = "auto") -> Fraction:
    """``1/|Sym|``-weighted number of cacti with passport ``x``.

    Counts tuples of the padded cycle types whose product is ``(1 2 ... n)``
    and divides by ``n``.
    """
    n = constellation_degree(x, 0, 1)
    classes = [_padded_class(n, c.parts) for c in x]
    if any(c is None for c in classes):
        return Fraction(0)
    target = long_cycle(n)
    if engine == "auto":
        engine = "dp" if n <= DP_MAX_N else "search"
    if engine == "dp":
        count = count_factorizations_dp(n, classes, target)
    else:
        count = count_factorizations_search(n, _ordered_by_size(classes), target, threads=threads)
    return Fraction(count, n)


def _constellation_worker(args) -> int:
    n, classes, faces, genus, first = args
    k = len(classes)
    count = 0

    def rec(i, prod, chosen):
        nonlocal count
        if i == k:
            if count_cycles(prod) != faces:
                return
            if orbit_count(n, chosen) != 1:
                return
            if genus_faces(n, chosen)[0] == genus:
                count += 1
            return
        for s in classes[i]:
            chosen.append(s)
            rec(i + 1, compose(prod, s), chosen)
            chosen.pop()

    for s in first:
        rec(1, s, [s])
    return count


def weighted_constellation_count(x: Passport, genus: int, faces: int, threads: int = 1) -> Fraction:
    """``sum 1/|Sym|`` over constellations with passport ``x``, genus and faces.

    Counts transitive tuples with the right genus whose ``s_inf`` has ``faces``
    cycles, divided by ``n!``. The first permutation is pinned to one class
    representative (conjugation acts transitively on the class) and the count
    multiplied by the class size.
    """
    n = constellation_degree(x, genus, faces)
    classes = [_padded_class(n, c.parts) for c in x]
    if any(c is None for c in classes):
        return Fraction(0)
    classes = _ordered_by_size(classes)[::-1]
    rep = classes[0][0]
    if threads <= 1:
        count = _constellation_worker((n, classes, faces, genus, [rep]))
    else:
        # fan out over the choices of the second permutation
        second = classes[1] if len(classes) > 1 else None
        if second is None:
            count = _constellation_worker((n, classes, faces, genus, [rep]))
        else:
            chunks = [second[i::threads] for i in range(threads)]
            jobs = [(n, [[rep], c] + list(classes[2:]), faces, genus, [rep]) for c in chunks]
            with ProcessPoolExecutor(max_workers=threads) as pool:
                count = sum(pool.map(_constellation_worker, jobs))
    return Fraction(count * len(classes[0]), math.factorial(n))


def _transitive(tup) -> bool:
    return orbit_count(len(tup[0]), tup) == 1


def weighted_1n_count(sizes: Sequence[int], threads: int = 1) -> Fraction:
    """Number of (1,n)-constellations glued from single polygons of the given sizes.

    Counts transitive tuples on ``n + 1`` points, ``s_i`` a single
    ``sizes[i]``-cycle, with product ``(1 2 ... n)(n+1)``, divided by ``n``.
    """
    sizes = tuple(int(s) for s in sizes)
    if any(s < 2 for s in sizes):
        raise ValueError("polygons need at least 2 sides")
    n = sum(sizes) - len(sizes) - 1
    if n < 1:
        raise NoSuchConstellation(f"sizes {sizes} give n = {n} < 1")
    points = n + 1
    classes = [_padded_class(points, (s,)) for s in sizes]
    if any(c is None for c in classes):
        return Fraction(0)
    target = long_cycle(n) + (n,)
    count = count_factorizations_search(
        points, _ordered_by_size(classes), target, predicate=_transitive, threads=threads
    )
    return Fraction(count, n)
