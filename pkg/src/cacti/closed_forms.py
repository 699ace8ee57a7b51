"""Closed-form counts and volumes, and the polynomial/volume asymptotic bridge."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .algebra import InterpolationError, Poly, interpolate, poly_sum, top_homogeneous_part
from .circles import CircleSet
from .monodromy import NoSuchConstellation, Partition, Passport, constellation_degree, passport_aut


def falling_factorial(a: int, r: int) -> int:
    """``a (a-1) ... (a-r+1)``; zero as soon as any factor is <= 0."""
    out = 1
    for j in range(r):
        f = a - j
        if f <= 0:
            return 0
        out *= f
    return out


def cacti_distinct(sizes: Sequence[int | str]) -> Fraction | Poly:
    """Weighted number of cacti with one polygon of each of ``k`` colors: ``n^(k-2)``.

    Integer sizes give an exact number (``1/n`` when ``k = 1``). Symbol names
    give the polynomial in those variables.
    """
    k = len(sizes)
    if k == 0:
        raise ValueError("need at least one polygon")
    if all(isinstance(s, int) for s in sizes):
        if any(s < 2 for s in sizes):
            raise ValueError("polygons need at least 2 sides")
        n = sum(sizes) - k + 1
        return Fraction(n) ** (k - 2)
    if k < 2:
        raise ValueError("symbolic mode needs k >= 2")
    n = poly_sum(Poly.coerce(s) if not isinstance(s, str) else Poly.var(s) for s in sizes) - (k - 1)
    return n ** (k - 2)


def cacti_passport(x: Passport, variant: str = "corrected") -> Fraction:
    """Weighted number of cacti with passport ``x``.

    ``corrected`` uses a falling factorial of length ``p_i - 1`` starting at
    ``n - n_i + p_i - 1``; ``printed`` uses length ``p_i`` starting at ``n - n_i``.
    """
    n = constellation_degree(x, 0, 1)
    value = Fraction(n) ** (x.k - 2)
    for part in x:
        ni, pi = part.size, part.length
        if variant == "corrected":
            ff = falling_factorial(n - ni + pi - 1, pi - 1)
        elif variant == "printed":
            ff = falling_factorial(n - ni, pi)
        else:
            raise ValueError(f"unknown variant {variant!r}")
        value *= Fraction(ff, passport_aut(part))
    return value


def cactus_passports(n: int) -> Iterator[Passport]:
    """Every passport of a cactus on ``n`` vertices, colors in sorted order.

    Counts do not depend on the order of colors, so each multiset of
    partitions is produced once.
    """
    if n < 2:
        return
    # a partition contributes n_i - p_i >= 1, and these add up to n - 1
    by_weight: dict = {}
    for size in range(2, n + 1):
        for lam in _partitions_min2(size):
            w = size - len(lam)
            by_weight.setdefault(w, []).append(Partition(lam))
    pool = sorted(
        (p for ps in by_weight.values() for p in ps),
        key=lambda p: (p.size - p.length, p.parts),
    )

    def rec(start, left, acc):
        if left == 0:
            yield Passport(tuple(acc))
            return
        for i in range(start, len(pool)):
            p = pool[i]
            w = p.size - p.length
            if w > left:
                continue
            acc.append(p)
            yield from rec(i, left - w, acc)
            acc.pop()

    yield from rec(0, n - 1, [])


def _partitions_min2(total: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = total if largest is None else largest
    if total == 0:
        yield ()
        return
    for first in range(min(total, largest), 1, -1):
        for rest in _partitions_min2(total - first, first):
            yield (first,) + rest


# -- (1,n)-constellations ---------------------------------------------------


def constellations_1n_closed(k: int, n: int) -> int:
    if k < 2 or n < 1:
        raise ValueError("need k >= 2 and n >= 1")
    return (k - 1) * n ** (k - 2)


def _power_or_cancel(base: int, exp: int, factor: int) -> Fraction:
    """``factor * base^exp``; at ``exp = -1`` the factor always equals ``base``
    (the chosen polygons are all polygons), so the product is 1 even if ``base = 0``."""
    if exp >= 0:
        return Fraction(factor * base ** exp)
    if exp == -1 and factor == base:
        return Fraction(1)
    return Fraction(factor) * Fraction(base) ** exp


def constellations_1n_sum(sizes: Sequence[int]) -> Fraction:
    """Double sum over the small-cycle polygons and the polygons touching it."""
    sizes = tuple(sizes)
    k = len(sizes)
    n = sum(sizes) - k - 1
    total = Fraction(0)
    for p in range(2, k + 1):
        for q in range(0, k - p + 1):
            head = math.comb(p + q, p) * (p - 1) ** q
            for chosen in itertools.combinations(sizes, p + q):
                m = sum(chosen)
                total += head * _power_or_cancel(n + 1 - p, k - p - q - 1, m - 2 * p - q)
    return total


def constellations_1n_pq(k: int, n: int) -> Fraction:
    """The double sum after averaging over the choice of polygons."""
    total = Fraction(0)
    for p in range(2, k + 1):
        for q in range(0, k - p + 1):
            multi = math.factorial(k) // (math.factorial(p) * math.factorial(q) * math.factorial(k - p - q))
            bracket = n * p + n * q + p + q - k * p
            if k - p - q - 1 >= 0:
                term = Fraction(bracket * (n - p + 1) ** (k - p - q - 1))
            elif n - p + 1 != 0:
                term = Fraction(bracket, n - p + 1)
            else:
                # bracket = k (n + 1 - p) here, so the quotient is k
                term = Fraction(k)
            total += multi * (p - 1) ** q * term
    return total / k


def constellations_1n_reduced(k: int, n: int) -> Fraction:
    """``(1/(nk)) sum_p C(k,p) (np + p - k) n^(k-p)``."""
    s = sum(math.comb(k, p) * (n * p + p - k) * Fraction(n) ** (k - p) for p in range(2, k + 1))
    return s / (n * k)


# -- circles ----------------------------------------------------------------


def circle_cacti_distinct(lengths: Sequence[str | Fraction | int]) -> Poly:
    """``(l_1 + ... + l_k)^(k-2)`` for circles of pairwise distinct colors."""
    k = len(lengths)
    if k < 2:
        raise ValueError("need at least 2 circles")
    total = poly_sum(Poly.var(x) if isinstance(x, str) else Poly.const(x) for x in lengths)
    return total ** (k - 2)


def circle_cacti_multi(c: CircleSet) -> Poly:
    """``l^(k-2) prod_i (l - l_i)^(m_i - 1) / |Aut_i|``.

    ``|Aut_i|`` counts length-preserving permutations of the circles of color
    ``i``; distinct symbols count as unequal lengths.
    """
    if c.k < 2:
        raise ValueError("need at least 2 colors")
    total = c.total()
    vol = total ** (c.k - 2)
    for color in c.color_list:
        vol = vol * (total - c.color_total(color)) ** (c.multiplicity(color) - 1)
        vol = vol * Fraction(1, c.aut(color))
    return vol


def cayley(k: int) -> int:
    if k < 1:
        raise ValueError("k >= 1")
    return 1 if k <= 2 else k ** (k - 2)


def stratum_dimension(genus: int, m: int, faces: int) -> int:
    return 4 * genus - 4 + m + 2 * faces


# -- asymptotics ------------------------------------------------------------


@dataclass(frozen=True)
class Shape:
    """Number of polygons (or circles) of each color; sizes stay symbolic."""

    multiplicities: tuple[int, ...]

    @classmethod
    def of(cls, *mult: int) -> "Shape":
        return cls(tuple(mult))

    def slots(self) -> list[tuple[int, int]]:
        return [(c + 1, j + 1) for c, mc in enumerate(self.multiplicities) for j in range(mc)]

    @property
    def m(self) -> int:
        return sum(self.multiplicities)

    def size_vars(self) -> list[str]:
        return [f"n_{c}_{j}" for c, j in self.slots()]

    def length_vars(self) -> list[str]:
        return [f"l_{c}_{j}" for c, j in self.slots()]

    def passport(self, sizes: Sequence[int]) -> Passport:
        it = iter(sizes)
        return Passport.of(*[[next(it) for _ in range(mc)] for mc in self.multiplicities])

    def circles(self) -> CircleSet:
        return CircleSet.symbolic(list(self.multiplicities))


def labelled_constellation_count(
    shape: Shape, sizes: Sequence[int], genus: int, faces: int, threads: int = 1
) -> Fraction:
    """Weighted count with polygons of equal color made distinguishable."""
    from .oracle.factorizations import weighted_constellation_count

    x = shape.passport(sizes)
    try:
        w = weighted_constellation_count(x, genus, faces, threads=threads)
    except NoSuchConstellation:
        return Fraction(0)
    return w * math.prod(passport_aut(p) for p in x)


def fit_P(shape: Shape, genus: int, faces: int, grid_start: int = 2, threads: int = 1) -> Poly:
    """Interpolate the labelled constellation count as a polynomial in the sizes.

    The grid is ``{grid_start, ..., grid_start + d}`` in every variable, with
    ``d`` the stratum dimension. Raises :class:`InterpolationError` when the
    samples are not a polynomial of degree ``d``.
    """
    d = stratum_dimension(genus, shape.m, faces)
    if d < 0:
        raise ValueError("negative stratum dimension")
    variables = shape.size_vars()
    samples = []
    for point in itertools.product(range(grid_start, grid_start + d + 1), repeat=len(variables)):
        samples.append((point, labelled_constellation_count(shape, point, genus, faces, threads)))
    p = interpolate(samples, d, variables)
    if p.is_zero() or p.total_degree() != d:
        raise InterpolationError(f"fitted polynomial has degree {p.total_degree()}, expected {d}")
    return p


def leading_in_lengths(p: Poly, shape: Shape) -> Poly:
    top = top_homogeneous_part(p)
    return top.rename(dict(zip(shape.size_vars(), shape.length_vars())))


def asymptotic_check(p: Poly, q: Poly, shape: Shape) -> bool:
    """Top homogeneous part of ``P`` with ``n_ij -> l_ij`` equals ``Q``."""
    return leading_in_lengths(p, shape) == q


def evaluate_Q(q: Poly, shape: Shape, sizes: Mapping[str, int] | Sequence[int]) -> Fraction:
    """Approximate ``P`` at large sizes by plugging them into ``Q``."""
    if not isinstance(sizes, Mapping):
        sizes = dict(zip(shape.length_vars(), sizes))
    return q.evaluate(sizes)
