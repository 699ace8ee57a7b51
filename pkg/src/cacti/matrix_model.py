"""Gaussian matrix model over colored matrices and its generating functions.

The state space ``E`` holds tuples ``A_i = X + Y_i`` with ``X`` hermitian,
``Y_i`` skew-hermitian and ``sum Y_i = 0``. It is realized with real
coordinates: ``Y_i = i Z_i`` with ``Z_i`` hermitian, ``Z_k = -(Z_1 + ... + Z_{k-1})``,
and each hermitian matrix contributes its diagonal plus the real and imaginary
parts of the upper triangle. Coordinates are grouped by matrix slot, so every
quadratic form below is block diagonal with blocks of size ``k``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .algebra import N_SYMBOL, Poly, poly_sum, truncated_exp
from .circles import CircleSet
from .oracle.types import enumerate_topological_types, type_volume

# -- exact complex numbers --------------------------------------------------


@dataclass(frozen=True)
class CFrac:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __add__(self, o) -> "CFrac":
        if not isinstance(o, CFrac):
            o = CFrac(Fraction(o))
        return CFrac(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o) -> "CFrac":
        return self + (-o)

    def __neg__(self) -> "CFrac":
        return CFrac(-self.re, -self.im)

    def __mul__(self, o) -> "CFrac":
        if not isinstance(o, CFrac):
            o = CFrac(Fraction(o))
        return CFrac(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def real(self) -> Fraction:
        if self.im:
            raise ArithmeticError(f"expected a real value, got imaginary part {self.im}")
        return self.re


ONE = CFrac(Fraction(1))
I_UNIT = CFrac(Fraction(0), Fraction(1))

# A linear form is a sparse map coordinate index -> coefficient.
LinearForm = Mapping[int, object]


def _add_into(acc: dict, form: LinearForm, scale) -> None:
    for j, c in form.items():
        v = acc.get(j, CFrac()) + scale * (c if isinstance(c, CFrac) else CFrac(Fraction(c)))
        if v:
            acc[j] = v
        else:
            acc.pop(j, None)


# -- state space --------------------------------------------------------------


@dataclass(frozen=True)
class StateSpace:
    N: int
    k: int
    basis: tuple[tuple, ...] = field(init=False, repr=False)

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N >= 1")
        if self.k < 1:
            raise ValueError("k >= 1")
        basis = []
        for slot in self.slots():
            basis.append(("x",) + slot)
            for i in range(self.k - 1):
                basis.append((f"z{i + 1}",) + slot)
        object.__setattr__(self, "basis", tuple(basis))

    def slots(self) -> list[tuple[int, int, str]]:
        out = []
        for a in range(self.N):
            out.append((a, a, "d"))
            for b in range(a + 1, self.N):
                out.append((a, b, "re"))
                out.append((a, b, "im"))
        return out

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def index(self, label: tuple) -> int:
        return self._index()[label]

    def _index(self) -> dict:
        return _basis_index(self.N, self.k)

    def _hermitian_entry(self, name: str, a: int, b: int) -> dict:
        """Entry ``(a, b)`` of the hermitian matrix with coordinates ``name``."""
        idx = self._index()
        if a == b:
            return {idx[(name, a, a, "d")]: ONE}
        lo, hi = min(a, b), max(a, b)
        sign = ONE if a < b else -ONE
        return {idx[(name, lo, hi, "re")]: ONE, idx[(name, lo, hi, "im")]: I_UNIT * sign}

    def z_entry(self, i: int, a: int, b: int) -> dict:
        """Entry of ``Z_i`` (colors ``0..k-1``), the last one eliminated."""
        if i < self.k - 1:
            return self._hermitian_entry(f"z{i + 1}", a, b)
        acc: dict = {}
        for j in range(self.k - 1):
            _add_into(acc, self._hermitian_entry(f"z{j + 1}", a, b), -ONE)
        return acc

    def x_entry(self, a: int, b: int) -> dict:
        return self._hermitian_entry("x", a, b)

    def entry(self, i: int, a: int, b: int) -> dict:
        """``(A_i)_{ab} = X_{ab} + i (Z_i)_{ab}`` as a complex linear form."""
        acc = dict(self.x_entry(a, b))
        _add_into(acc, self.z_entry(i, a, b), I_UNIT)
        return acc

    def realize(self, coords: Sequence) -> list[list[list[CFrac]]]:
        """The matrices ``A_1 .. A_k`` at a coordinate vector."""
        def ev(form):
            acc = CFrac()
            for j, c in form.items():
                acc = acc + c * Fraction(coords[j])
            return acc

        return [[[ev(self.entry(i, a, b)) for b in range(self.N)] for a in range(self.N)] for i in range(self.k)]


@lru_cache(maxsize=None)
def _basis_index(N: int, k: int) -> dict:
    return {label: j for j, label in enumerate(StateSpace(N, k).basis)}


# -- exact dense linear algebra ---------------------------------------------


Matrix = list  # list of rows of Fractions


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = len(b[0])
    out = []
    for row in a:
        acc = [Fraction(0)] * cols
        for j, x in enumerate(row):
            if x:
                for c, y in enumerate(b[j]):
                    if y:
                        acc[c] += x * y
        out.append(acc)
    return out


def mat_inverse(m: Matrix) -> Matrix:
    """Gauss-Jordan inverse over the rationals."""
    n = len(m)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        prow = aug[col]
        nz = [j for j, x in enumerate(prow) if x]
        for r in range(n):
            f = aug[r][col]
            if r != col and f:
                row = aug[r]
                for j in nz:
                    row[j] -= f * prow[j]
    return [row[n:] for row in aug]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


# -- quadratic forms --------------------------------------------------------


@dataclass
class QuadForm:
    """``q(v) = v^T matrix v`` with a symmetric rational matrix."""

    matrix: Matrix

    def __post_init__(self):
        n = len(self.matrix)
        self.matrix = [list(map(Fraction, row)) for row in self.matrix]
        if any(len(row) != n for row in self.matrix):
            raise ValueError("square matrix expected")
        for i in range(n):
            for j in range(i):
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise ValueError("quadratic form matrix must be symmetric")

    @property
    def dimension(self) -> int:
        return len(self.matrix)

    def __call__(self, v: Sequence) -> Fraction:
        return bilinear(self.matrix, v, v)

    def scaled(self, c) -> "QuadForm":
        return QuadForm([[c * x for x in row] for row in self.matrix])

    def inverse(self) -> "QuadForm":
        """The dual form ``v -> v^T M^{-1} v``: the covariance of ``exp(-q/2)``."""
        return QuadForm(mat_inverse(self.matrix))


def bilinear(m: Matrix, u, v):
    """``u^T m v`` for dense or sparse (dict) vectors, complex entries allowed."""
    uu = u.items() if isinstance(u, Mapping) else enumerate(u)
    vv = list(v.items() if isinstance(v, Mapping) else enumerate(v))
    acc = None
    for i, a in uu:
        if not a:
            continue
        row = m[i]
        for j, b in vv:
            if b and row[j]:
                term = a * b * row[j]
                acc = term if acc is None else acc + term
    if acc is None:
        return Fraction(0)
    return acc


def _quadratic_from_products(dim: int, products: Iterable[tuple[object, dict, dict]]) -> Matrix:
    """Real symmetric matrix of ``sum c * lam(v) * mu(v)``."""
    acc: dict = {}
    for c, lam, mu in products:
        for i, a in lam.items():
            for j, b in mu.items():
                t = c * a * b * Fraction(1, 2)
                for key in ((i, j), (j, i)):
                    acc[key] = acc.get(key, CFrac()) + t
    m = [[Fraction(0)] * dim for _ in range(dim)]
    for (i, j), v in acc.items():
        m[i][j] = v.real()
    return m


def trace_pairing_form(space: StateSpace, coupling: Matrix) -> QuadForm:
    """``sum_{i,j} coupling[i][j] Tr(A_i A_j)`` as a real quadratic form on ``E``."""
    N, k = space.N, space.k
    entries = {(i, a, b): space.entry(i, a, b) for i in range(k) for a in range(N) for b in range(N)}

    def products():
        for i in range(k):
            for j in range(k):
                c = Fraction(coupling[i][j])
                if not c:
                    continue
                for a in range(N):
                    for b in range(N):
                        yield CFrac(c), entries[(i, a, b)], entries[(j, b, a)]

    return QuadForm(_quadratic_from_products(space.dimension, products()))


def coupling_H(k: int) -> Matrix:
    """``(J - (k-1) I) / (k-1)``."""
    return [[Fraction(1 if i != j else 2 - k, k - 1) for j in range(k)] for i in range(k)]


def coupling_H_inv(k: int) -> Matrix:
    """``J - I``."""
    return [[Fraction(int(i != j)) for j in range(k)] for i in range(k)]


def model_forms(N: int, k: int) -> tuple[QuadForm, QuadForm]:
    """The forms ``H`` and ``H^{-1}`` on ``E``, built from their color couplings."""
    if k < 2:
        raise ValueError("the model needs at least 2 colors")
    space = StateSpace(N, k)
    return trace_pairing_form(space, coupling_H(k)), trace_pairing_form(space, coupling_H_inv(k))


def coordinate_forms(N: int, k: int) -> tuple[QuadForm, QuadForm]:
    """Same forms written directly in ``X`` and ``Y_i``.

    ``H = (k Tr X^2 - (k-1) sum Tr Y_i^2)/(k-1)`` and
    ``H^{-1} = k(k-1) Tr X^2 - sum Tr Y_i^2``.
    """
    space = StateSpace(N, k)
    dim = space.dimension
    idx = space._index()

    def tr_sq(entry):
        return [(ONE, entry(a, b), entry(b, a)) for a in range(N) for b in range(N)]

    x_sq = _quadratic_from_products(dim, tr_sq(space.x_entry))
    y_sq = [[Fraction(0)] * dim for _ in range(dim)]
    for i in range(k):
        # Y_i = i Z_i, so Tr Y_i^2 = -Tr Z_i^2
        z = _quadratic_from_products(dim, tr_sq(lambda a, b, i=i: space.z_entry(i, a, b)))
        for r in range(dim):
            for c in range(dim):
                y_sq[r][c] -= z[r][c]
    del idx
    h = [[(k * x_sq[r][c] - (k - 1) * y_sq[r][c]) / (k - 1) for c in range(dim)] for r in range(dim)]
    h_inv = [[k * (k - 1) * x_sq[r][c] - y_sq[r][c] for c in range(dim)] for r in range(dim)]
    return QuadForm(h), QuadForm(h_inv)


def pairing_form(N: int, k: int) -> QuadForm:
    """``G(A) = sum_i Tr A_i^2``: the trace pairing used to turn forms into maps."""
    return trace_pairing_form(StateSpace(N, k), identity(k))


def forms_are_inverse(N: int, k: int) -> bool:
    """``H`` and ``H^{-1}``, seen as maps of ``E`` through the trace pairing, compose to the identity."""
    h, h_inv = model_forms(N, k)
    g_inv = mat_inverse(pairing_form(N, k).matrix)
    t_h = mat_mul(g_inv, h.matrix)
    t_h_inv = mat_mul(g_inv, h_inv.matrix)
    n = h.dimension
    return mat_mul(t_h, t_h_inv) == identity(n) and mat_mul(t_h_inv, t_h) == identity(n)


def is_positive_definite(q: QuadForm | Matrix) -> bool:
    """All leading principal minors positive.

    Computed as the pivots of elimination without row exchanges: the ``r``-th
    pivot is the ratio of consecutive leading minors.
    """
    m = [list(map(Fraction, row)) for row in (q.matrix if isinstance(q, QuadForm) else q)]
    n = len(m)
    for r in range(n):
        pv = m[r][r]
        if pv <= 0:
            return False
        prow = m[r]
        nz = [j for j in range(r + 1, n) if prow[j]]
        for i in range(r + 1, n):
            f = m[i][r]
            if f:
                f = f / pv
                row = m[i]
                for j in nz:
                    row[j] -= f * prow[j]
    return True


# -- Wick calculus ----------------------------------------------------------


def _hafnian(gram: list[list]) -> object:
    n = len(gram)
    if n % 2:
        return Fraction(0)

    @lru_cache(maxsize=None)
    def rec(mask: int):
        if mask == 0:
            return Fraction(1)
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        total = Fraction(0)
        m = rest
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            g = gram[i][j]
            if g:
                total = g * rec(rest & ~(1 << j)) + total
        return total

    return rec((1 << n) - 1)


def wick(h: QuadForm, forms: Sequence, covariance: Matrix | None = None):
    """``<prod forms>`` under the weight ``exp(-h/2)``.

    Sum over pairings of the products of ``v^T h^{-1} w``. Forms may be dense
    sequences or sparse maps, with rational or :class:`CFrac` coefficients.
    """
    if len(forms) % 2:
        return Fraction(0)
    cov = covariance if covariance is not None else mat_inverse(h.matrix)
    gram = [[bilinear(cov, u, v) for v in forms] for u in forms]
    val = _hafnian(gram)
    if isinstance(val, CFrac) and not val.im:
        return val.re
    return val


def gaussian_shift_check(h: QuadForm, lam: Sequence, max_order: int) -> bool:
    """``<lam^(2m)>/(2m)! = (h^{-1}(lam)/2)^m / m!`` for ``m <= max_order``; odd moments vanish.

    These are the coefficients of ``<exp(lam)> = exp(h^{-1}(lam)/2)``.
    """
    cov = mat_inverse(h.matrix)
    s = bilinear(cov, lam, lam)
    for m in range(max_order + 1):
        lhs = wick(h, [lam] * (2 * m), cov) / math.factorial(2 * m)
        rhs = (s / 2) ** m / math.factorial(m)
        if lhs != rhs:
            return False
        if wick(h, [lam] * (2 * m + 1), cov) != 0:
            return False
    return True


# -- generating functions ---------------------------------------------------


def _require_symbolic(c: CircleSet) -> None:
    if not c.is_symbolic():
        raise ValueError("series expansions need symbolic circle lengths")
    if c.k < 2:
        raise ValueError("need at least 2 colors")


def f_closed(c: CircleSet) -> list[tuple[int, Poly]]:
    """Inclusion-exclusion terms ``(sign, exponent)`` of the ``N = 1`` closed form.

    Each circle goes to ``U`` or ``V``; the sign is ``(-1)^{|V|}`` and the
    exponent is ``sum_{i<j} L_i L_j`` with ``L_i`` the total length in ``U``
    of color ``i``. The closed form is ``(1/prod l) sum sign * exp(exponent)``.
    """
    if c.k < 2:
        raise ValueError("need at least 2 colors")
    colors = c.color_list
    out = []
    for in_u in itertools.product((True, False), repeat=c.m):
        L = {col: Poly() for col in colors}
        for j, u in enumerate(in_u):
            if u:
                L[c.colors[j]] = L[c.colors[j]] + c.length(j)
        expo = poly_sum(L[a] * L[b] for a, b in itertools.combinations(colors, 2))
        out.append(((-1) ** in_u.count(False), expo))
    return out


def collapse_terms(terms: Sequence[tuple[int, Poly]]) -> list[tuple[int, Poly]]:
    """Merge terms with equal exponents; drop those that cancel."""
    acc: dict = {}
    order = []
    for sign, expo in terms:
        if expo not in acc:
            acc[expo] = 0
            order.append(expo)
        acc[expo] += sign
    return [(acc[e], e) for e in order if acc[e]]


def f_series(c: CircleSet, max_degree: int) -> Poly:
    """Taylor expansion of the ``N = 1`` closed form up to total degree ``max_degree``."""
    _require_symbolic(c)
    m = c.m
    total = Poly()
    for sign, expo in collapse_terms(f_closed(c)):
        if expo.is_zero():
            total = total + Poly.const(sign)
        else:
            total = total + truncated_exp(expo, max_degree + m) * sign
    denom = Poly.const(1)
    for j in range(m):
        denom = denom * c.length(j)
    try:
        quotient = total.divide_exact(denom)
    except ArithmeticError as exc:
        raise ArithmeticError("inclusion-exclusion sum is not divisible by the product of lengths") from exc
    return quotient.truncate(max_degree)


def F_series(c: CircleSet, max_degree: int, N: int | None = None) -> Poly:
    """Sum over gluings using every circle: ``Vol * N^chi``, total length degree <= ``max_degree``.

    Circles are distinguishable factors here, so no symmetry swaps circles.
    ``N = None`` keeps ``N`` symbolic.
    """
    _require_symbolic(c)
    types = enumerate_topological_types(c, connected=False, max_grade=max_degree, identify_equal=False)
    out = Poly()
    for t in types:
        vol = type_volume(t, c.lengths)
        chi = t.euler_characteristic
        if N is None:
            out = out + (vol * Poly.monomial({N_SYMBOL: chi}) if chi else vol)
        else:
            out = out + vol * Fraction(N) ** chi
    return out


def _degree_vectors(m: int, max_grade: int):
    for grades in itertools.product(range(max_grade + 1), repeat=m):
        if sum(grades) <= max_grade:
            yield tuple(g + 1 for g in grades)


def entry_covariance(space: StateSpace, cov: Matrix, cache: dict, u: tuple, v: tuple):
    key = (u, v) if u <= v else (v, u)
    if key not in cache:
        cache[key] = bilinear(cov, space.entry(*u), space.entry(*v))
    return cache[key]


def trace_moment(space: StateSpace, h_scaled: QuadForm, powers: Sequence[tuple[int, int]], cov: Matrix | None = None,
                 cache: dict | None = None) -> Fraction:
    """``< prod Tr A_{color}^d >`` for ``(color, d)`` pairs, under ``exp(-h_scaled/2)``.

    Every trace is expanded over its index assignments into products of
    matrix entries; each product is a product of linear forms in the
    coordinates of ``E`` and is evaluated with :func:`wick`.
    """
    cov = cov if cov is not None else mat_inverse(h_scaled.matrix)
    cache = {} if cache is None else cache
    n_entries = sum(d for _, d in powers)
    if n_entries % 2:
        return Fraction(0)
    N = space.N
    total = CFrac()
    for idx in itertools.product(range(N), repeat=n_entries):
        entries = []
        pos = 0
        for color, d in powers:
            cyc = idx[pos:pos + d]
            for t in range(d):
                entries.append((color, cyc[t], cyc[(t + 1) % d]))
            pos += d
        gram = [[entry_covariance(space, cov, cache, u, v) for v in entries] for u in entries]
        val = _hafnian(gram)
        total = total + (val if isinstance(val, CFrac) else CFrac(val))
    return total.real()


def wick_F_check(c: CircleSet, max_degree: int, N: int, report: list | None = None) -> bool:
    """Compare Gaussian moments of the circle product with the gluing sum at integer ``N``.

    Circle ``j`` contributes ``sum_d N l^(d-1)/(d-1)! Tr A^d / d``. The
    coefficient of ``prod l_j^(d_j-1)`` in the expectation under
    ``exp(-N H/2)`` must match the same coefficient of ``F_series``.
    """
    _require_symbolic(c)
    if len(set(c.lengths)) != c.m:
        raise ValueError("coefficient matching needs one symbol per circle")
    colors = c.color_list
    space = StateSpace(N, c.k)
    h, _ = model_forms(N, c.k)
    h_scaled = h.scaled(N)
    cov = mat_inverse(h_scaled.matrix)
    cache: dict = {}
    rhs_series = F_series(c, max_degree, N)
    ok = True
    for degs in _degree_vectors(c.m, max_degree):
        powers = [(colors.index(col), d) for col, d in zip(c.colors, degs)]
        weight = Fraction(N) ** c.m
        for d in degs:
            weight /= math.factorial(d - 1) * d
        lhs = weight * trace_moment(space, h_scaled, powers, cov, cache)
        rhs = rhs_series.coefficient({name: d - 1 for name, d in zip(c.lengths, degs) if d > 1})
        if report is not None:
            report.append((degs, lhs, rhs))
        ok = ok and lhs == rhs
    return ok
