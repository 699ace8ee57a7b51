"""Exact multivariate polynomials over the rationals.

Coefficients are :class:`fractions.Fraction`. A monomial is a sorted tuple of
``(variable, exponent)`` pairs with nonzero exponents, so polynomials over
different variable sets combine without explicit alignment. Only the
distinguished symbol ``N`` may carry a negative exponent.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

N_SYMBOL = "N"

Scalar = Union[int, Fraction]
Monomial = tuple  # tuple[tuple[str, int], ...]


class InterpolationError(ValueError):
    """Raised when samples admit no polynomial of the requested degree."""


def _natural_key(name: str):
    parts = re.split(r"(\d+)", name)
    return tuple((0, int(p)) if p.isdigit() else (1, p) for p in parts if p)


def var_sort_key(name: str):
    # N sorts last so length/size variables lead in serialized output.
    return (name == N_SYMBOL, _natural_key(name))


def fraction_str(x: Scalar) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s.strip())


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(((v, e) for v, e in exps.items() if e), key=lambda t: var_sort_key(t[0])))


def _mono_degree(m: Monomial, include_n: bool = False) -> int:
    return sum(e for v, e in m if include_n or v != N_SYMBOL)


class Poly:
    """Immutable polynomial (Laurent in ``N`` only) with Fraction coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                exps: dict = {}
                for v, e in mono:
                    exps[v] = exps.get(v, 0) + e
                mono = tuple(sorted(((v, e) for v, e in exps.items() if e), key=lambda t: var_sort_key(t[0])))
                for v, e in mono:
                    if e < 0 and v != N_SYMBOL:
                        raise ValueError(f"negative exponent on non-N variable {v!r}")
                clean[mono] = clean.get(mono, Fraction(0)) + c
        self._terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    # -- construction -------------------------------------------------------

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls({(): c})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): 1})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coef: Scalar = 1) -> "Poly":
        return cls({tuple(exps.items()): coef})

    @staticmethod
    def coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return Poly.const(x)
        if isinstance(x, str):
            return Poly.var(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Poly")

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @property
    def variables(self) -> tuple[str, ...]:
        names = {v for m in self._terms for v, _ in m}
        return tuple(sorted(names, key=var_sort_key))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def coefficient(self, exps: Mapping[str, int] | None = None, **kw: int) -> Fraction:
        want = dict(exps or {})
        want.update(kw)
        mono = tuple(sorted(((v, e) for v, e in want.items() if e), key=lambda t: var_sort_key(t[0])))
        return self._terms.get(mono, Fraction(0))

    def total_degree(self, include_n: bool = False) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return max(_mono_degree(m, include_n) for m in self._terms)

    def degree_in(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self._terms), default=0)

    def __len__(self) -> int:
        return len(self._terms)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = Poly.coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-Poly.coerce(other))

    def __rsub__(self, other) -> "Poly":
        return Poly.coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly({m: c * other for m, c in self._terms.items()})
        other = Poly.coerce(other)
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self.divide_exact(Poly.coerce(other))

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            if len(self._terms) != 1:
                raise ValueError("negative power of a non-monomial")
            (m, c), = self._terms.items()
            if any(v != N_SYMBOL for v, _ in m):
                raise ValueError("negative power of a non-N variable")
            return Poly({tuple((v, x * e) for v, x in m): Fraction(1) / c ** (-e)})
        result = Poly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def divide_exact(self, divisor: "Poly") -> "Poly":
        """Divide by a monomial; raises if the division leaves a remainder."""
        if len(divisor._terms) != 1:
            raise ValueError("exact division implemented for monomial divisors only")
        (dm, dc), = divisor._terms.items()
        inv = tuple((v, -e) for v, e in dm)
        out = {}
        for m, c in self._terms.items():
            q = dict(_mono_mul(m, inv))
            if any(e < 0 and v != N_SYMBOL for v, e in q.items()):
                raise ArithmeticError(f"term {m} not divisible by {dm}")
            out[tuple(q.items())] = c / dc
        return Poly(out)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- transforms ---------------------------------------------------------

    def substitute(self, mapping: Mapping[str, object]) -> "Poly":
        """Replace variables by scalars or polynomials, simultaneously."""
        subs = {v: Poly.coerce(x) for v, x in mapping.items()}
        out = Poly()
        cache: dict = {}
        for m, c in self._terms.items():
            term = Poly.const(c)
            keep = []
            for v, e in m:
                if v in subs:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = subs[v] ** e
                    term = term * cache[key]
                else:
                    keep.append((v, e))
            out = out + term * Poly({tuple(keep): 1})
        return out

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        """Rename variables; names may collide, in which case terms merge."""
        out = Poly()
        for m, c in self._terms.items():
            out = out + Poly({tuple((mapping.get(v, v), e) for v, e in m): c})
        return out

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        p = self.substitute(values)
        if not p.is_constant():
            raise ValueError(f"unassigned variables {p.variables}")
        return p.constant_term()

    def truncate(self, max_degree: int) -> "Poly":
        """Drop terms whose degree (ignoring N) exceeds ``max_degree``."""
        return Poly({m: c for m, c in self._terms.items() if _mono_degree(m) <= max_degree})

    def homogeneous_part(self, degree: int) -> "Poly":
        return Poly({m: c for m, c in self._terms.items() if _mono_degree(m) == degree})

    # -- serialization ------------------------------------------------------

    def exponent_vector(self, mono: Monomial, variables: Sequence[str]) -> tuple[int, ...]:
        d = dict(mono)
        return tuple(d.get(v, 0) for v in variables)

    def sorted_terms(self, variables: Sequence[str] | None = None):
        """Terms in graded lexicographic order, leading term first."""
        variables = tuple(variables or self.variables)
        rows = [(self.exponent_vector(m, variables), c) for m, c in self._terms.items()]
        rows.sort(key=lambda r: (sum(r[0]), r[0]), reverse=True)
        return variables, rows

    def to_json(self) -> dict:
        variables, rows = self.sorted_terms()
        return {
            "vars": list(variables),
            "terms": [{"exps": list(e), "coef": fraction_str(c)} for e, c in rows],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict | str) -> "Poly":
        if isinstance(data, str):
            data = json.loads(data)
        variables = data["vars"]
        terms = {}
        for t in data["terms"]:
            if len(t["exps"]) != len(variables):
                raise ValueError("exponent vector length does not match vars")
            terms[tuple(zip(variables, t["exps"]))] = parse_fraction(t["coef"])
        return cls(terms)

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        variables, rows = self.sorted_terms()
        pieces = []
        for exps, c in rows:
            factors = []
            for v, e in zip(variables, exps):
                if e == 1:
                    factors.append(v)
                elif e:
                    factors.append(f"{v}^{e}")
            mono = "*".join(factors)
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out


def poly_sum(items: Iterable[Poly]) -> Poly:
    out: dict = {}
    for p in items:
        for m, c in p._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
    return Poly(out)


def top_homogeneous_part(p: Poly) -> Poly:
    """Sum of the terms of maximal total degree."""
    if p.is_zero():
        raise ValueError("top homogeneous part of the zero polynomial")
    if N_SYMBOL in p.variables:
        raise ValueError("top homogeneous part is defined for polynomials without N")
    return p.homogeneous_part(p.total_degree())


def truncated_exp(q: Poly, max_degree: int) -> Poly:
    """``sum_m q^m / m!`` keeping total degree <= ``max_degree``."""
    if q.constant_term():
        raise ValueError("truncated_exp needs a zero constant term")
    result = Poly.const(1)
    term = Poly.const(1)
    for m in range(1, max_degree + 1):
        term = (term * q).truncate(max_degree) * Fraction(1, m)
        if term.is_zero():
            break
        result = result + term
    return result


def monomials_up_to(variables: Sequence[str], degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree <= ``degree``, graded lex ascending."""
    out = []

    def rec(i, left, acc):
        if i == len(variables):
            out.append(tuple(acc))
            return
        for e in range(left + 1):
            acc.append(e)
            rec(i + 1, left - e, acc)
            acc.pop()

    rec(0, degree, [])
    out.sort(key=lambda e: (sum(e), e))
    return out


def solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve an (over)determined linear system exactly.

    Raises :class:`InterpolationError` if the system is inconsistent or the
    solution is not unique.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    pivot_cols = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(aug)) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][col]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivot_cols.append(col)
        r += 1
    for i in range(r, len(aug)):
        if aug[i][-1]:
            raise InterpolationError("samples are inconsistent with the degree bound")
    if r < ncols:
        raise InterpolationError("sample set is not unisolvent for the degree bound")
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(pivot_cols):
        sol[col] = aug[i][-1]
    return sol


def interpolate(
    samples: Sequence[tuple[Sequence[int], Scalar]],
    degree_bound: int,
    variables: Sequence[str],
) -> Poly:
    """The unique polynomial of total degree <= ``degree_bound`` through ``samples``."""
    variables = tuple(variables)
    exps = monomials_up_to(variables, degree_bound)
    rows = []
    rhs = []
    for point, value in samples:
        if len(point) != len(variables):
            raise ValueError("sample point dimension does not match variables")
        rows.append([Fraction(math.prod(x ** e for x, e in zip(point, ex))) for ex in exps])
        rhs.append(Fraction(value))
    coefs = solve_exact(rows, rhs)
    return Poly({tuple(zip(variables, ex)): c for ex, c in zip(exps, coefs)})
