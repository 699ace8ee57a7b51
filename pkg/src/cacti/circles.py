"""Colored circles with exact or symbolic lengths."""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .algebra import Poly, poly_sum

Length = Union[Fraction, str]

_SYMBOL = re.compile(r"^[a-z][a-z0-9_]*$")
_NUMBER = re.compile(r"^\d+(/\d+)?$")


def length_poly(x: Length) -> Poly:
    return Poly.var(x) if isinstance(x, str) else Poly.const(x)


@dataclass(frozen=True)
class CircleSet:
    """Circle ``j`` has color ``colors[j]`` and length ``lengths[j]``."""

    colors: tuple[int, ...]
    lengths: tuple[Length, ...]

    def __post_init__(self):
        if len(self.colors) != len(self.lengths):
            raise ValueError("one length per circle")
        lengths = []
        for x in self.lengths:
            if isinstance(x, str):
                if not _SYMBOL.match(x):
                    raise ValueError(f"bad length symbol {x!r}")
                lengths.append(x)
            else:
                x = Fraction(x)
                if x <= 0:
                    raise ValueError("numeric lengths must be positive")
                lengths.append(x)
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        object.__setattr__(self, "lengths", tuple(lengths))

    @classmethod
    def from_dict(cls, by_color: Mapping[int, Sequence[Length]]) -> "CircleSet":
        colors, lengths = [], []
        for color in sorted(by_color):
            for x in by_color[color]:
                colors.append(color)
                lengths.append(x)
        return cls(tuple(colors), tuple(lengths))

    @classmethod
    def symbolic(cls, multiplicities: Mapping[int, int] | Sequence[int]) -> "CircleSet":
        """Distinct symbols ``l_<color>_<index>``; a sequence gives counts for colors 1..k."""
        if not isinstance(multiplicities, Mapping):
            multiplicities = {i + 1: m for i, m in enumerate(multiplicities)}
        return cls.from_dict({c: [f"l_{c}_{j + 1}" for j in range(m)] for c, m in multiplicities.items()})

    @property
    def m(self) -> int:
        return len(self.colors)

    @property
    def color_list(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.colors)))

    @property
    def k(self) -> int:
        return len(self.color_list)

    def multiplicity(self, color: int) -> int:
        return self.colors.count(color)

    def is_symbolic(self) -> bool:
        return all(isinstance(x, str) for x in self.lengths)

    def is_numeric(self) -> bool:
        return not any(isinstance(x, str) for x in self.lengths)

    def length(self, j: int) -> Poly:
        return length_poly(self.lengths[j])

    def color_total(self, color: int) -> Poly:
        return poly_sum(self.length(j) for j, c in enumerate(self.colors) if c == color)

    def total(self) -> Poly:
        return poly_sum(self.length(j) for j in range(self.m))

    def aut(self, color: int) -> int:
        """Number of length-preserving permutations of the circles of ``color``."""
        same = Counter(x for x, c in zip(self.lengths, self.colors) if c == color)
        return math.prod(math.factorial(v) for v in same.values())

    def interchangeable(self, a: int, b: int) -> bool:
        return self.colors[a] == self.colors[b] and self.lengths[a] == self.lengths[b]

    def __str__(self) -> str:
        groups = []
        for color in self.color_list:
            xs = [x if isinstance(x, str) else str(x) for x, c in zip(self.lengths, self.colors) if c == color]
            groups.append(f"{color}:" + ",".join(xs))
        return ";".join(groups)


def parse_circles(text: str) -> CircleSet:
    """Parse ``"1:l1,l2;2:s"`` or ``"1:2;2:3/2"``."""
    by_color: dict = {}
    for group in text.split(";"):
        if ":" not in group:
            raise ValueError(f"malformed circle group {group!r}")
        color, _, body = group.partition(":")
        if not color.strip().isdigit():
            raise ValueError(f"malformed color {color!r}")
        items = []
        for tok in body.split(","):
            tok = tok.strip()
            if _NUMBER.match(tok):
                items.append(Fraction(tok))
            elif _SYMBOL.match(tok):
                items.append(tok)
            else:
                raise ValueError(f"malformed circle length {tok!r}")
        c = int(color)
        if c in by_color:
            raise ValueError(f"color {c} listed twice")
        by_color[c] = items
    return CircleSet.from_dict(by_color)
