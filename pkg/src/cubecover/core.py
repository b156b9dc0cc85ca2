"""Hyperplanes, cube points and the point/plane weight function.

A plane is always written as ``sum(c_i * x_i) == 1``, so it never contains the
origin.  A nonzero vertex of the cube is identified with its support, a subset
of ``{1..n}``; internally supports are also handled as bitmasks where bit
``i - 1`` stands for coordinate ``i``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, lcm
from typing import Iterable, Sequence

MAX_DIMENSION = 20

COEFF_ABOVE_ONE = "CoeffAboveOne"
SUM_BELOW_ONE = "SumBelowOne"
NON_INTEGER_COEFF = "NonIntegerCoeff"

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


class InvalidInput(ValueError):
    pass


class InvalidPoint(InvalidInput):
    pass


class ParseError(InvalidInput):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno is not None else message)


class CapExceeded(ValueError):
    """A computation was asked for a size beyond its hard enumeration cap."""


def parse_rational(text: str) -> Fraction:
    """Parse ``[sign]digits[/digits]`` into an exact Fraction."""
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise InvalidInput(f"not a rational: {text!r}")
    if re.search(r"/0+$", s):
        raise InvalidInput(f"zero denominator: {text!r}")
    return Fraction(s)


def format_rational(q: Fraction | int) -> str:
    return str(Fraction(q))


@dataclass(frozen=True)
class Hyperplane:
    """The plane ``{x : sum(c_i x_i) = 1}`` in R^n."""

    coeffs: tuple[Fraction, ...]
    _scaled: tuple[tuple[int, ...], int] = field(init=False, repr=False, compare=False)

    def __init__(self, coeffs: Iterable):
        cs = tuple(Fraction(c) for c in coeffs)
        if not 1 <= len(cs) <= MAX_DIMENSION:
            raise InvalidInput(f"dimension must be in 1..{MAX_DIMENSION}, got {len(cs)}")
        object.__setattr__(self, "coeffs", cs)
        den = lcm(*(c.denominator for c in cs))
        object.__setattr__(
            self, "_scaled", (tuple(int(c * den) for c in cs), den)
        )

    @classmethod
    def parse(cls, text: str) -> "Hyperplane":
        parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
        return cls(parse_rational(p) for p in parts)

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @property
    def scaled(self) -> tuple[tuple[int, ...], int]:
        """Integer numerators ``a`` and common denominator ``d`` with ``c = a / d``."""
        return self._scaled

    def contains(self, support: Iterable[int]) -> bool:
        return sum(self.coeffs[i - 1] for i in support) == 1

    def __str__(self) -> str:
        return " ".join(format_rational(c) for c in self.coeffs)


@dataclass(frozen=True, order=True)
class CubePoint:
    n: int
    support: tuple[int, ...]

    def __post_init__(self):
        s = tuple(sorted(set(self.support)))
        if not s:
            raise InvalidPoint("the origin has no weight")
        if s[0] < 1 or s[-1] > self.n:
            raise InvalidPoint(f"support {s} not inside 1..{self.n}")
        object.__setattr__(self, "support", s)

    @property
    def size(self) -> int:
        return len(self.support)

    @property
    def mask(self) -> int:
        return support_to_mask(self.support)

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "CubePoint":
        return cls(n, mask_to_support(mask))


def support_to_mask(support: Iterable[int]) -> int:
    m = 0
    for i in support:
        m |= 1 << (i - 1)
    return m


def mask_to_support(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@lru_cache(maxsize=None)
def canonical_masks(n: int) -> tuple[int, ...]:
    """All nonzero supports of [n] as masks, by cardinality then lexicographic."""
    if not 1 <= n <= MAX_DIMENSION:
        raise CapExceeded(f"n={n} outside 1..{MAX_DIMENSION}")
    return tuple(
        support_to_mask(s)
        for t in range(1, n + 1)
        for s in combinations(range(1, n + 1), t)
    )


def _weight(n: int, t: int) -> Fraction:
    return Fraction(1, t * comb(n, t))


def point_weight(p: CubePoint) -> Fraction:
    return _weight(p.n, p.size)


def mask_weight(n: int, mask: int) -> Fraction:
    if mask <= 0 or mask >= 1 << n:
        raise InvalidPoint(f"mask {mask} is not a nonzero vertex of Q^{n}")
    return _weight(n, mask.bit_count())


def _subset_sums(a: Sequence[int]) -> list[int]:
    n = len(a)
    sums = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + a[low.bit_length() - 1]
    return sums


def covered_masks(h: Hyperplane) -> list[int]:
    """Masks of the covered vertices, in canonical order."""
    a, d = h.scaled
    sums = _subset_sums(a)
    return [m for m in canonical_masks(h.n) if sums[m] == d]


def covered_points(h: Hyperplane) -> list[CubePoint]:
    return [CubePoint.from_mask(h.n, m) for m in covered_masks(h)]


def plane_weight(h: Hyperplane) -> Fraction:
    n = h.n
    return sum((_weight(n, m.bit_count()) for m in covered_masks(h)), Fraction(0))


@dataclass(frozen=True)
class Weight1Verdict:
    is_weight1: bool
    failed_conditions: frozenset[str]


def classify_weight1(h: Hyperplane) -> Weight1Verdict:
    """Check the three coefficient conditions that characterise weight-1 planes."""
    failed = set()
    if any(c > 1 for c in h.coeffs):
        failed.add(COEFF_ABOVE_ONE)
    if sum(h.coeffs) < 1:
        failed.add(SUM_BELOW_ONE)
    if any(c.denominator != 1 for c in h.coeffs):
        failed.add(NON_INTEGER_COEFF)
    return Weight1Verdict(not failed, frozenset(failed))


def stability_gap(h: Hyperplane) -> Fraction:
    return 1 - plane_weight(h)


def total_weight(n: int) -> Fraction:
    return sum((_weight(n, m.bit_count()) for m in canonical_masks(n)), Fraction(0))
