"""
GF(4) arithmetic and the 4x4 discrete phase space built on it.

Field elements are the integers 0..3 read as 2-bit vectors over GF(2) in the
basis {1, w}: ``0 -> 0``, ``1 -> 1``, ``2 -> w``, ``3 -> w^2 = w + 1``.
Multiplication reduces modulo x^2 + x + 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

ELEMENTS = (0, 1, 2, 3)
NAMES = ("0", "1", "w", "w2")
ZERO, ONE, OMEGA, OMEGA2 = ELEMENTS


def _polymul(a: int, b: int) -> int:
    # carry-less product of two degree<=1 polynomials, reduced by x^2 + x + 1
    prod = 0
    for bit in range(2):
        if (b >> bit) & 1:
            prod ^= a << bit
    if prod & 0b100:
        prod ^= 0b111
    return prod


MUL_TABLE = tuple(tuple(_polymul(a, b) for b in ELEMENTS) for a in ELEMENTS)


def _check(x: int) -> int:
    if x not in ELEMENTS:
        raise ValueError(f"{x!r} is not a GF(4) element")
    return x


def gf_add(a: int, b: int) -> int:
    return _check(a) ^ _check(b)


def gf_mul(a: int, b: int) -> int:
    return MUL_TABLE[_check(a)][_check(b)]


def gf_neg(a: int) -> int:
    return _check(a)


def gf_inv(a: int) -> int:
    if _check(a) == ZERO:
        raise ZeroDivisionError("0 has no inverse in GF(4)")
    return next(b for b in ELEMENTS if MUL_TABLE[a][b] == ONE)


class PhasePoint(NamedTuple):
    q: int
    p: int

    def __str__(self) -> str:
        return f"({NAMES[self.q]},{NAMES[self.p]})"


POINTS = tuple(PhasePoint(q, p) for q in ELEMENTS for p in ELEMENTS)
ORIGIN = PhasePoint(0, 0)

# slope order m = 0, 1, w, w^2, then the vertical striation
SLOPES = (ZERO, ONE, OMEGA, OMEGA2, None)


@dataclass(frozen=True)
class Line:
    striation: int
    index: int
    points: frozenset

    def __contains__(self, pt) -> bool:
        return pt in self.points

    def label(self) -> str:
        slope = SLOPES[self.striation]
        s = "inf" if slope is None else NAMES[slope]
        return f"S{self.striation}(m={s}) L{self.index}(b={NAMES[ELEMENTS[self.index]]})"


@dataclass(frozen=True)
class StriationSet:
    striations: tuple  # 5 tuples of 4 Lines

    @property
    def lines(self) -> tuple:
        return tuple(line for s in self.striations for line in s)

    def line_through(self, point: PhasePoint, striation: int) -> Line:
        for line in self.striations[striation]:
            if point in line:
                return line
        raise LookupError(f"no line of striation {striation} contains {point}")

    def lines_through(self, point: PhasePoint) -> tuple:
        return tuple(self.line_through(point, i) for i in range(len(self.striations)))


@lru_cache(maxsize=None)
def build_striations() -> StriationSet:
    """The five striations of GF(4)^2, four parallel lines each.

    For slope m the line with intercept b is {(q, m*q + b)}; the vertical
    striation collects {(b, p)}.
    """
    striations = []
    for i, m in enumerate(SLOPES):
        lines = []
        for j, b in enumerate(ELEMENTS):
            if m is None:
                pts = frozenset(PhasePoint(b, p) for p in ELEMENTS)
            else:
                pts = frozenset(PhasePoint(q, gf_add(gf_mul(m, q), b)) for q in ELEMENTS)
            lines.append(Line(i, j, pts))
        striations.append(tuple(lines))
    return StriationSet(tuple(striations))
