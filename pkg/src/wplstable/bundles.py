"""Catalogued vector bundles: line bundles, Auslander bundles, extension
bundles, the rank-three bundle F and rank-two quasi-simples of integer slope.

Every object is described by the line bundles in its defining exact
sequences, which is enough for K0 classes, slopes, projective covers and
injective hulls (as multisets of line-bundle twists).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .grading import C, OMEGA, X, ZERO, GradedElement, delta_fiber, parse_element
from .k0 import K0Class, class_of_line_bundle

__all__ = [
    "Line",
    "Auslander",
    "Ext",
    "RankThreeF",
    "QuasiSimpleInt",
    "BundleExpr",
    "CoverReport",
    "NoCoverFormula",
    "k0_class",
    "slope",
    "rank",
    "degree",
    "projective_cover",
    "injective_hull",
    "is_exceptional",
    "defining_sequence",
    "parse_bundle",
]


def _cls(*elements: GradedElement) -> K0Class:
    total = K0Class.zero()
    for e in elements:
        total = total + class_of_line_bundle(e)
    return total


@dataclass(frozen=True)
class Line:
    """The line bundle O(x)."""

    x: GradedElement
    tube_id = None

    def twist(self, y: GradedElement) -> Line:
        return Line(self.x + y)

    def __str__(self) -> str:
        return f"O({self.x})"


@dataclass(frozen=True)
class Auslander:
    """E_L: middle term of the almost split sequence 0 -> L(w) -> E_L -> L -> 0."""

    L: GradedElement
    tube_id = "unknown"

    def twist(self, y: GradedElement) -> Auslander:
        return Auslander(self.L + y)

    def __str__(self) -> str:
        return f"E({self.L})"


@dataclass(frozen=True)
class Ext:
    """E_L<xi>: the non-split extension 0 -> L(w) -> E -> L(xi) -> 0."""

    L: GradedElement
    i: int

    def __post_init__(self):
        if self.i not in (1, 2, 3, 4):
            raise ValueError("extension index must be in 1..4")

    @property
    def tube_id(self) -> int:
        return self.i

    def twist(self, y: GradedElement) -> Ext:
        return Ext(self.L + y, self.i)

    def __str__(self) -> str:
        return f"E<{self.L}; {self.i}>"


@dataclass(frozen=True)
class RankThreeF:
    """F(twist), where F is the extension 0 -> O(w) -> F -> E_{O(w+xj)} -> 0."""

    j: int = 1
    t: GradedElement = ZERO
    tube_id = "unknown"

    def __post_init__(self):
        if self.j not in (1, 2, 3, 4):
            raise ValueError("F index must be in 1..4")

    def twist(self, y: GradedElement) -> RankThreeF:
        return RankThreeF(self.j, self.t + y)

    def __str__(self) -> str:
        return f"F({self.j},{self.t})"


@dataclass(frozen=True)
class QuasiSimpleInt:
    """A rank-two bundle E with E(w) = E, from 0 -> L(w) -> E -> L(c) -> 0.

    Only its K0-level data is modelled: the middle term is not unique (the
    extension space is two-dimensional).  L and L + w describe the same
    data, so L is stored as the smaller of the two.
    """

    L: GradedElement
    tube_id = "homogeneous"

    def __post_init__(self):
        other = self.L + OMEGA
        if other < self.L:
            object.__setattr__(self, "L", other)

    def twist(self, y: GradedElement) -> QuasiSimpleInt:
        return QuasiSimpleInt(self.L + y)

    def __str__(self) -> str:
        return f"Q({self.L})"


BundleExpr = Union[Line, Auslander, Ext, RankThreeF, QuasiSimpleInt]


def defining_sequence(b: BundleExpr) -> tuple[tuple[GradedElement, ...], BundleExpr | None, tuple[GradedElement, ...]]:
    """A short exact sequence 0 -> A -> b -> B -> 0 as (sub, middle-quotient).

    Returns ``(sub_lines, quotient_bundle, quotient_lines)``: the sub-object
    is the sum of ``sub_lines``; the quotient is ``quotient_bundle`` when it
    is not a line bundle, otherwise the sum of ``quotient_lines``.
    """
    if isinstance(b, Auslander):
        return (b.L + OMEGA,), None, (b.L,)
    if isinstance(b, Ext):
        return (b.L + OMEGA,), None, (b.L + X[b.i - 1],)
    if isinstance(b, QuasiSimpleInt):
        return (b.L + OMEGA,), None, (b.L + C,)
    if isinstance(b, RankThreeF):
        return (b.t + OMEGA,), Auslander(b.t + OMEGA + X[b.j - 1]), ()
    raise ValueError(f"{b} has no catalogued defining sequence")


def k0_class(b: BundleExpr) -> K0Class:
    if isinstance(b, Line):
        return class_of_line_bundle(b.x)
    sub, quot, quot_lines = defining_sequence(b)
    total = _cls(*sub) + _cls(*quot_lines)
    if quot is not None:
        total = total + k0_class(quot)
    return total


def rank(b: BundleExpr) -> int:
    return k0_class(b).rank


def degree(b: BundleExpr) -> int:
    return k0_class(b).degree


def slope(b: BundleExpr) -> Fraction:
    cls = k0_class(b)
    return Fraction(cls.degree, cls.rank)


@dataclass(frozen=True)
class CoverReport:
    """Line-bundle summands of a projective cover or injective hull."""

    summands: tuple[GradedElement, ...]

    @property
    def rank(self) -> int:
        return len(self.summands)

    @property
    def degree(self) -> int:
        return sum(x.delta for x in self.summands)

    @property
    def k0_class(self) -> K0Class:
        return _cls(*self.summands)

    def to_dict(self) -> dict:
        return {
            "summands": [str(x) for x in self.summands],
            "rank": self.rank,
            "degree": self.degree,
        }


class NoCoverFormula(ValueError):
    """No closed formula for the requested cover or hull."""


def projective_cover(b: BundleExpr) -> CoverReport:
    if isinstance(b, Auslander):
        L = b.L
        return CoverReport((L + OMEGA, *(L - xi for xi in X)))
    if isinstance(b, Ext):
        L, xi = b.L, X[b.i - 1]
        return CoverReport((L + OMEGA, *(L + xi - X[j] for j in range(4) if j != b.i - 1)))
    if isinstance(b, QuasiSimpleInt):
        return CoverReport(tuple(b.L + x for x in delta_fiber(0)))
    raise NoCoverFormula(f"no projective cover formula for {b}")


def injective_hull(b: BundleExpr) -> CoverReport:
    if isinstance(b, Auslander):
        L = b.L
        return CoverReport((L, *(L + OMEGA + xi for xi in X)))
    if isinstance(b, Ext):
        L, xi = b.L, X[b.i - 1]
        return CoverReport((L + xi, *(L + OMEGA + X[j] for j in range(4) if j != b.i - 1)))
    if isinstance(b, QuasiSimpleInt):
        return CoverReport(tuple(b.L + x for x in delta_fiber(2)))
    if isinstance(b, RankThreeF):
        t = b.t
        return CoverReport((t + C, *(t + OMEGA + xi for xi in X)))
    raise NoCoverFormula(f"no injective hull formula for {b}")


def is_exceptional(b: BundleExpr) -> bool:
    """Exceptional in the stable category: an Auslander bundle, or rank equal
    to the denominator of a non-integral slope."""
    if isinstance(b, Line):
        return False
    if isinstance(b, Auslander):
        return True
    mu = slope(b)
    return mu.denominator != 1 and rank(b) == mu.denominator


# -- parsing -----------------------------------------------------------------

_LINE = re.compile(r"^O\((.*)\)$")
_AUS = re.compile(r"^E\((.*)\)$")
_EXT = re.compile(r"^E<(.*);\s*([1-4])\s*>$")
_F = re.compile(r"^F\(\s*([1-4])\s*,(.*)\)$")
_Q = re.compile(r"^Q\((.*)\)$")


def parse_bundle(text: str) -> BundleExpr:
    """Parse ``O(e)``, ``E(e)``, ``E<e; i>``, ``F(j,e)`` or ``Q(e)``."""
    s = text.strip()
    if m := _LINE.match(s):
        return Line(parse_element(m.group(1)))
    if m := _AUS.match(s):
        return Auslander(parse_element(m.group(1)))
    if m := _EXT.match(s):
        return Ext(parse_element(m.group(1)), int(m.group(2)))
    if m := _F.match(s):
        return RankThreeF(int(m.group(1)), parse_element(m.group(2)))
    if m := _Q.match(s):
        return QuasiSimpleInt(parse_element(m.group(1)))
    raise ValueError(f"cannot parse bundle {text!r}")
