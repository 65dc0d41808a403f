"""The Grothendieck group K0 of the weighted projective line, as Z^6.

Ordered basis: [O(0)], [O(x1)], [O(x2)], [O(x3)], [O(x4)], [O(c)].

Line bundle classes are reduced to this basis by two relations:

R1  [O(y+c)] = [O(y)] + [O(c)] - [O(0)]
    [O(y+c)] - [O(y)] is the class of an ordinary simple sheaf, and that
    class does not depend on y.

R2  [O(y+xi+xj)] = [O(y+xi)] + [O(y+xj)] - [O(y)]            (i != j)
    both differences are the class of the exceptional simple at point i
    supported under O(y+xi) resp. O(y+xi+xj); twisting that simple by xj
    with j != i fixes it.

The reducer applies them in any order; the result does not depend on the
order (checked in the test-suite), and agrees with :func:`closed_form_class`.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Union

from .grading import C, OMEGA, X, ZERO, GradedElement, parse_element
from .graded_ring import dim_S

__all__ = [
    "K0Class",
    "BASIS",
    "INFINITY",
    "Slope",
    "class_of_line_bundle",
    "closed_form_class",
    "reduce_line_bundle",
    "euler_form",
    "tau",
    "rank",
    "degree",
    "slope",
    "class_of_exceptional_simple",
    "class_of_tube_fiber",
    "parse_class",
    "ZeroClassSlope",
]

BASIS: tuple[GradedElement, ...] = (ZERO, *X, C)
_INDEX = {b: k for k, b in enumerate(BASIS)}
_DEGREES = tuple(b.delta for b in BASIS)


class _Infinity:
    """Slope of a nonzero class of rank 0."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "INFINITY"

    __str__ = lambda self: "inf"  # noqa: E731


INFINITY = _Infinity()
Slope = Union[Fraction, _Infinity]


class ZeroClassSlope(ValueError):
    """The zero class has no slope."""


@dataclass(frozen=True)
class K0Class:
    coeffs: tuple[int, int, int, int, int, int]

    def __post_init__(self):
        if len(self.coeffs) != 6:
            raise ValueError("K0 classes have six coordinates")

    @classmethod
    def zero(cls) -> K0Class:
        return cls((0,) * 6)

    @classmethod
    def basis_vector(cls, k: int) -> K0Class:
        v = [0] * 6
        v[k] = 1
        return cls(tuple(v))

    def __add__(self, other: K0Class) -> K0Class:
        return K0Class(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: K0Class) -> K0Class:
        return K0Class(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> K0Class:
        return K0Class(tuple(-a for a in self.coeffs))

    def __mul__(self, k: int) -> K0Class:
        return K0Class(tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    @property
    def rank(self) -> int:
        return sum(self.coeffs)

    @property
    def degree(self) -> int:
        return sum(a * d for a, d in zip(self.coeffs, _DEGREES))

    def __str__(self) -> str:
        terms = []
        for a, b in zip(self.coeffs, BASIS):
            if a:
                terms.append(f"{a:+d}*[O({b})]")
        return " ".join(terms) if terms else "0"


# -- reduction --------------------------------------------------------------

# A rewrite step: (rule name, element rewritten, ((element, coefficient), ...)).
# Pairs rather than a dict: produced elements may coincide (e.g. -c + c = 0).
Step = tuple[str, GradedElement, tuple[tuple[GradedElement, int], ...]]


def _applicable(x: GradedElement) -> list[Step]:
    """All single rewrites of [O(x)] that strictly simplify it."""
    if x in _INDEX:
        return []
    steps: list[Step] = []
    if x.l > 0:
        y = x - C
        steps.append(("R1", x, ((y, 1), (C, 1), (ZERO, -1))))
    elif x.l < 0:
        # [O(x)] = [O(x+c)] - [O(c)] + [O(0)]
        steps.append(("R1", x, ((x + C, 1), (C, -1), (ZERO, 1))))
    ones = [i for i, v in enumerate(x.coeffs) if v]
    for i, j in combinations(ones, 2):
        y = x - X[i] - X[j]
        steps.append(("R2", x, ((y + X[i], 1), (y + X[j], 1), (y, -1))))
    return steps


Chooser = Callable[[list[Step]], Step]


def _canonical_choice(steps: list[Step]) -> Step:
    # split sums of generators first (lowest index pair), then strip c
    for s in steps:
        if s[0] == "R2":
            return s
    return steps[0]


def reduce_line_bundle(x: GradedElement, chooser: Chooser | None = None,
                       log: list[Step] | None = None) -> K0Class:
    """Reduce [O(x)] to the basis, choosing rewrites with ``chooser``.

    Each rewrite lowers ``5*|l| + sum(li)`` on every produced term, so the
    loop terminates for every choice strategy.
    """
    choose = chooser or _canonical_choice
    pending: dict[GradedElement, int] = {x: 1}
    done = [0] * 6
    while pending:
        z, k = next(iter(pending.items()))
        del pending[z]
        if k == 0:
            continue
        if z in _INDEX:
            done[_INDEX[z]] += k
            continue
        step = choose(_applicable(z))
        if log is not None:
            log.append(step)
        for w, a in step[2]:
            pending[w] = pending.get(w, 0) + k * a
    return K0Class(tuple(done))


def random_chooser(rng: random.Random) -> Chooser:
    return lambda steps: rng.choice(steps)


def closed_form_class(x: GradedElement) -> K0Class:
    """[O(x)] = sum_{i in I}[O(xi)] - (|I|-1)[O(0)] + l([O(c)] - [O(0)])."""
    v = [0] * 6
    ones = [i for i, e in enumerate(x.coeffs) if e]
    if ones:
        for i in ones:
            v[1 + i] += 1
        v[0] -= len(ones) - 1
    else:
        v[0] += 1
    v[5] += x.l
    v[0] -= x.l
    return K0Class(tuple(v))


_CLASS_CACHE: dict[GradedElement, K0Class] = {}


def class_of_line_bundle(x: GradedElement) -> K0Class:
    """[O(x)] in the basis, via the canonical rewriting order."""
    cls = _CLASS_CACHE.get(x)
    if cls is None:
        cls = _CLASS_CACHE[x] = reduce_line_bundle(x)
    return cls


# -- forms and functionals ----------------------------------------------------

def _line_pairing(x: GradedElement, y: GradedElement) -> int:
    # dim Hom(O(x), O(y)) - dim Ext^1(O(x), O(y)),  Ext^1 = D Hom(O(y), O(x+w))
    return dim_S(y - x) - dim_S(x + OMEGA - y)


_GRAM = tuple(tuple(_line_pairing(a, b) for b in BASIS) for a in BASIS)


def euler_form(a: K0Class, b: K0Class) -> int:
    return sum(
        a.coeffs[i] * _GRAM[i][j] * b.coeffs[j]
        for i in range(6) if a.coeffs[i]
        for j in range(6) if b.coeffs[j]
    )


_TAU_IMAGES = tuple(class_of_line_bundle(b + OMEGA) for b in BASIS)


def tau(a: K0Class) -> K0Class:
    """Twist by the dualizing element, extended linearly."""
    out = K0Class.zero()
    for k, coeff in enumerate(a.coeffs):
        if coeff:
            out = out + coeff * _TAU_IMAGES[k]
    return out


def rank(a: K0Class) -> int:
    return a.rank


def degree(a: K0Class) -> int:
    return a.degree


def slope(a: K0Class) -> Slope:
    r, d = a.rank, a.degree
    if r == 0:
        if d == 0 and a == K0Class.zero():
            raise ZeroClassSlope("slope of the zero class is undefined")
        return INFINITY
    return Fraction(d, r)


def class_of_exceptional_simple(i: int, parity: int) -> K0Class:
    """Class of the exceptional simple at point i (1..4) with given parity.

    parity 0: [O(xi)] - [O(0)];  parity 1: [O(c)] - [O(xi)].
    """
    if i not in (1, 2, 3, 4) or parity not in (0, 1):
        raise ValueError("need i in 1..4 and parity in {0, 1}")
    xi = X[i - 1]
    p = parity * xi
    return class_of_line_bundle(p + xi) - class_of_line_bundle(p)


def class_of_tube_fiber() -> K0Class:
    """Class of an ordinary simple: [O(c)] - [O(0)]."""
    return class_of_line_bundle(C) - class_of_line_bundle(ZERO)


_CLASS_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)\s*\*?\s*)?\[\s*O\(([^()]*)\)\s*\]\s*")


def parse_class(text: str) -> K0Class:
    """Parse an integer combination of ``[O(<element>)]`` terms."""
    s = text.strip()
    if not s:
        raise ValueError("empty class expression")
    pos, total, first = 0, K0Class.zero(), True
    while pos < len(s):
        m = _CLASS_TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse class {text!r} at offset {pos}")
        sign, mult, elt = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing operator in {text!r} at offset {pos}")
        k = int(mult) if mult else 1
        if sign == "-":
            k = -k
        total = total + k * class_of_line_bundle(parse_element(elt))
        first = False
        pos = m.end()
    return total
