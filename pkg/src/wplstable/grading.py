"""The grading group L of type (2,2,2,2).

L is generated by x1..x4 subject to 2*x1 = 2*x2 = 2*x3 = 2*x4 =: c.  Every
element has a unique normal form ``l1*x1 + l2*x2 + l3*x3 + l4*x4 + l*c``
with each ``li`` in {0, 1}; :class:`GradedElement` stores only that form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product

__all__ = [
    "GradedElement",
    "normalize",
    "ZERO",
    "C",
    "OMEGA",
    "X",
    "delta_fiber",
    "parse_element",
]


@dataclass(frozen=True, order=True)
class GradedElement:
    """An element of L in normal form.

    ``coeffs`` holds (l1, l2, l3, l4) with entries in {0, 1}; ``l`` is the
    coefficient of c.  Use :func:`normalize` to build one from raw data.
    """

    coeffs: tuple[int, int, int, int]
    l: int

    def __post_init__(self):
        if len(self.coeffs) != 4 or any(v not in (0, 1) for v in self.coeffs):
            raise ValueError(f"not a normal form: {self.coeffs!r}")

    def __add__(self, other: GradedElement) -> GradedElement:
        a = [s + t for s, t in zip(self.coeffs, other.coeffs)]
        return normalize(*a, self.l + other.l)

    def __neg__(self) -> GradedElement:
        return normalize(*(-v for v in self.coeffs), -self.l)

    def __sub__(self, other: GradedElement) -> GradedElement:
        return self + (-other)

    def __mul__(self, k: int) -> GradedElement:
        return normalize(*(k * v for v in self.coeffs), k * self.l)

    __rmul__ = __mul__

    @property
    def delta(self) -> int:
        return sum(self.coeffs) + 2 * self.l

    def is_effective(self) -> bool:
        # normal-form coefficients are already in {0, 1}
        return self.l >= 0

    def leq(self, other: GradedElement) -> bool:
        return (other - self).is_effective()

    def raw(self) -> tuple[int, int, int, int, int]:
        return (*self.coeffs, self.l)

    def __str__(self) -> str:
        parts = [f"x{i + 1}" for i, v in enumerate(self.coeffs) if v]
        if self.l == 1:
            parts.append("c")
        elif self.l == -1:
            parts.append("-c")
        elif self.l:
            parts.append(f"{self.l}*c")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self) -> str:
        return f"GradedElement({self})"


def normalize(a1: int, a2: int, a3: int, a4: int, m: int = 0) -> GradedElement:
    """Normal form of ``a1*x1 + ... + a4*x4 + m*c``.

    Each ``ai`` is split as ``2*(ai // 2) + (ai % 2)``; floor division makes
    negative coefficients follow ``-xi = xi - c``.
    """
    raw = (a1, a2, a3, a4)
    return GradedElement(tuple(a % 2 for a in raw), m + sum(a // 2 for a in raw))


ZERO = normalize(0, 0, 0, 0, 0)
C = normalize(0, 0, 0, 0, 1)
OMEGA = normalize(-1, -1, -1, -1, 2)
X = (
    normalize(1, 0, 0, 0),
    normalize(0, 1, 0, 0),
    normalize(0, 0, 1, 0),
    normalize(0, 0, 0, 1),
)


def delta_fiber(d: int) -> list[GradedElement]:
    """All elements with ``delta == d``; there are always exactly eight."""
    out = []
    for coeffs in product((0, 1), repeat=4):
        rest = d - sum(coeffs)
        if rest % 2 == 0:
            out.append(GradedElement(coeffs, rest // 2))
    return sorted(out)


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)\s*\*\s*)?(x[1-4]|c|w)\s*")
_GENERATORS = {
    "x1": X[0],
    "x2": X[1],
    "x3": X[2],
    "x4": X[3],
    "c": C,
    "w": OMEGA,
}


def parse_element(text: str) -> GradedElement:
    """Parse ``["-"] term {("+"|"-") term}`` with ``term ::= [int "*"] gen``.

    Generators are x1..x4, c and w (the dualizing element).  The single
    token ``0`` denotes the neutral element.
    """
    s = text.strip()
    if s == "0":
        return ZERO
    if not s:
        raise ValueError("empty element")
    pos = 0
    total = ZERO
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse element {text!r} at offset {pos}")
        sign, mult, gen = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing operator in {text!r} at offset {pos}")
        k = int(mult) if mult else 1
        if sign == "-":
            k = -k
        total = total + k * _GENERATORS[gen]
        first = False
        pos = m.end()
    return total
