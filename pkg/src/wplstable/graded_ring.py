"""Graded pieces of S = k[X1..X4] / (X3^2 - X2^2 - X1^2, X4^2 - X2^2 - lam*X1^2).

Only dimensions are computed.  :func:`dim_S` is the closed form; the
functions below it rewrite monomials and enumerate reduced monomials, and
are used as an independent check of the closed form.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import product

from .grading import GradedElement, normalize

__all__ = [
    "FormalLambda",
    "MonomialBasisElement",
    "dim_S",
    "dim_S_oracle",
    "reduce_monomial",
    "BoundTooSmall",
    "reduced_monomials",
    "rewriting_stays_in_degree",
    "LAMBDA",
]


class BoundTooSmall(ValueError):
    """The enumeration bound cannot reach the requested degree."""


@dataclass(frozen=True)
class FormalLambda:
    """The cross-ratio parameter; never evaluated, only carried as a symbol.

    It is assumed different from 0, 1 and infinity.
    """

    name: str = "lambda"

    def __str__(self) -> str:
        return self.name


LAMBDA = FormalLambda()


@dataclass(frozen=True, order=True)
class MonomialBasisElement:
    """Reduced monomial ``x1^a x2^b x3^e3 x4^e4`` with e3, e4 in {0, 1}."""

    a: int
    b: int
    e3: int
    e4: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0 or self.e3 not in (0, 1) or self.e4 not in (0, 1):
            raise ValueError(f"not a reduced monomial: {self}")

    @property
    def degree(self) -> GradedElement:
        return normalize(self.a, self.b, self.e3, self.e4)

    @property
    def total_degree(self) -> int:
        return self.a + self.b + self.e3 + self.e4


def dim_S(x: GradedElement) -> int:
    """dim_k S_x: ``l + 1`` for effective x with c-coefficient l, else 0."""
    return x.l + 1 if x.is_effective() else 0


# Polynomials in lambda are dicts {power: integer coefficient}; a rewritten
# element of S is a dict {MonomialBasisElement: lambda-polynomial}.

def _poly_mul(p: dict[int, int], q: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = defaultdict(int)
    for i, a in p.items():
        for j, b in q.items():
            out[i + j] += a * b
    return {k: v for k, v in out.items() if v}


def reduce_monomial(e1: int, e2: int, e3: int, e4: int) -> dict[MonomialBasisElement, dict[int, int]]:
    """Rewrite ``X1^e1 X2^e2 X3^e3 X4^e4`` into reduced monomials.

    Uses x3^2 -> x1^2 + x2^2 and x4^2 -> x2^2 + lam*x1^2; coefficients are
    integer polynomials in lam.
    """
    # (x1^2 + x2^2)^u (x2^2 + lam x1^2)^v, tracked as {(i, j): poly} meaning x1^(2i) x2^(2j)
    terms: dict[tuple[int, int], dict[int, int]] = {(0, 0): {0: 1}}
    factors = [({(1, 0): {0: 1}, (0, 1): {0: 1}}, e3 // 2), ({(1, 0): {1: 1}, (0, 1): {0: 1}}, e4 // 2)]
    for factor, times in factors:
        for _ in range(times):
            nxt: dict[tuple[int, int], dict[int, int]] = {}
            for (i, j), p in terms.items():
                for (di, dj), q in factor.items():
                    key = (i + di, j + dj)
                    acc = nxt.setdefault(key, {})
                    for k, v in _poly_mul(p, q).items():
                        acc[k] = acc.get(k, 0) + v
            terms = {k: {d: c for d, c in p.items() if c} for k, p in nxt.items()}
    out = {}
    for (i, j), p in terms.items():
        if p:
            out[MonomialBasisElement(e1 + 2 * i, e2 + 2 * j, e3 % 2, e4 % 2)] = p
    return out


def reduced_monomials(x: GradedElement, bound: int) -> list[MonomialBasisElement]:
    """Reduced monomials of degree x with total exponent at most ``bound``."""
    if x.delta > bound:
        raise BoundTooSmall(f"bound {bound} is below delta({x}) = {x.delta}")
    found = []
    for e3, e4 in product((0, 1), repeat=2):
        for a in range(bound + 1 - e3 - e4):
            for b in range(bound + 1 - e3 - e4 - a):
                m = MonomialBasisElement(a, b, e3, e4)
                if m.degree == x:
                    found.append(m)
    return found


def dim_S_oracle(x: GradedElement, bound: int) -> int:
    """Count reduced monomials of degree exactly x by enumeration.

    Reduced monomials are pairwise distinct formal expressions over the free
    k[x1, x2]-basis {1, x3, x4, x3*x4}, hence linearly independent; their
    count is the dimension.  Raises :class:`BoundTooSmall` instead of
    silently undercounting.
    """
    return len(reduced_monomials(x, bound))


def rewriting_stays_in_degree(x: GradedElement) -> bool:
    """Check that every raw monomial of degree x rewrites into reduced
    monomials of degree x (the rewriting rules are homogeneous)."""
    if x.delta < 0:
        return True
    basis = set(reduced_monomials(x, x.delta))
    for e1, e2, e3 in product(range(x.delta + 1), repeat=3):
        e4 = x.delta - e1 - e2 - e3
        if e4 < 0 or normalize(e1, e2, e3, e4) != x:
            continue
        if not set(reduce_monomial(e1, e2, e3, e4)) <= basis:
            return False
    return True
