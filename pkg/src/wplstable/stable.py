"""The stable category of vector bundles modulo line bundles.

Three layers:

* slope dynamics of the shift functor (exact rational formulas);
* stable objects ``base[n]`` with realization of shifts where a catalogued
  bundle is known to represent them;
* a rule-based engine for ``dim Hom`` in coh and ``dim uHom`` in the stable
  category.  Every answer carries a replayable :class:`~wplstable.trace.Trace`;
  when no rule closes the answer is Unknown.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .bundles import (
    Auslander,
    BundleExpr,
    Ext,
    Line,
    NoCoverFormula,
    QuasiSimpleInt,
    RankThreeF,
    defining_sequence,
    injective_hull,
    k0_class,
    parse_bundle,
    projective_cover,
)
from .graded_ring import dim_S
from .grading import C, OMEGA, X, ZERO, GradedElement
from .k0 import INFINITY, K0Class, euler_form, tau
from .trace import HomResult, Trace, _hammock

__all__ = [
    "shift_slope_down",
    "shift_slope_up",
    "shift_slope",
    "StableObject",
    "shift_bundle",
    "parse_stable",
    "hom_dim",
    "stable_hom_dim",
    "HomResult",
]


# -- slope dynamics -----------------------------------------------------------

def _split(mu) -> tuple[int, int, int]:
    if mu is INFINITY or not isinstance(mu, (int, Fraction)):
        raise ValueError(f"shift formulas need a finite rational slope, got {mu!r}")
    mu = Fraction(mu)
    n = math.floor(mu)
    r = mu - n
    return n, r.numerator, r.denominator


def shift_slope_down(mu) -> Fraction:
    """Slope of E[-1] for an indecomposable bundle E of slope ``mu``."""
    n, q, p = _split(mu)
    if 3 * q <= p:
        return n - Fraction(4 * p - 11 * q, 3 * p - 8 * q)
    return n + Fraction(q, p - 4 * q)


def shift_slope_up(mu) -> Fraction:
    """Slope of E[1] for an indecomposable bundle E of slope ``mu``."""
    n, q, p = _split(mu)
    if 3 * q <= 2 * p:
        return n + Fraction(4 * p - 5 * q, 3 * p - 4 * q)
    return n + Fraction(12 * p - 19 * q, 5 * p - 8 * q)


def shift_slope(mu, n: int) -> Fraction:
    mu = Fraction(mu)
    step = shift_slope_up if n > 0 else shift_slope_down
    for _ in range(abs(n)):
        mu = step(mu)
    return mu


# -- stable objects -----------------------------------------------------------

def _ext_rotation(i: int, n: int) -> GradedElement:
    """Twist realizing Ext(L, i)[n]: cycle through the x_j with j != i."""
    others = [X[j - 1] for j in (1, 2, 3, 4) if j != i]
    total = ZERO
    for k in range(abs(n)):
        total = total + others[k % 3]
    return total if n >= 0 else -total


@dataclass(frozen=True)
class StableObject:
    """``base[shift]`` in the stable category."""

    base: BundleExpr
    shift: int = 0

    def canonical(self) -> StableObject:
        return _canonical(self)

    @property
    def realized(self) -> bool:
        return self.canonical().shift == 0

    def __getitem__(self, n: int) -> StableObject:
        return StableObject(self.base, self.shift + n)

    def twist(self, y: GradedElement) -> StableObject:
        return StableObject(self.base.twist(y), self.shift)

    @property
    def slope(self) -> Fraction:
        c = self.canonical()
        cls = k0_class(c.base)
        return shift_slope(Fraction(cls.degree, cls.rank), c.shift)

    @property
    def k0_class(self) -> K0Class | None:
        """Class of the bundle representing this object, when derivable."""
        return _profile(self.canonical()).cls

    @property
    def rank(self) -> int | None:
        return _profile(self.canonical()).rank

    @property
    def degree(self) -> int | None:
        return _profile(self.canonical()).degree

    def __str__(self) -> str:
        return str(self.base) if self.shift == 0 else f"{self.base}[{self.shift}]"


@lru_cache(maxsize=None)
def _canonical(obj: StableObject) -> StableObject:
    b, n = obj.base, obj.shift
    while True:
        if isinstance(b, Ext) and n != 0:
            b, n = Ext(b.L + _ext_rotation(b.i, n), b.i), 0
        elif isinstance(b, RankThreeF) and n >= 1:
            b, n = Auslander(b.t + C + OMEGA), n - 1
        elif isinstance(b, Auslander) and n <= -1:
            b, n = RankThreeF(1, b.L - C - OMEGA), n + 1
        else:
            return StableObject(b, n)


def shift_bundle(b: BundleExpr, n: int) -> StableObject:
    """``b[n]``, realized as a catalogued bundle where one is known."""
    return StableObject(b, n).canonical()


_SHIFTED = re.compile(r"^(.*)\[\s*([+-]?\d+)\s*\]$")


def parse_stable(text: str) -> StableObject:
    """``<bundle>`` or ``<bundle>[n]``."""
    s = text.strip()
    if m := _SHIFTED.match(s):
        return StableObject(parse_bundle(m.group(1)), int(m.group(2)))
    return StableObject(parse_bundle(s), 0)


def _as_stable(obj: Union[BundleExpr, StableObject]) -> StableObject:
    return obj if isinstance(obj, StableObject) else StableObject(obj, 0)


# -- profiles: what the engine knows about the bundle representing an object ---

@dataclass(frozen=True)
class _Tube:
    kind: str                 # "exceptional" or "homogeneous"
    key: tuple                # identifies the tube
    position: int             # index of the quasi-top, mod period
    length: int
    period: int
    label: str


@dataclass(frozen=True)
class _Profile:
    obj: StableObject
    mu: Fraction
    rank: int | None
    degree: int | None
    cls: K0Class | None
    tube: _Tube | None


def _tube_of_class(a: K0Class, top: K0Class, length: int) -> _Tube:
    pair = sorted({a.coeffs, tau(a).coeffs})
    return _Tube("exceptional", tuple(pair), pair.index(top.coeffs), length, 2,
                 "{" + " | ".join(str(K0Class(p)) for p in pair) + "}")


def _realized_tube(b: BundleExpr, cls: K0Class) -> _Tube:
    if isinstance(b, Line):
        return _tube_of_class(cls, cls, 1)
    if isinstance(b, Auslander):
        top = k0_class(Line(b.L))
        return _tube_of_class(top, top, 2)
    if isinstance(b, QuasiSimpleInt):
        return _Tube("homogeneous", cls.coeffs, 0, 1, 1, f"homogeneous {cls}")
    return _tube_of_class(cls, cls, 1)


@lru_cache(maxsize=None)
def _profile(obj: StableObject) -> _Profile:
    b, n = obj.base, obj.shift
    if n == 0:
        cls = k0_class(b)
        return _Profile(obj, Fraction(cls.degree, cls.rank), cls.rank, cls.degree,
                        cls, _realized_tube(b, cls))
    mu = obj.slope
    cls = None
    try:
        if n == 1:
            cls = injective_hull(b).k0_class - k0_class(b)
        elif n == -1:
            cls = projective_cover(b).k0_class - k0_class(b)
    except NoCoverFormula:
        pass
    if cls is not None:
        assert Fraction(cls.degree, cls.rank) == mu, (obj, cls, mu)
        return _Profile(obj, mu, cls.rank, cls.degree, cls, None)
    if isinstance(b, QuasiSimpleInt):
        return _Profile(obj, mu, None, None, None, None)
    # shifts of exceptional objects stay exceptional: Auslander (rank 2) at
    # integral slope, otherwise rank is the slope denominator
    r = 2 if mu.denominator == 1 else mu.denominator
    return _Profile(obj, mu, r, int(mu * r), None, None)


def _is_line(obj: StableObject) -> bool:
    return isinstance(obj.base, Line)


def _line(x: GradedElement) -> StableObject:
    return StableObject(Line(x), 0)


# -- Hom in coh ----------------------------------------------------------------

_MAX_DEPTH = 8


def _hom(t: Trace, X_: StableObject, Y_: StableObject, depth: int = 0) -> int:
    Xc, Yc = X_.canonical(), Y_.canonical()
    px, py = _profile(Xc), _profile(Yc)
    q = f"Hom({Xc}, {Yc})"

    # R0
    if _is_line(Xc) and _is_line(Yc):
        d = Yc.base.x - Xc.base.x
        return t.add("R0-line", q, dim_S(d), difference=str(d))

    # R1
    if px.mu > py.mu:
        return t.add("R1-slope-gap", q, 0, mu_source=str(px.mu), mu_target=str(py.mu))

    if px.mu == py.mu:
        tx, ty = px.tube, py.tube
        if tx is not None and ty is not None:
            # R2
            if tx.kind != ty.kind or tx.key != ty.key:
                return t.add("R2-tube-separation", q, 0,
                             tube_source=f"{tx.kind} {tx.label}", tube_target=f"{ty.kind} {ty.label}")
            # R6
            if tx.kind == "exceptional" or Xc == Yc:
                offset = (ty.position - tx.position) % tx.period
                v = _hammock(tx.length, ty.length, offset, tx.period)
                return t.add("R6-hammock", q, v, length_source=tx.length,
                             length_target=ty.length, offset=offset, period=tx.period)
        return t.add("unknown", q, None, reason="equal slopes without comparable tube data")

    # mu(X) < mu(Y)
    if depth < _MAX_DEPTH:
        mark = len(t.steps)
        # R3 + R4
        if px.cls is not None and py.cls is not None:
            e = _hom(t, Yc, Xc.twist(OMEGA), depth + 1)
            if t.value(e) is not None:
                ext = t.combine("R3-serre-flip", f"Ext1({Xc}, {Yc})", [(e, 1)])
                chi = euler_form(px.cls, py.cls)
                return t.add("R4-euler-closure", q, chi + t.value(ext), (ext,), (1,),
                             class_source=list(px.cls.coeffs), class_target=list(py.cls.coeffs))
            del t.steps[mark:]
        # R5
        if isinstance(Xc.base, Auslander) and Xc.shift == 0 and py.rank is not None:
            dl = Xc.base.L.delta
            return t.add("R5-auslander-count", q, py.degree - dl * py.rank,
                         sign=1, degree=py.degree, base_delta=dl, rank=py.rank)
        if isinstance(Yc.base, Auslander) and Yc.shift == 0 and px.rank is not None:
            dl = Yc.base.L.delta
            return t.add("R5-auslander-count", q, dl * px.rank - px.degree,
                         sign=-1, degree=px.degree, base_delta=dl, rank=px.rank)
        # R7
        idx = _les(t, Xc, Yc, q, depth)
        if idx is not None:
            return idx
        del t.steps[mark:]
    return t.add("unknown", q, None, reason="no rule closes")


def _pieces(b: BundleExpr) -> tuple[list[StableObject], list[StableObject]]:
    sub, quot, quot_lines = defining_sequence(b)
    subs = [_line(x) for x in sub]
    quots = [StableObject(quot, 0)] if quot is not None else [_line(x) for x in quot_lines]
    return subs, quots


def _les(t: Trace, Xc: StableObject, Yc: StableObject, q: str, depth: int) -> int | None:
    """Split Hom along 0 -> A -> X -> B -> 0 (or the sequence of Y) when the
    connecting term vanishes."""
    if Xc.shift == 0 and not _is_line(Xc):
        subs, quots = _pieces(Xc.base)
        # 0 -> Hom(B,Y) -> Hom(X,Y) -> Hom(A,Y) -> Ext(B,Y) = D Hom(Y, B(w))
        mark = len(t.steps)
        ext = [_hom(t, Yc, b.twist(OMEGA), depth + 1) for b in quots]
        if all(t.value(e) == 0 for e in ext):
            parts = [_hom(t, Xa, Yc, depth + 1) for Xa in quots + subs]
            if all(t.value(p) is not None for p in parts):
                return t.combine("R7-les", q, [(p, 1) for p in parts],
                                 sequence=f"0 -> {' + '.join(map(str, subs))} -> {Xc} -> "
                                          f"{' + '.join(map(str, quots))} -> 0",
                                 vanishing=list(ext))
        del t.steps[mark:]
    if Yc.shift == 0 and not _is_line(Yc):
        subs, quots = _pieces(Yc.base)
        # 0 -> Hom(X,A) -> Hom(X,Y) -> Hom(X,B) -> Ext(X,A) = D Hom(A, X(w))
        mark = len(t.steps)
        ext = [_hom(t, a, Xc.twist(OMEGA), depth + 1) for a in subs]
        if all(t.value(e) == 0 for e in ext):
            parts = [_hom(t, Xc, Ya, depth + 1) for Ya in subs + quots]
            if all(t.value(p) is not None for p in parts):
                return t.combine("R7-les", q, [(p, 1) for p in parts],
                                 sequence=f"0 -> {' + '.join(map(str, subs))} -> {Yc} -> "
                                          f"{' + '.join(map(str, quots))} -> 0",
                                 vanishing=list(ext))
        del t.steps[mark:]
    return None


def hom_dim(X_: Union[BundleExpr, StableObject], Y_: Union[BundleExpr, StableObject]) -> HomResult:
    """dim Hom(X, Y) in coh, for catalogued bundles or representatives of
    shifted objects."""
    t = Trace()
    _hom(t, _as_stable(X_), _as_stable(Y_))
    return HomResult(t.steps[-1].value, t.steps)


# -- stable Hom ----------------------------------------------------------------

_CANDIDATE_SHIFTS = (0, -1, 1, -2, 2, -3, 3)


def _sum_hom(t: Trace, sources: list[StableObject], targets: list[StableObject], q: str) -> int:
    parts = [_hom(t, a, b) for a in sources for b in targets]
    return t.combine("sum", q, [(p, 1) for p in parts])


def _route_injective(t: Trace, P: StableObject, Q: StableObject, q: str) -> int | None:
    try:
        hull = injective_hull(P.base)
    except NoCoverFormula:
        return None
    h = _hom(t, P, Q)
    if t.value(h) == 0:
        return t.add("S-quotient-zero", q, 0, (h,), (1,))
    iq = f"Hom(I({P}), {Q})"
    hi = _sum_hom(t, [_line(y) for y in hull.summands], [Q], iq)
    h1 = _hom(t, P[1], Q)
    return t.combine("S-injective-sequence", q, [(h, 1), (hi, -1), (h1, 1)],
                     hull=[str(y) for y in hull.summands])


def _route_projective(t: Trace, P: StableObject, Q: StableObject, q: str) -> int | None:
    try:
        cover = projective_cover(Q.base)
    except NoCoverFormula:
        return None
    h = _hom(t, P, Q)
    if t.value(h) == 0:
        return t.add("S-quotient-zero", q, 0, (h,), (1,))
    pq = f"Hom({P}, P({Q}))"
    hp = _sum_hom(t, [P], [_line(y) for y in cover.summands], pq)
    hm = _hom(t, P, Q[-1])
    return t.combine("S-projective-sequence", q, [(h, 1), (hp, -1), (hm, 1)],
                     cover=[str(y) for y in cover.summands])


def _candidates(X_: StableObject, Y_: StableObject):
    for s in _CANDIDATE_SHIFTS:
        yield "S-translate", s, X_[s].canonical(), Y_[s].canonical()
        # uHom(X, Y) = D uHom(Y[-1], X(w))
        yield "S-serre-flip", s, Y_[s - 1].canonical(), X_.twist(OMEGA)[s].canonical()


def _stable(t: Trace, X_: StableObject, Y_: StableObject) -> int:
    Xc, Yc = X_.canonical(), Y_.canonical()
    q = f"uHom({Xc}, {Yc})"
    if _is_line(Xc) or _is_line(Yc):
        return t.add("S-zero-object", q, 0, zero=str(Xc if _is_line(Xc) else Yc))
    mx, my = Xc.slope, Yc.slope
    if mx > my:
        return t.add("S-slope-gap", q, 0, mu_source=str(mx), mu_target=str(my))
    my_down = Yc[-1].slope
    if my_down > mx:
        return t.add("S-serre-slope-gap", q, 0, mu_source=str(mx),
                     mu_target_shifted_down=str(my_down))
    tried = []
    for rule, s, P, Q in _candidates(Xc, Yc):
        lq = f"uHom({P}, {Q})"
        for route in (_route_injective, _route_projective):
            if route is _route_injective and not (P.shift == 0 and not _is_line(P)):
                continue
            if route is _route_projective and not (Q.shift == 0 and not _is_line(Q)):
                continue
            mark = len(t.steps)
            idx = route(t, P, Q, lq)
            if idx is not None and t.value(idx) is not None:
                if (P, Q) == (Xc, Yc):
                    return idx
                return t.combine(rule, q, [(idx, 1)], shift=s)
            del t.steps[mark:]
            tried.append(f"{route.__name__.strip('_')} on ({P}, {Q})")
    return t.add("unknown", q, None, tried=tried)


def stable_hom_dim(X_: Union[BundleExpr, StableObject], Y_: Union[BundleExpr, StableObject]) -> HomResult:
    """dim uHom(X, Y) in the stable category."""
    t = Trace()
    _stable(t, _as_stable(X_), _as_stable(Y_))
    return HomResult(t.steps[-1].value, t.steps)
