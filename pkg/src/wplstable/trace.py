"""Audit traces for dimension computations.

A trace is a flat list of steps in evaluation order.  A step either closes
on its own data (a terminal rule such as a graded-ring dimension or a
slope comparison) or is an integer linear combination of earlier steps.
``replay`` re-evaluates every step independently of the engine that
produced it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .grading import parse_element
from .graded_ring import dim_S
from .k0 import K0Class, euler_form

__all__ = ["TraceStep", "Trace", "HomResult", "RULES", "replay", "ReplayError"]

# rule name -> the statement it applies
RULES: dict[str, str] = {
    "R0-line": "Hom(O(x),O(y)) = S_{y-x}",
    "R1-slope-gap": "no nonzero maps from slope q to slope r unless q <= r",
    "R2-tube-separation": "no maps between different tubes of the same slope",
    "R3-serre-flip": "D Ext(X,Y) = Hom(Y, X(w))",
    "R4-euler-closure": "<[X],[Y]> = dim Hom - dim Ext^1",
    "R5-auslander-count": "Hom(E_L, Y) = deg Y - delta(L) rk Y if mu(Y) > delta(L); Hom(Y, E_L) = delta(L) rk Y - deg Y if mu(Y) < delta(L)",
    "R6-hammock": "hammock dimensions inside a tube ([r/2], [(r+1)/2])",
    "R7-les": "long exact Hom sequence along a defining sequence",
    "sum": "additivity of Hom over direct sums",
    "S-zero-object": "line bundles are zero in the stable category",
    "S-slope-gap": "stable Hom is a quotient of Hom",
    "S-serre-slope-gap": "uHom(X, Y) = D uHom(Y[-1], X(w)) and slope gap",
    "S-translate": "shift is an equivalence",
    "S-serre-flip": "uHom(X, Y) = D uHom(Y[-1], X(w))",
    "S-quotient-zero": "stable Hom is a quotient of Hom",
    "S-injective-sequence": "0 -> Hom(X[1],Y) -> Hom(IX,Y) -> Hom(X,Y) -> uHom(X,Y) -> 0",
    "S-projective-sequence": "0 -> Hom(X,Y[-1]) -> Hom(X,PY) -> Hom(X,Y) -> uHom(X,Y) -> 0",
    "unknown": "no rule closes",
}

_LINEAR = {
    "R3-serre-flip", "R7-les", "sum", "S-translate", "S-serre-flip",
    "S-injective-sequence", "S-projective-sequence",
}


@dataclass
class TraceStep:
    rule: str
    query: str
    value: int | None
    uses: tuple[int, ...] = ()
    coeffs: tuple[int, ...] = ()
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def anchor(self) -> str:
        return RULES[self.rule]

    def to_dict(self) -> dict:
        d = {"rule": self.rule, "anchor": self.anchor, "query": self.query, "value": self.value}
        if self.uses:
            d["uses"] = list(self.uses)
            d["coeffs"] = list(self.coeffs)
        if self.data:
            d["data"] = self.data
        return d


class Trace:
    def __init__(self):
        self.steps: list[TraceStep] = []

    def add(self, rule: str, query: str, value: int | None,
            uses: tuple[int, ...] = (), coeffs: tuple[int, ...] = (), **data) -> int:
        if rule not in RULES:
            raise KeyError(rule)
        self.steps.append(TraceStep(rule, query, value, tuple(uses), tuple(coeffs), data))
        return len(self.steps) - 1

    def combine(self, rule: str, query: str, parts: list[tuple[int, int]], **data) -> int:
        """Linear step ``sum(coeff * value(step))``; unknown if any part is."""
        values = [self.steps[i].value for i, _ in parts]
        value = None if any(v is None for v in values) else sum(
            c * v for (_, c), v in zip(parts, values))
        return self.add(rule, query, value, tuple(i for i, _ in parts),
                        tuple(c for _, c in parts), **data)

    def value(self, index: int) -> int | None:
        return self.steps[index].value


@dataclass
class HomResult:
    """A dimension, or ``None`` for Unknown, with the trace that produced it."""

    value: int | None
    trace: list[TraceStep]

    @property
    def unknown(self) -> bool:
        return self.value is None

    def to_dict(self, with_trace: bool = True) -> dict:
        d: dict[str, Any] = {"dim": self.value} if self.value is not None else {"dim": None, "unknown": True}
        if with_trace:
            d["trace"] = [s.to_dict() for s in self.trace]
        return d

    def __str__(self) -> str:
        return "unknown" if self.value is None else str(self.value)


class ReplayError(AssertionError):
    pass


def _hammock(length_src: int, length_tgt: int, offset: int, period: int) -> int:
    # maps X ->> quotient of length k ~= subobject of Y; k in [1, min] with
    # k = length_tgt + offset (mod period)
    top = min(length_src, length_tgt)
    return sum(1 for k in range(1, top + 1) if (k - length_tgt - offset) % period == 0)


def _replay_terminal(step: TraceStep) -> int | None:
    d = step.data
    r = step.rule
    if r == "R0-line":
        return dim_S(parse_element(d["difference"]))
    if r in ("R1-slope-gap", "S-slope-gap"):
        if not Fraction(d["mu_source"]) > Fraction(d["mu_target"]):
            raise ReplayError(f"slope gap does not hold: {d}")
        return 0
    if r == "S-serre-slope-gap":
        if not Fraction(d["mu_target_shifted_down"]) > Fraction(d["mu_source"]):
            raise ReplayError(f"Serre slope gap does not hold: {d}")
        return 0
    if r == "R2-tube-separation":
        if d["tube_source"] == d["tube_target"]:
            raise ReplayError("tubes coincide")
        return 0
    if r == "R5-auslander-count":
        return d["sign"] * (d["degree"] - d["base_delta"] * d["rank"])
    if r == "R6-hammock":
        return _hammock(d["length_source"], d["length_target"], d["offset"], d["period"])
    if r in ("S-zero-object", "S-quotient-zero"):
        return 0
    if r == "unknown":
        return None
    raise ReplayError(f"no replay for rule {r}")


def replay(trace: list[TraceStep]) -> int | None:
    """Re-evaluate every step; returns the value of the final step."""
    values: list[int | None] = []
    for k, step in enumerate(trace):
        if any(u >= k for u in step.uses):
            raise ReplayError(f"step {k} uses a later step")
        used = [values[u] for u in step.uses]
        if step.rule == "R4-euler-closure":
            chi = euler_form(K0Class(tuple(step.data["class_source"])),
                             K0Class(tuple(step.data["class_target"])))
            v = None if None in used else chi + sum(c * u for c, u in zip(step.coeffs, used))
        elif step.rule in _LINEAR:
            v = None if None in used else sum(c * u for c, u in zip(step.coeffs, used))
        elif step.rule == "S-quotient-zero":
            if used != [0]:
                raise ReplayError("quotient-zero step must use a vanishing Hom")
            v = 0
        else:
            v = _replay_terminal(step)
        if v != step.value:
            raise ReplayError(f"step {k} ({step.rule}) recorded {step.value}, replay gives {v}")
        values.append(v)
    return values[-1] if values else None
