"""Tilting checks for the two candidate objects in the stable category, the
rank-two Hom bound scan and slope normalization."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .bundles import Auslander, Ext, QuasiSimpleInt, RankThreeF, k0_class
from .graded_ring import LAMBDA
from .grading import OMEGA, X, ZERO, delta_fiber
from .stable import StableObject, shift_slope_down, shift_slope_up, stable_hom_dim
from .trace import HomResult

__all__ = [
    "CanonicalAlgebraSpec",
    "TiltingReport",
    "CANONICAL_T",
    "CANONICAL_TPRIME",
    "summands_T",
    "summands_Tprime",
    "verify_tilting",
    "verify_tilting_T",
    "verify_tilting_Tprime",
    "rank_two_scan",
    "RankTwoScanReport",
    "slope_normalize",
    "regression_cells",
]


@dataclass(frozen=True)
class CanonicalAlgebraSpec:
    """A bound quiver presentation; only dimensions are checked, not relations
    at the level of morphisms."""

    name: str
    weight_type: tuple[int, ...]
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]          # (label, source, target)
    relations: tuple[tuple[str, str, str], ...]       # (text, source, target)

    def paths(self, length: int) -> list[tuple[str, ...]]:
        out: list[tuple[str, ...]] = [(a,) for a, _, _ in self.arrows]
        for _ in range(length - 1):
            out = [p + (a,) for p in out for a, s, _ in self.arrows
                   if s == self._target(p[-1])]
        return out

    def _target(self, arrow: str) -> str:
        return next(t for a, _, t in self.arrows if a == arrow)

    def _source(self, arrow: str) -> str:
        return next(s for a, s, _ in self.arrows if a == arrow)

    def dimension_table(self) -> list[list[int]]:
        """dim e_j A e_i counted as vertices + arrows + (2-paths - relations).

        Both presentations here have no paths longer than two.
        """
        assert not self.paths(3)
        idx = {v: k for k, v in enumerate(self.vertices)}
        n = len(self.vertices)
        table = [[int(a == b) for b in range(n)] for a in range(n)]
        for _, s, t in self.arrows:
            table[idx[s]][idx[t]] += 1
        for p in self.paths(2):
            table[idx[self._source(p[0])]][idx[self._target(p[-1])]] += 1
        for _, s, t in self.relations:
            table[idx[s]][idx[t]] -= 1
        return table

    @property
    def total_dimension(self) -> int:
        return len(self.vertices) + len(self.arrows) + len(self.paths(2)) - len(self.relations)


CANONICAL_T = CanonicalAlgebraSpec(
    name="T",
    weight_type=(2, 2, 2, 2),
    vertices=("E", "E1", "E2", "E3", "E4", "F"),
    arrows=tuple((f"f{i}", "E", f"E{i}") for i in range(1, 5))
    + tuple((f"g{i}", f"E{i}", "F") for i in range(1, 5)),
    relations=(
        ("g3f3 = g2f2 + g1f1", "E", "F"),
        (f"g4f4 = g2f2 + {LAMBDA}*g1f1", "E", "F"),
    ),
)

CANONICAL_TPRIME = CanonicalAlgebraSpec(
    name="Tprime",
    weight_type=(2, 2, 2, 2),
    vertices=("F[-1](w)", "E", "E1", "E2", "E3", "E4"),
    arrows=(("a1", "F[-1](w)", "E"), ("a2", "F[-1](w)", "E"))
    + tuple((f"b{i}", "E", f"E{i}") for i in range(1, 5)),
    relations=tuple((f"b{i}a1 = b{i}a2", "F[-1](w)", f"E{i}") for i in range(1, 5)),
)


def summands_T() -> list[StableObject]:
    return [StableObject(Auslander(ZERO))] + [StableObject(Ext(ZERO, i)) for i in (1, 2, 3, 4)] \
        + [StableObject(RankThreeF(1, ZERO))]


def summands_Tprime() -> list[StableObject]:
    return [StableObject(RankThreeF(1, OMEGA), -1)] + summands_T()[:5]


@dataclass
class TiltingReport:
    name: str
    summands: list[StableObject]
    window: int
    matrix: dict[tuple[int, int, int], HomResult]
    endo_table: list[list[int | None]]
    expected_table: list[list[int]]
    certificates: dict[tuple[int, int], dict[str, str]]
    verdict: str                       # "verified" | "failed" | "inconclusive"
    failed_cells: list[str] = field(default_factory=list)
    unknown_cells: list[tuple[int, int, int]] = field(default_factory=list)
    relation_note: str = ""

    @property
    def verified(self) -> bool:
        return self.verdict == "verified"

    @property
    def total_dimension(self) -> int | None:
        vals = [v for row in self.endo_table for v in row]
        return None if None in vals else sum(vals)

    def to_dict(self, with_trace: bool = True) -> dict:
        names = [str(s) for s in self.summands]
        return {
            "object": self.name,
            "summands": names,
            "window": self.window,
            "cells": [
                {"from": names[i], "to": names[j], "n": n, **r.to_dict(with_trace)}
                for (i, j, n), r in sorted(self.matrix.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1]))
            ],
            "endo_table": self.endo_table,
            "expected_table": self.expected_table,
            "total_dimension": self.total_dimension,
            "off_window_certificates": [
                {"from": names[i], "to": names[j], **cert}
                for (i, j), cert in sorted(self.certificates.items())
            ],
            "verdict": self.verdict,
            "failed_cells": self.failed_cells,
            "unknown_cells": [
                {"from": names[i], "to": names[j], "n": n} for i, j, n in self.unknown_cells
            ],
            "relation_note": self.relation_note,
        }

    def to_text(self) -> str:
        names = [str(s) for s in self.summands]
        w = max(len(s) for s in names)
        lines = [f"object {self.name}: " + " + ".join(names), f"window |n| <= {self.window}", "n = 0 table:"]
        for name, row in zip(names, self.endo_table):
            lines.append(f"  {name:<{w}}  " + " ".join("?" if v is None else str(v) for v in row))
        lines.append(f"total dimension: {self.total_dimension}")
        nonzero = [(k, r.value) for k, r in self.matrix.items() if k[2] != 0 and r.value != 0]
        lines.append(f"nonzero cells with n != 0: {len(nonzero)}")
        lines.append(f"off-window certificates: {len(self.certificates)}")
        lines.append(f"relations: {self.relation_note}")
        for c in self.failed_cells:
            lines.append(f"failed: {c}")
        for i, j, n in self.unknown_cells:
            lines.append(f"unknown: ({names[i]}, {names[j]}[{n}])")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)


def _certificate(X_: StableObject, Y_: StableObject, N: int) -> dict[str, str] | None:
    """Slope certificates for uHom(X, Y[n]) = 0 whenever |n| > N.

    n > N: mu(Y[n-1]) >= mu(Y[N]) > mu(X), Serre duality plus slope gap.
    n < -N: mu(Y[n]) <= mu(Y[-N-1]) < mu(X), slope gap.
    Both use that the shift strictly raises slopes.
    """
    mx = X_.slope
    up, down = Y_[N].slope, Y_[-N - 1].slope
    if up > mx and down < mx:
        return {"mu_source": str(mx), "mu_target_at_plus_N": str(up), "mu_target_at_minus_N_minus_1": str(down)}
    return None


def verify_tilting(spec: CanonicalAlgebraSpec, summands: list[StableObject], window: int = 5) -> TiltingReport:
    if window < 2:
        raise ValueError("window must be at least 2")
    k = len(summands)
    matrix: dict[tuple[int, int, int], HomResult] = {}
    for i, j, n in product(range(k), range(k), range(-window, window + 1)):
        matrix[(i, j, n)] = stable_hom_dim(summands[i], summands[j][n])
    expected = spec.dimension_table()
    endo = [[matrix[(i, j, 0)].value for j in range(k)] for i in range(k)]
    unknown = [key for key, r in matrix.items() if r.value is None]
    failed = []
    for (i, j, n), r in sorted(matrix.items()):
        if r.value is None:
            continue
        want = expected[i][j] if n == 0 else 0
        if r.value != want:
            failed.append(f"({summands[i]}, {summands[j]}[{n}]) = {r.value}, expected {want}")
    certificates = {}
    for i, j in product(range(k), repeat=2):
        cert = _certificate(summands[i], summands[j], window)
        if cert is None:
            failed.append(f"no off-window certificate for ({summands[i]}, {summands[j]})")
        else:
            certificates[(i, j)] = cert
    verdict = "failed" if failed else "inconclusive" if unknown else "verified"
    note = "; ".join(text for text, _, _ in spec.relations) + f" ({LAMBDA} formal, not 0 or 1)"
    return TiltingReport(spec.name, summands, window, matrix, endo, expected, certificates,
                         verdict, failed, sorted(unknown), note)


def verify_tilting_T(window: int = 5) -> TiltingReport:
    return verify_tilting(CANONICAL_T, summands_T(), window)


def verify_tilting_Tprime(window: int = 5) -> TiltingReport:
    return verify_tilting(CANONICAL_TPRIME, summands_Tprime(), window)


def regression_cells() -> dict[str, HomResult]:
    """Further dimensions that the generation argument relies on."""
    F = StableObject(RankThreeF(1, ZERO))
    out = {}
    # w + xi - xj is symmetric in i, j
    for i, j in combinations(range(4), 2):
        Y = StableObject(Auslander(OMEGA + X[i] - X[j]), 1)
        out[f"uHom({F}, {Y})"] = stable_hom_dim(F, Y)
    return out


# -- rank-two scan --------------------------------------------------------------

@dataclass
class RankTwoScanReport:
    twist_window: int
    objects: list[StableObject]
    closed: int
    violations: list[tuple[str, str, int]]
    unknown: list[tuple[str, str]]

    @property
    def total(self) -> int:
        return self.closed + len(self.unknown)

    @property
    def unknown_rate(self) -> float:
        return len(self.unknown) / self.total if self.total else 0.0

    def to_dict(self) -> dict:
        return {
            "twist_window": self.twist_window,
            "objects": len(self.objects),
            "pairs": self.total,
            "closed": self.closed,
            "violations": [{"from": a, "to": b, "dim": d} for a, b, d in self.violations],
            "unknown": len(self.unknown),
            "unknown_rate": self.unknown_rate,
        }


def rank_two_objects(K: int) -> list[StableObject]:
    """Catalogued rank-two bundles with base twist of degree in [-K, K].

    Extension bundles are identified by K0 class (exceptional bundles are
    determined by their class); Auslander and quasi-simple expressions are
    kept as given.
    """
    objs: list[StableObject] = []
    seen_ext = set()
    for d in range(-K, K + 1):
        for L in delta_fiber(d):
            objs.append(StableObject(Auslander(L)))
            for i in (1, 2, 3, 4):
                key = k0_class(Ext(L, i))
                if key not in seen_ext:
                    seen_ext.add(key)
                    objs.append(StableObject(Ext(L, i)))
            q = StableObject(QuasiSimpleInt(L))
            if q not in objs:
                objs.append(q)
    return objs


def rank_two_scan(twist_window: int = 3) -> RankTwoScanReport:
    objs = rank_two_objects(twist_window)
    closed, violations, unknown = 0, [], []
    for a, b in product(objs, repeat=2):
        r = stable_hom_dim(a, b)
        if r.value is None:
            unknown.append((str(a), str(b)))
            continue
        closed += 1
        if r.value > 1:
            violations.append((str(a), str(b), r.value))
    return RankTwoScanReport(twist_window, objs, closed, violations, unknown)


# -- slope normalization -----------------------------------------------------------

_UPPER = Fraction(4, 3)


def slope_normalize(mu) -> tuple[int, Fraction]:
    """``(n1, mu(X[n1]))`` with the second entry in [0, 4/3)."""
    mu = Fraction(mu)
    n = abs(mu.numerator // mu.denominator)
    budget = 4 * (n + 2)
    n1, m = 0, mu
    while not (0 <= m < _UPPER):
        if budget == 0:
            raise RuntimeError(f"slope normalization of {mu} did not terminate")
        budget -= 1
        if m >= _UPPER:
            m, n1 = shift_slope_down(m), n1 - 1
        else:
            m, n1 = shift_slope_up(m), n1 + 1
    return n1, m
