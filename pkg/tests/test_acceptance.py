"""Acceptance criteria, exact.  Each test prints one PASS/FAIL line.

Also runnable directly: ``python3 tests/test_acceptance.py``.
"""

import random
from fractions import Fraction
from itertools import product
from math import gcd

import pytest

from wplstable.bundles import (
    Auslander,
    Ext,
    Line,
    QuasiSimpleInt,
    RankThreeF,
    injective_hull,
    is_exceptional,
    k0_class,
    projective_cover,
)
from wplstable.graded_ring import dim_S, dim_S_oracle
from wplstable.grading import C, OMEGA, X, ZERO, GradedElement, delta_fiber
from wplstable.k0 import (
    K0Class,
    class_of_line_bundle,
    closed_form_class,
    euler_form,
    random_chooser,
    reduce_line_bundle,
    tau,
)
from wplstable.stable import StableObject, hom_dim, shift_slope, shift_slope_down, shift_slope_up, stable_hom_dim
from wplstable.tilting import rank_two_scan, verify_tilting_T, verify_tilting_Tprime
from wplstable.trace import replay


def criterion_1():
    forms = [GradedElement(c, l) for c, l in product(product((0, 1), repeat=4), range(-5, 16))]
    bad = [x for x in forms if dim_S(x) != dim_S_oracle(x, max(x.delta, 0))]
    gens = all(dim_S(xi) == 1 == dim_S_oracle(xi, 1) for xi in X)
    return len(forms) == 336 and not bad and gens, f"{len(forms)} normal forms, {len(bad)} mismatches, dim S_xi = 1: {gens}"


def criterion_2():
    rng = random.Random(2)
    bad = 0
    for _ in range(10_000):
        a = K0Class(tuple(rng.randint(-20, 20) for _ in range(6)))
        b = K0Class(tuple(rng.randint(-20, 20) for _ in range(6)))
        bad += euler_form(a + tau(a), b) != a.rank * b.degree - a.degree * b.rank
    return bad == 0, f"10000 random pairs, {bad} failures"


def criterion_3():
    rng = random.Random(3)
    xs = [GradedElement(c, l) for c, l in product(product((0, 1), repeat=4), range(-6, 7))]
    bad = 0
    for x in xs:
        cls = class_of_line_bundle(x)
        bad += (cls.rank, cls.degree) != (1, x.delta) or cls != closed_form_class(x)
        bad += any(reduce_line_bundle(x, random_chooser(rng)) != cls for _ in range(10))
    return bad == 0, f"{len(xs)} elements x 11 rule orders, {bad} failures"


def criterion_4():
    checks = {
        "[-1] at 0": shift_slope_down(0) == Fraction(-4, 3),
        "[-1] at 1/2": shift_slope_down(Fraction(1, 2)) == Fraction(-1, 2),
        "[1] at 0": shift_slope_up(0) == Fraction(4, 3),
        "integral closed form m<=50": all(
            shift_slope(Fraction(n), m) == n + m + Fraction(m, 2 * m + 1)
            and shift_slope(Fraction(n), -m) == 2 * n - (n + m + Fraction(m, 2 * m + 1))
            for n in range(-3, 4) for m in range(1, 51)),
        "boundaries": all(
            n - Fraction(4 * 3 - 11, 9 - 8) == n + Fraction(1, 3 - 4)
            and n + Fraction(12 - 10, 9 - 8) == n + Fraction(36 - 38, 15 - 16)
            for n in range(-5, 6)),
    }
    grid = [n + Fraction(q, p) for p in range(1, 61) for q in range(p) if gcd(p, q) == 1 for n in range(-5, 6)]
    sample = random.Random(4).sample(grid, 2000)
    checks["round trip on 2000 rationals"] = all(
        shift_slope_up(shift_slope_down(m)) == m == shift_slope_down(shift_slope_up(m)) for m in sample)
    failed = [k for k, v in checks.items() if not v]
    return not failed, "all slope checks exact" if not failed else f"failed: {failed}"


def criterion_5():
    pa = projective_cover(Auslander(ZERO))
    pe = projective_cover(Ext(ZERO, 1))
    e_minus = pe.k0_class - k0_class(Ext(ZERO, 1))
    pq = projective_cover(QuasiSimpleInt(-X[0]))
    iF = injective_hull(RankThreeF())
    checks = {
        "Auslander PE (5,-4)": (pa.rank, pa.degree) == (5, -4),
        "Ext E[-1] (2,-1)": (e_minus.rank, e_minus.degree) == (2, -1),
        "quasi-simple PE 8 lines, degree -8": (pq.rank, pq.degree) == (8, -8),
        "IF summands": set(iF.summands) == {C, *(OMEGA + x for x in X)} and (iF.rank, iF.degree) == (5, 6),
    }
    failed = [k for k, v in checks.items() if not v]
    return not failed, "; ".join(f"{k}: {'ok' if v else 'WRONG'}" for k, v in checks.items())


EXPECTED_T = [[1, 1, 1, 1, 1, 2]] + [[0] * (k + 1) + [1] + [0] * (3 - k) + [1] for k in range(4)] + [[0] * 5 + [1]]


def criterion_6():
    rt, rp = verify_tilting_T(5), verify_tilting_Tprime(5)
    replays = all(replay(r.trace) == r.value for rep in (rt, rp) for r in rep.matrix.values())
    zero_off = all(r.value == 0 for rep in (rt, rp) for (i, j, n), r in rep.matrix.items() if n)
    certs = len(rt.certificates) == len(rp.certificates) == 36
    ok = (rt.verdict == rp.verdict == "verified" and rt.endo_table == EXPECTED_T
          and rt.total_dimension == rp.total_dimension == 16 and replays and zero_off and certs)
    return ok, (f"T: {rt.verdict}, total {rt.total_dimension}; T': {rp.verdict}, total {rp.total_dimension}; "
                f"n!=0 cells zero: {zero_off}; traces replay: {replays}; certificates: {certs}")


def criterion_7():
    objs = [Auslander(L) for d in range(-4, 5) for L in delta_fiber(d)]
    objs += [Ext(L, i) for d in range(-4, 5) for L in delta_fiber(d) for i in (1, 2, 3, 4)]
    bad = []
    for b in objs:
        s = StableObject(b)
        end, tw = stable_hom_dim(s, s).value, stable_hom_dim(s, s.twist(OMEGA)).value
        if is_exceptional(b) != (end == 1 and tw == 0):
            bad.append(str(b))
    qs = [QuasiSimpleInt(L) for d in range(-4, 5) for L in delta_fiber(d)]
    q_ok = not any(is_exceptional(q) for q in qs)
    return not bad and q_ok, f"{len(objs)} Auslander/Ext instances, {len(bad)} disagreements; quasi-simples non-exceptional: {q_ok}"


def criterion_8():
    rep = rank_two_scan(3)
    kinds = sorted({(a.split("(")[0], b.split("(")[0]) for a, b, _ in rep.violations})
    detail = (f"{rep.total} pairs, {rep.closed} closed, {len(rep.violations)} violations"
              f"{' (kinds ' + str(kinds) + ')' if kinds else ''}, unknown rate {rep.unknown_rate:.2%}")
    return not rep.violations, detail


def criterion_9():
    E, F = StableObject(Auslander(ZERO)), StableObject(RankThreeF())
    cells = {
        "Hom(O(w),F)=2": (hom_dim(Line(OMEGA), RankThreeF()), 2),
        "Hom(O,F)=0": (hom_dim(Line(ZERO), RankThreeF()), 0),
        "uHom(F,E[1])=0": (stable_hom_dim(F, E[1]), 0),
    }
    for i in (1, 2, 3, 4):
        Ei = StableObject(Ext(ZERO, i))
        cells[f"uHom(F,E{i}[1])=0"] = (stable_hom_dim(F, Ei[1]), 0)
        for n in range(-5, 6):
            cells[f"uHom(E,E{i}[{n}])"] = (stable_hom_dim(E, Ei[n]), int(n == 0))
    bad = [k for k, (r, want) in cells.items() if r.value != want or replay(r.trace) != want]
    return not bad, f"{len(cells)} cells, {len(bad)} wrong or unreplayable" + (f": {bad}" if bad else "")


CRITERIA = [
    (1, "graded-ring oracle equivalence", criterion_1),
    (2, "Riemann-Roch identity", criterion_2),
    (3, "K0 reduction confluence", criterion_3),
    (4, "slope shift values", criterion_4),
    (5, "cover/hull bookkeeping", criterion_5),
    (6, "tilting verification", criterion_6),
    (7, "exceptional classifier", criterion_7),
    (8, "rank-two scan", criterion_8),
    (9, "regression cells", criterion_9),
]


def _report(num, name, fn):
    ok, detail = fn()
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num} ({name}): {detail}"
    return ok, line


@pytest.mark.parametrize("num, name, fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(num, name, fn, capsys):
    ok, line = _report(num, name, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [_report(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    raise SystemExit(0 if all(ok for ok, _ in results) else 1)
