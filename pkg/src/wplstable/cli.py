"""Command-line interface: ``wplstable <command> ...``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .bundles import (
    NoCoverFormula,
    injective_hull,
    is_exceptional,
    k0_class,
    parse_bundle,
    projective_cover,
)
from .graded_ring import dim_S
from .grading import parse_element
from .k0 import K0Class, closed_form_class, euler_form, parse_class, reduce_line_bundle
from .stable import hom_dim, parse_stable, shift_slope, stable_hom_dim
from .tilting import rank_two_scan, slope_normalize, verify_tilting_T, verify_tilting_Tprime


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "format", "text") == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _class_arg(text: str) -> K0Class:
    # a bundle expression or an integer combination of [O(x)] terms
    try:
        return k0_class(parse_bundle(text))
    except ValueError:
        return parse_class(text)


def cmd_dim_s(args) -> int:
    x = parse_element(args.element)
    d = dim_S(x)
    _emit(args, {"element": str(x), "dim": d}, str(d))
    return 0


def cmd_euler(args) -> int:
    a, b = _class_arg(args.source), _class_arg(args.target)
    v = euler_form(a, b)
    _emit(args, {"source": str(a), "target": str(b), "euler": v}, str(v))
    return 0


def cmd_k0_reduce(args) -> int:
    x = parse_element(args.element)
    log: list = []
    cls = reduce_line_bundle(x, log=log)
    assert cls == closed_form_class(x)
    payload = {
        "element": str(x),
        "coefficients": list(cls.coeffs),
        "class": str(cls),
        "rank": cls.rank,
        "degree": cls.degree,
        "steps": [{"rule": r, "rewrite": str(z), "into": [[str(w), k] for w, k in out]} for r, z, out in log],
    }
    text = f"[O({x})] = {cls}\nrank {cls.rank}, degree {cls.degree}"
    if args.steps:
        text += "\n" + "\n".join(
            f"  {r}: [O({z})] -> " + " ".join(f"{k:+d}*[O({w})]" for w, k in out) for r, z, out in log)
    _emit(args, payload, text)
    return 0


def cmd_shift_slope(args) -> int:
    mu = Fraction(args.slope)
    v = shift_slope(mu, args.n)
    _emit(args, {"slope": str(mu), "n": args.n, "shifted": str(v)}, str(v))
    return 0


def cmd_slope_normalize(args) -> int:
    mu = Fraction(args.slope)
    n1, v = slope_normalize(mu)
    _emit(args, {"slope": str(mu), "n1": n1, "normalized": str(v)}, f"n1 = {n1}, slope {v}")
    return 0


def cmd_bundle(args) -> int:
    b = parse_bundle(args.bundle)
    cls = k0_class(b)
    payload = {"bundle": str(b), "class": list(cls.coeffs), "rank": cls.rank, "degree": cls.degree,
               "slope": str(Fraction(cls.degree, cls.rank)), "exceptional": is_exceptional(b)}
    for key, fn in (("projective_cover", projective_cover), ("injective_hull", injective_hull)):
        try:
            payload[key] = fn(b).to_dict()
        except NoCoverFormula:
            payload[key] = None
    lines = [f"{k}: {v}" for k, v in payload.items()]
    _emit(args, payload, "\n".join(lines))
    return 0


def _hom_output(args, result) -> int:
    text = str(result)
    if args.trace:
        text += "\n" + "\n".join(
            f"  [{k}] {s.rule}: {s.query} = {'unknown' if s.value is None else s.value}"
            + (f"  <- {list(s.uses)}" if s.uses else "")
            for k, s in enumerate(result.trace))
    _emit(args, result.to_dict(with_trace=args.trace), text)
    return 0 if result.value is not None else 3


def cmd_hom(args) -> int:
    return _hom_output(args, hom_dim(parse_stable(args.source), parse_stable(args.target)))


def cmd_stable_hom(args) -> int:
    return _hom_output(args, stable_hom_dim(parse_stable(args.source), parse_stable(args.target)))


def cmd_verify_tilting(args) -> int:
    fn = verify_tilting_T if args.object == "T" else verify_tilting_Tprime
    report = fn(args.window)
    _emit(args, report.to_dict(with_trace=args.trace), report.to_text())
    if report.verified:
        return 0
    if report.verdict == "inconclusive" and not args.strict:
        return 2
    return 1


def cmd_rank_two_scan(args) -> int:
    report = rank_two_scan(args.twist_window)
    d = report.to_dict()
    text = (f"objects {d['objects']}, pairs {d['pairs']}, closed {d['closed']}, "
            f"unknown {d['unknown']} ({report.unknown_rate:.2%}), violations {len(report.violations)}")
    for a, b, v in report.violations:
        text += f"\n  violation: dim uHom({a}, {b}) = {v}"
    _emit(args, d, text)
    return 0 if not report.violations else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wplstable", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.set_defaults(func=fn)
        return sp

    sp = add("dim-s", cmd_dim_s, "dimension of a graded piece of S")
    sp.add_argument("element")
    sp = add("euler", cmd_euler, "Euler form of two classes or bundles")
    sp.add_argument("source")
    sp.add_argument("target")
    sp = add("k0-reduce", cmd_k0_reduce, "reduce [O(x)] to the K0 basis")
    sp.add_argument("element")
    sp.add_argument("--steps", action="store_true", help="print the rewrite steps")
    sp = add("shift-slope", cmd_shift_slope, "slope of E[n] from the slope of E")
    sp.add_argument("slope", help="a rational q/p")
    sp.add_argument("n", type=int)
    sp = add("slope-normalize", cmd_slope_normalize, "shift a slope into [0, 4/3)")
    sp.add_argument("slope")
    sp = add("bundle", cmd_bundle, "class, slope, cover and hull of a bundle")
    sp.add_argument("bundle")
    for name, fn, help_ in (("hom", cmd_hom, "dim Hom in coh"),
                            ("stable-hom", cmd_stable_hom, "dim of stable Hom")):
        sp = add(name, fn, help_)
        sp.add_argument("source")
        sp.add_argument("target")
        sp.add_argument("--trace", action="store_true")
    sp = add("verify-tilting", cmd_verify_tilting, "check a candidate tilting object")
    sp.add_argument("--object", choices=("T", "Tprime"), default="T")
    sp.add_argument("--window", type=int, default=5)
    sp.add_argument("--strict", action="store_true", help="treat inconclusive as failure (exit 1)")
    sp.add_argument("--trace", action="store_true", help="include traces in JSON output")
    sp = add("rank-two-scan", cmd_rank_two_scan, "check dim uHom <= 1 on rank-two pairs")
    sp.add_argument("--twist-window", type=int, default=3)
    return p


_NEGATIVE = re.compile(r"^-\d+(/\d+)?$")


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    # argparse reads "-4/3" as an option; a leading space keeps it positional
    argv = [" " + a if _NEGATIVE.match(a) else a for a in argv]
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
