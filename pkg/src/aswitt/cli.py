"""Command-line front end: aswitt {pair,reduce,conductor,unitgroup,verify}.

Exit codes: 0 success, 1 a check failed, 2 usage, parse or bound error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys

from .algebra import FieldError, finite_field
from .asw import (conductor_dual, fil_level, fil_log_level, reduce_class, sw_pair)
from .localfield import EnumerationBoundError, build_unit_quot
from .series import ParseError, PrecisionError, format_laurent, parse_laurent
from .witt import MAX_LENGTH, format_witt, frobenius_witt, parse_witt
from . import verify

MAX_POLES = 8
ORTHOGONALITY_BOUNDS = {"q": 4, "n": 2, "m_max": 6}


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload or {}


def _field(args):
    modulus = None
    if args.modulus:
        try:
            modulus = tuple(int(c) for c in args.modulus.split(","))
        except ValueError:
            raise UsageError(f"--modulus must be comma-separated integers, got {args.modulus!r}")
    return finite_field(args.p, args.e, modulus)


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_LENGTH:
        raise UsageError(f"--n must be between 1 and {MAX_LENGTH}")


def _witt_arg(text: str, field, n: int):
    a = parse_witt(text, field)
    if a.n != n:
        raise UsageError(f"{text!r} has {a.n} components but --n is {n}")
    for comp in a.comps:
        if comp.pole_order() > MAX_POLES * field.p ** (n - 1):
            raise UsageError(f"pole order {comp.pole_order()} is beyond the supported bound")
    return a


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# -- subcommands --------------------------------------------------------------------------

def cmd_pair(args) -> int:
    field = _field(args)
    _check_n(args.n)
    a = _witt_arg(args.a, field, args.n)
    b = parse_laurent(args.b, field)
    if b.is_zero():
        raise UsageError("b must be nonzero")
    if args.witness:
        a = a - frobenius_witt(a)
    pn = field.p**args.n
    value = sw_pair(a, b, M=args.precision)
    payload = {"value": value, "modulus": pn, "a": format_witt(a), "b": format_laurent(b)}
    if args.self_check:
        rng = random.Random(args.seed)
        c = verify.random_witt_K(field, args.n, rng, pole=2)
        variants = {
            "coset_shift": sw_pair(a + c - frobenius_witt(c), b, M=args.precision),
            "higher_lift_precision": sw_pair(a, b, M=(args.precision or 2 * args.n) + 2),
            "simple_lift": sw_pair(a, b, M=args.precision, lift_method="simple"),
        }
        payload["self_check"] = variants
        bad = {k: v for k, v in variants.items() if v != value}
        if bad:
            raise CheckFailed(f"self-check disagrees with {value}: {bad}", payload)
    _emit(args, payload, f"{value} (mod {pn})")
    return 0


def _trail_hash(x) -> str:
    return hashlib.sha256(format_witt(x.trail).encode()).hexdigest()[:16]


def cmd_reduce(args) -> int:
    field = _field(args)
    _check_n(args.n)
    a = _witt_arg(args.a, field, args.n)
    x = reduce_class(a)
    payload = {"input": format_witt(a), "reduced": format_witt(x.rep), "trail": format_witt(x.trail),
               "trail_hash": _trail_hash(x), "fil_log": fil_log_level(x), "fil": fil_level(x)}
    _emit(args, payload, "\n".join([
        f"reduced   {payload['reduced']}",
        f"trail     {payload['trail']}  [{payload['trail_hash']}]",
        f"fil_log   {payload['fil_log']}",
        f"fil       {payload['fil']}",
    ]))
    return 0


def cmd_conductor(args) -> int:
    field = _field(args)
    _check_n(args.n)
    a = _witt_arg(args.a, field, args.n)
    x = reduce_class(a)
    log, fil, dual = fil_log_level(x), fil_level(x), conductor_dual(x)
    if fil == dual:
        status = "agree"
    elif max(fil, 1) == max(dual, 1):
        status = "boundary (unramified class, outside m >= 1)"
    else:
        status = "MISMATCH"
    payload = {"reduced": format_witt(x.rep), "trail_hash": _trail_hash(x),
               "fil_log": log, "fil": fil, "Fil": dual, "status": status}
    _emit(args, payload, "\n".join([
        f"reduced   {payload['reduced']}",
        f"fil_log   {log}",
        f"fil       {fil}",
        f"Fil       {dual}",
        f"status    {status}",
    ]))
    if status == "MISMATCH":
        raise CheckFailed(f"fil={fil} but Fil={dual} for {payload['reduced']}", payload)
    return 0


def cmd_unitgroup(args) -> int:
    field = _field(args)
    if not 0 <= args.n <= MAX_LENGTH:
        raise UsageError(f"--n must be between 0 and {MAX_LENGTH}")
    G = build_unit_quot(field, args.n, args.m)
    payload = G.to_json()
    lines = [f"G_{{{args.n},{args.m}}} over F_{field.q}: order {G.order}", "generators:"]
    lines += [f"  {g}" for g in payload["generators"]]
    if args.elements:
        payload["elements"] = [G.format_element(x) for x in G.elements()]
        lines += ["elements:"] + [f"  {e}" for e in payload["elements"]]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    field = _field(args)
    suite = args.suite
    if suite == "witt":
        _check_n(args.n)
        report = verify.witt_suite(field.p, args.n, cases=args.cases, seed=args.seed, e=field.e)
        if args.n == 2 and field.q <= 4:
            frob = verify.frobenius_suite(((field.p, field.e),), n=2)
            report["checks"]["frobenius_componentwise"] = frob["checks"][f"q={field.q}"]
            report["ok"] = report["ok"] and frob["ok"]
            report["failure"] = report["failure"] or frob["failure"]
    elif suite == "pairing":
        _check_n(args.n)
        report = verify.pairing_suite(field, args.n, cases=args.cases, seed=args.seed)
    elif suite == "orthogonality":
        bounds = ORTHOGONALITY_BOUNDS
        if field.q > bounds["q"] or args.n > bounds["n"] or args.mmax > bounds["m_max"]:
            raise UsageError(f"orthogonality is limited to q <= {bounds['q']}, n <= {bounds['n']}, "
                             f"--mmax <= {bounds['m_max']}")
        _check_n(args.n)
        report = verify.orthogonality_suite(field, args.n, args.mmax, seed=args.seed)
    elif suite == "filagree":
        _check_n(args.n)
        if args.poles > MAX_POLES:
            raise UsageError(f"--poles must be at most {MAX_POLES}")
        report = verify.filagree_suite(field, args.n, args.poles, jobs=args.jobs)
    elif suite == "orders":
        if not 1 <= args.n <= MAX_LENGTH:
            raise UsageError(f"--n must be between 1 and {MAX_LENGTH}")
        report = verify.orders_suite(field, args.n, args.mmax, seed=args.seed)
    else:
        raise UsageError(f"unknown suite {suite!r}")

    lines = [f"{suite}: {'pass' if report['ok'] else 'FAIL'}"]
    lines += [f"  {k}: {v}" for k, v in report["checks"].items()]
    if report["failure"]:
        lines.append(f"  first failure: {report['failure']}")
    _emit(args, report, "\n".join(lines))
    return 0 if report["ok"] else 1


# -- argument parsing ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2, help="characteristic")
    common.add_argument("--e", type=int, default=1, help="degree of F_q over F_p")
    common.add_argument("--modulus", help="defining polynomial, coefficients from the constant term, e.g. 1,1,1")
    common.add_argument("--n", type=int, default=1, help="Witt vector length")
    common.add_argument("--precision", type=int, default=None, help="p-adic lift precision M (default 2n)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1, help="worker processes for exhaustive suites")

    parser = argparse.ArgumentParser(prog="aswitt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pair", parents=[common], help="evaluate the symbol [a, b)")
    p.add_argument("a", help="Witt vector, e.g. '(t^-1; 0)'")
    p.add_argument("b", help="nonzero Laurent series, e.g. '1+t'")
    p.add_argument("--self-check", action="store_true",
                   help="recompute on a shifted representative and other lift choices")
    p.add_argument("--witness", action="store_true", help="pair (1-F)a instead of a; the result must be 0")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("reduce", parents=[common], help="reduced representative of a class")
    p.add_argument("a")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("conductor", parents=[common], help="fil^log, fil and dual conductors")
    p.add_argument("a")
    p.set_defaults(func=cmd_conductor)

    p = sub.add_parser("unitgroup", parents=[common], help="the group K^x / (K^x)^(p^n) U^m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--elements", action="store_true", help="list every element")
    p.set_defaults(func=cmd_unitgroup)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=("witt", "pairing", "orthogonality", "filagree", "orders"))
    p.add_argument("--cases", type=int, default=None, help="random cases per law")
    p.add_argument("--poles", type=int, default=4, help="pole bound for filagree")
    p.add_argument("--mmax", type=int, default=4, help="largest m for orthogonality and orders")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "cases", None) is None:
        args.cases = 500 if args.command == "verify" and args.suite == "witt" else 200
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, FieldError, EnumerationBoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CheckFailed as exc:
        if args.format == "json":
            print(json.dumps({"ok": False, "error": str(exc), **exc.payload}, sort_keys=True))
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except (PrecisionError, ZeroDivisionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
