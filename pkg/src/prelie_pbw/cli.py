"""Command-line front end.

Exit codes: 0 success, 1 domain error (or failed checks), 2 usage/parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .hopf import coproduct, format_tensor, star_product, tensor_to_json
from .magnus import magnus_fixed_point, magnus_via_log
from .prelie import Element, element_to_json, format_term, parse_element
from .solomon import soln
from .trees import TreeSyntaxError, UnknownLabelError

DEFAULT_ORDER = 4
MAX_ORDER = 8


class UsageError(Exception):
    pass


def _lines(x: Element) -> list[str]:
    items = x.sorted_terms()
    return [format_term(f, c) for f, c in items] if items else ["0"]


def _emit(x: Element, fmt: str, out):
    if fmt == "json":
        print(json.dumps(element_to_json(x)), file=out)
    else:
        print("\n".join(_lines(x)), file=out)


def _order(args) -> int:
    n = args.order
    if n < 1:
        raise UsageError("truncation order must be >= 1")
    if n > MAX_ORDER:
        raise UsageError(f"truncation order is capped at {MAX_ORDER}: term counts grow super-exponentially")
    if n > 6:
        print(f"warning: order {n} may be slow (combinatorial growth)", file=sys.stderr)
    return n


def _element(text: str, args) -> Element:
    return parse_element(text, args.alphabet)


def cmd_magnus(args, out):
    N = _order(args)
    res = magnus_fixed_point(N) if args.route == "fixed_point" else magnus_via_log(N)
    _emit(res.omega, args.format, out)


def cmd_solomon(args, out):
    N = _order(args)
    if args.i < 1:
        raise UsageError("--i must be >= 1")
    _emit(soln(args.i, _element(args.input, args), N), args.format, out)


def cmd_pbw(args, out):
    N = _order(args)
    u = _element(args.input, args)
    comps = [soln(i, u, N) for i in range(1, N + 1)]
    total = Element.zero()
    for c in comps:
        total = total + c
    ok = total == u.truncate(N) - Element.one() * u.counit()
    if args.format == "json":
        payload = {
            "components": [element_to_json(c) for c in comps],
            "sum_check": ok,
        }
        print(json.dumps(payload), file=out)
    else:
        for i, c in enumerate(comps, start=1):
            print(f"sol_{i}: {c}", file=out)
        print(f"sum check: {'ok' if ok else 'FAILED'}", file=out)
    return 0 if ok else 1


def cmd_star(args, out):
    N = _order(args)
    _emit(star_product(_element(args.lhs, args), _element(args.rhs, args), N), args.format, out)


def cmd_coproduct(args, out):
    t = coproduct(_element(args.input, args))
    if args.format == "json":
        print(json.dumps(tensor_to_json(t)), file=out)
    else:
        print(format_tensor(t), file=out)


def cmd_verify(args, out):
    from .verify import run_suite

    if args.max_degree < 1:
        raise UsageError("--max-degree must be >= 1")
    results = run_suite(args.suite, args.max_degree, args.alphabet)
    passed = sum(ok for _, ok, _ in results)
    failed = len(results) - passed
    if args.format == "json":
        print(json.dumps({"suite": args.suite, "passed": passed, "failed": failed,
                          "checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in results]}), file=out)
    else:
        for name, ok, detail in results:
            print(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""), file=out)
        print(f"{args.suite}: {passed} passed, {failed} failed", file=out)
    return 0 if failed == 0 else 1


def cmd_ode(args, out):
    from .odemagnus import error_report, load_matrix

    N = _order(args)
    if N > 6:
        raise UsageError("ode supports truncation orders up to 6")
    A = load_matrix(args.matrix)
    t = Fraction(args.time)
    h = Fraction(args.step)
    if t <= 0 or h <= 0:
        raise UsageError("--time and --step must be positive")
    report = error_report(A, N, [t, t / 2, t / 4], h)
    if args.format == "json":
        print(json.dumps(report.to_dict()), file=out)
    else:
        print(report, file=out)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--order", "-n", type=int, default=DEFAULT_ORDER, help="truncation order N")
    common.add_argument("--generators", default="a", help="comma-separated generator labels")
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="prelie-pbw", allow_abbrev=False,
                                description="Enveloping algebras of free preLie algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("magnus", parents=[common], allow_abbrev=False, help="print the Magnus element")
    s.add_argument("--route", choices=("log_star", "fixed_point"), default="log_star")
    s.set_defaults(fn=cmd_magnus)

    s = sub.add_parser("solomon", parents=[common], allow_abbrev=False, help="apply sol_i")
    s.add_argument("--i", dest="i", type=int, required=True)
    s.add_argument("--input", "-i", dest="input", required=True)
    s.set_defaults(fn=cmd_solomon)

    s = sub.add_parser("pbw", parents=[common], allow_abbrev=False, help="PBW decomposition")
    s.add_argument("--input", "-i", dest="input", required=True)
    s.set_defaults(fn=cmd_pbw)

    s = sub.add_parser("star", parents=[common], allow_abbrev=False, help="* product")
    s.add_argument("--lhs", required=True)
    s.add_argument("--rhs", required=True)
    s.set_defaults(fn=cmd_star)

    s = sub.add_parser("coproduct", parents=[common], allow_abbrev=False, help="coproduct")
    s.add_argument("--input", "-i", dest="input", required=True)
    s.set_defaults(fn=cmd_coproduct)

    s = sub.add_parser("verify", parents=[common], allow_abbrev=False, help="run invariant suites")
    s.add_argument("--suite", choices=("prelie", "hopf", "idempotents", "magnus", "ode", "all"), default="all")
    s.add_argument("--max-degree", type=int, default=4)
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("ode", parents=[common], allow_abbrev=False, help="numerical Magnus report")
    s.add_argument("--matrix", required=True, help="JSON matrix file")
    s.add_argument("--time", default="1/10")
    s.add_argument("--step", default="1/1000")
    s.set_defaults(fn=cmd_ode)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    args.alphabet = tuple(g.strip() for g in args.generators.split(",") if g.strip())
    try:
        rc = args.fn(args, out)
    except (TreeSyntaxError, UnknownLabelError, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, OSError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return rc or 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
