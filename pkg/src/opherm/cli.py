"""Command-line driver: ``opherm <command> ...``.

Exit codes: 0 when every check passes, 1 when at least one identity fails,
2 for usage, parse and representability errors, 3 when an internal limit
(degree guard, quadrature exactness) is hit.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from importlib import resources

from . import identities, integrals
from .errors import (
    DegreeTooLarge,
    ExprSyntaxError,
    NonCommutingArguments,
    NotRepresentable,
    OpHermError,
    QuadratureDegree,
    UnknownIdentity,
    UnknownSymbol,
)
from .frontend import elaborate, elaborate_integrand, parse_expression, parse_integrand, parse_scalar, render_expression
from .polynomials import get_degree_guard, hermite_coefficients, hermite_eval, set_degree_guard, two_var_hermite_eval

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


def load_report_schema() -> dict:
    """JSON Schema of the document printed by ``--json``."""
    text = resources.files("opherm").joinpath("report_schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def _value(text: str, numeric: bool):
    """Parameter value: a float in numeric mode when it parses as one, else exact."""
    if numeric:
        try:
            return float(text)
        except ValueError:
            pass
    return parse_scalar(text)


def _print_table(reports) -> None:
    rows = [("id", "params", "mode", "result", "max_abs_diff", "ms")]
    for r in reports:
        d = r.to_dict()
        params = ",".join(f"{k}={v}" for k, v in d["params"].items())
        diff = "" if d["max_abs_diff"] is None else f"{d['max_abs_diff']:.2e}"
        rows.append((d["id"], params, d["mode"], "PASS" if d["equal"] else "FAIL", diff, f"{d['ms']:.1f}"))
    widths = [max(len(row[k]) for row in rows) for k in range(len(rows[0]))]
    for row in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())


def _emit(suite: identities.SuiteReport, args) -> int:
    if args.json:
        print(json.dumps(suite.to_document(args.command_line), indent=2))
    else:
        _print_table(suite.reports)
        if not suite.passed:
            for r in suite.failures():
                print(f"\n{r.id} {r.params}:\n  lhs = {r.lhs}\n  rhs = {r.rhs}")
        s = suite.summary
        print(f"\n{s['pass']} passed, {s['fail']} failed, {s['degenerate']} degenerate-limit")
    return EXIT_OK if suite.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# commands


def cmd_hermite(args) -> int:
    if args.action == "coeffs":
        poly = hermite_coefficients(args.n)
        if args.json:
            print(json.dumps({"n": args.n, "coeffs": [str(c) for c in poly.coeffs]}))
        else:
            print(poly)
        return EXIT_OK
    if args.z is None:
        raise argparse.ArgumentTypeError("hermite eval needs a point z")
    print(hermite_eval(args.n, _value(args.z, numeric="." in args.z or "e" in args.z.lower())))
    return EXIT_OK


def cmd_hermite2(args) -> int:
    numeric = any("." in v for v in (args.x, args.y))
    x, y = _value(args.x, numeric), _value(args.y, numeric)
    print(two_var_hermite_eval(args.m, args.n, x, y))
    return EXIT_OK


def cmd_normal_order(args) -> int:
    e = elaborate(parse_expression(args.expr))
    print(render_expression(e, "latex" if args.latex else "plain"))
    return EXIT_OK


_PARAM_FLAGS = ("n", "m", "f", "g", "x", "y", "mu", "nu")


def cmd_verify(args) -> int:
    if args.id not in identities.IDENTITIES:
        raise UnknownIdentity(f"unknown identity {args.id!r}")
    numeric = args.mode == "numeric"
    params = {}
    for name in identities.IDENTITIES[args.id].params:
        raw = getattr(args, name)
        if raw is None:
            raise argparse.ArgumentTypeError(f"{args.id} needs --{name}")
        params[name] = raw if name in ("n", "m") else _value(raw, numeric)
    perturb = None if args.perturb is None else _value(args.perturb, numeric)
    report = identities.verify_identity(args.id, params, args.mode, args.tol, perturb)
    return _emit(identities.SuiteReport([report], args.mode), args)


def cmd_suite(args) -> int:
    ids = "all" if args.ids == "all" else [s.strip() for s in args.ids.split(",") if s.strip()]
    perturb = None if args.perturb is None else _value(args.perturb, args.mode == "numeric")
    suite = identities.run_suite(ids, args.mode, args.max_n, args.max_two_index, args.tol, perturb)
    return _emit(suite, args)


def cmd_integrate(args) -> int:
    poly = elaborate_integrand(parse_integrand(args.spec))
    dims = 2 if args.nu is not None or any(k for _, k in poly) else 1
    mu = parse_scalar(args.mu)
    nu = parse_scalar(args.nu) if args.nu is not None else parse_scalar("0")
    spec = integrals.GaussianIntegrandSpec(dims, poly, mu, nu)
    exact = integrals.integrate_gaussian_1d(spec) if dims == 1 else integrals.integrate_gaussian_2d(spec)
    out = {"integrand": args.spec, "dims": dims, "mu": str(mu), "nu": str(nu), "exact": str(exact),
           "float": repr(complex(exact).real if exact.is_real() else complex(exact))}
    status = EXIT_OK
    if args.check_quadrature:
        q = integrals.integrand_quadrature(spec, args.nodes)
        ref = complex(exact)
        diff = abs(q - ref)
        ok = diff <= integrals.NEAR_ZERO if abs(ref) < integrals.NEAR_ZERO else diff <= args.tol * abs(ref)
        out.update(quadrature=repr(q.real if q.imag == 0 else q), abs_error=diff, nodes=args.nodes, agree=ok)
        status = EXIT_OK if ok else EXIT_FAIL
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        for k, v in out.items():
            print(f"{k:>10}: {v}")
    return status


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opherm",
        description="Exact normal ordering and verification of operator Hermite polynomial identities.",
    )
    parser.add_argument("--degree-guard", type=int, default=None, metavar="N",
                        help=f"largest polynomial degree accepted (default {get_degree_guard()})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hermite", help="coefficients or values of H_n")
    p.add_argument("action", choices=("coeffs", "eval"))
    p.add_argument("n", type=int)
    p.add_argument("z", nargs="?", help="evaluation point (rational, ring element or float)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_hermite)

    p = sub.add_parser("hermite2", help="value of the two-variable H_{m,n}(x, y)")
    for name in ("m", "n"):
        p.add_argument(name, type=int)
    for name in ("x", "y"):
        p.add_argument(name)
    p.set_defaults(func=cmd_hermite2)

    p = sub.add_parser("normal-order", help="parse an expression and print its normal-ordered form")
    p.add_argument("expr")
    p.add_argument("--latex", action="store_true", help="LaTeX output")
    p.set_defaults(func=cmd_normal_order)

    def common(p):
        p.add_argument("--mode", choices=("exact", "numeric"), default="exact")
        p.add_argument("--tol", type=float, default=identities.DEFAULT_TOL,
                       help="relative tolerance in numeric mode")
        p.add_argument("--perturb", default=None, metavar="C",
                       help="add C to every right-hand side (a falsification control)")
        p.add_argument("--json", action="store_true", help="emit a JSON report document")

    p = sub.add_parser("verify", help="check one identity at one parameter point")
    p.add_argument("id", help="identity id, e.g. OP-HERMITE-X")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    for name in _PARAM_FLAGS[2:]:
        p.add_argument(f"--{name}", metavar="VALUE")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("suite", help="check every identity over its default grid")
    p.add_argument("--ids", default="all", help="comma-separated ids or 'all'")
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--max-two-index", type=int, default=8)
    common(p)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("integrate", help="exact Gaussian integral of a polynomial in x (and y)")
    p.add_argument("spec", help='integrand, e.g. "H(3, x) * H(2, 2*x - 1)"')
    p.add_argument("--mu", required=True, help="kernel centre in x")
    p.add_argument("--nu", default=None, help="kernel centre in y (makes the integral 2-D)")
    p.add_argument("--check-quadrature", action="store_true", help="compare with Gauss-Hermite quadrature")
    p.add_argument("--nodes", type=int, default=integrals.DEFAULT_NODES)
    p.add_argument("--tol", type=float, default=identities.DEFAULT_TOL)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_integrate)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    args.command_line = "opherm " + shlex.join(argv)
    old_guard = None
    try:
        if args.degree_guard is not None:
            old_guard = set_degree_guard(args.degree_guard)
        return args.func(args)
    except (DegreeTooLarge, QuadratureDegree) as exc:
        print(f"opherm: limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except ExprSyntaxError as exc:
        print(f"opherm: {type(exc).__name__}: {exc}", file=sys.stderr)
        if args.command in ("normal-order", "integrate"):
            text = args.expr if args.command == "normal-order" else args.spec
            if "\n" not in text:
                print(f"  {text}\n  {' ' * exc.position}^", file=sys.stderr)
        return EXIT_USAGE
    except (NotRepresentable, UnknownIdentity, UnknownSymbol, NonCommutingArguments,
            OpHermError, ValueError, TypeError, argparse.ArgumentTypeError) as exc:
        print(f"opherm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if old_guard is not None:
            set_degree_guard(old_guard)


if __name__ == "__main__":
    sys.exit(main())
