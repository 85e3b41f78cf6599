"""Registry of operator Hermite identities and the verification engine.

Each registered identity knows how to build both of its sides, either as
normal-ordered :class:`~opherm.boson.OperatorExpr` values or as scalars.
In exact mode the sides are compared as exact term maps; in numeric mode
the same constructions run on ``complex`` coefficients and are compared
coefficient by coefficient under a relative tolerance. Integral identities
(``INT-*``) delegate to :mod:`opherm.integrals`.
"""

from __future__ import annotations

import cmath
import itertools
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import integrals
from .boson import (
    FockKet,
    LinearForm,
    OperatorExpr,
    apply_to_vacuum,
    commuting_multiply,
    hermite_of_operator,
    make_linear_form,
    normal_order_multiply,
    normal_symbol_hermite,
    normal_symbol_power,
    operator_power,
    two_var_hermite_of_operators,
)
from .errors import NotRepresentable, UnknownIdentity
from .polynomials import binomial, hermite_eval, two_var_hermite_eval
from .scalars import I, ONE, SQRT2, ExactScalar, as_scalar, sqrt_in_ring

__all__ = [
    "IDENTITIES",
    "IdentityInfo",
    "IdentityReport",
    "SuiteReport",
    "REPORT_VERSION",
    "admissible_f_values",
    "admissible_fg_pairs",
    "default_grid",
    "run_suite",
    "verify_identity",
]

REPORT_VERSION = "1.0"
DEFAULT_TOL = 1e-9
ABS_FLOOR = 1e-12


@dataclass(frozen=True)
class IdentityInfo:
    id: str
    formula: str
    note: str
    params: tuple


_INFO = [
    IdentityInfo("OP-HERMITE-X", "H_n(X) = 2^n :X^n:",
                 "Hermite polynomial of the coordinate operator is a normal-ordered power", ("n",)),
    IdentityInfo("X-POWER", "X^n = (2i)^{-n} :H_n(iX):",
                 "inverse relation: powers of X as normal-ordered Hermite polynomials", ("n",)),
    IdentityInfo("P-HERMITE", "H_n(P) = 2^n :P^n:",
                 "momentum analogue of the coordinate relation", ("n",)),
    IdentityInfo("VACUUM-X", "H_n(X)|0> = 2^{n/2} ad^n|0> = sqrt(n! 2^n)|n>",
                 "coordinate Hermite polynomial acting on the vacuum", ("n",)),
    IdentityInfo("VACUUM-P", "H_n(P)|0> = i^n 2^{n/2} ad^n|0> = i^n sqrt(n! 2^n)|n>",
                 "momentum Hermite polynomial acting on the vacuum", ("n",)),
    IdentityInfo("SCALED-X", "H_n(fX) = (1-f^2)^{n/2} :H_n(fX/sqrt(1-f^2)): != 2^n :(fX)^n:",
                 "scaled argument; the naive normal-ordered power is wrong for f^2 != 1", ("n", "f")),
    IdentityInfo("SUM-XY", "H_n((X+Y)/sqrt2) = 2^{n/2} :(X+Y)^n:",
                 "two-mode sum generalising the coordinate relation", ("n",)),
    IdentityInfo("GENERAL-FG", "H_m(fX+gY) = (1-f^2-g^2)^{m/2} :H_m((fX+gY)/sqrt(1-f^2-g^2)):",
                 "general two-mode linear combination", ("m", "f", "g")),
    IdentityInfo("FG-UNITY", "H_m(X+Y) = i^m :H_m(-i(X+Y)):",
                 "f = g = 1 instance of the general two-mode relation", ("m",)),
    IdentityInfo("TWOVAR-NORMAL", "H_{m,n}(a+bd, ad+b) = :(a+bd)^m (ad+b)^n:",
                 "two-variable Hermite polynomial of commuting entangled combinations", ("m", "n")),
    IdentityInfo("TWOVAR-ANTINORMAL", "(a+bd)^m (ad+b)^n = (-i)^{m+n} :H_{m,n}(i(a+bd), i(ad+b)):",
                 "operator product of entangled combinations in normal-ordered Hermite form", ("m", "n")),
    IdentityInfo("XY-POWER", "(X+Y)^n = (i sqrt2)^{-n} :H_n(i(X+Y)/sqrt2):",
                 "two-mode generalisation of the power relation", ("n",)),
    IdentityInfo("BINOMIAL-LIKE", "sum_l C(n,l) H_{l,n-l}(x,y) = H_n((x+y)/2)",
                 "binomial-like link between one- and two-variable Hermite polynomials", ("n", "x", "y")),
    IdentityInfo("D1-SUM", "sum_k C(m,k) H_{m-k}(sqrt2 f x) H_k(sqrt2 g y) = 2^{m/2} H_m(fx+gy)",
                 "addition formula for Hermite polynomials", ("m", "f", "g", "x", "y")),
]
for _kind in integrals.CLOSED_FORM_KINDS:
    _cf_params = {"INT-5": ("n", "y"), "INT-8": ("n", "y"), "INT-9": ("n", "y"),
                  "INT-C8": ("n", "mu", "nu"), "INT-C12": ("n", "f", "y"),
                  "INT-D8": ("m", "f", "g", "mu", "nu"), "INT-D9": ("m", "mu", "nu")}[_kind]
    _INFO.append(IdentityInfo(_kind, integrals._DESCRIPTIONS[_kind],
                              "closed-form integral checked against the moment engine (exact) "
                              "or Gauss-Hermite quadrature (numeric)", _cf_params))

IDENTITIES = {info.id: info for info in _INFO}
_ORDER = {info.id: k for k, info in enumerate(_INFO)}


# ---------------------------------------------------------------------------
# reports


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, complex):
        return repr(value)
    if isinstance(value, (int, Fraction)):
        return str(value)
    return str(value)


@dataclass
class IdentityReport:
    id: str
    params: dict
    mode: str
    lhs: str
    rhs: str
    equal: bool
    max_abs_diff: float | None = None
    ms: float = 0.0
    diagnostics: dict = field(default_factory=dict)

    @property
    def info(self) -> IdentityInfo:
        return IDENTITIES[self.id]

    def sort_key(self):
        return (_ORDER[self.id], tuple((k, _sortable(v)) for k, v in self.params.items()))

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "paper_eq": self.info.formula,
            "quote": self.info.note,
            "params": {k: _fmt(v) for k, v in self.params.items()},
            "mode": self.mode,
            "equal": self.equal,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "max_abs_diff": self.max_abs_diff,
            "ms": round(self.ms, 3),
            "diagnostics": self.diagnostics,
        }


def _sortable(v):
    if isinstance(v, ExactScalar):
        return tuple(float(c) for c in v.components)
    if isinstance(v, (int, float, Fraction)):
        return (float(v), 0.0, 0.0, 0.0)
    return (0.0, 0.0, 0.0, 0.0, str(v))


@dataclass
class SuiteReport:
    reports: list
    mode: str

    @property
    def summary(self) -> dict:
        passed = sum(1 for r in self.reports if r.equal)
        return {
            "pass": passed,
            "fail": len(self.reports) - passed,
            "degenerate": sum(1 for r in self.reports if r.mode == "degenerate-limit"),
        }

    @property
    def passed(self) -> bool:
        return self.summary["fail"] == 0

    def failures(self) -> list:
        return [r for r in self.reports if not r.equal]

    def to_document(self, command: str) -> dict:
        return {
            "version": REPORT_VERSION,
            "command": command,
            "reports": [r.to_dict() for r in self.reports],
            "summary": self.summary,
        }


# ---------------------------------------------------------------------------
# side construction


class _Ctx:
    """Scalar constants and linear forms for one arithmetic mode."""

    def __init__(self, numeric: bool):
        self.numeric = numeric
        if numeric:
            self.I = 1j
            self.SQRT2 = math.sqrt(2.0)
            self.one = 1 + 0j
        else:
            self.I = I
            self.SQRT2 = SQRT2
            self.one = ONE

    def lf(self, name: str) -> LinearForm:
        L = make_linear_form(name)
        return L.to_complex() if self.numeric else L

    def scalar(self, v):
        if self.numeric:
            return complex(v) if not isinstance(v, ExactScalar) else complex(v)
        if isinstance(v, (float, complex)):
            raise TypeError(f"float parameter {v!r} in exact mode; use a rational or numeric mode")
        return as_scalar(v)

    def sqrt(self, r):
        if self.numeric:
            return cmath.sqrt(complex(r))
        return sqrt_in_ring(r)

    def is_zero(self, v) -> bool:
        if self.numeric:
            return abs(v) < 1e-14
        return not v


def _scaled_hermite_rhs(ctx: _Ctx, n: int, L: LinearForm, radicand):
    """``s^n :H_n(L/s):`` with ``s = sqrt(radicand)``; the limit ``2^n :L^n:`` at ``s = 0``."""
    if ctx.is_zero(radicand):
        return normal_symbol_power(L.to_expr(), n).scale(ctx.one * 2 ** n), "degenerate-limit"
    s = ctx.sqrt(radicand)
    return normal_symbol_hermite(n, L / s).scale(s ** n), None


def _build_operator(ident: str, p: dict, ctx: _Ctx):
    """Returns ``(lhs, rhs, mode_override, diagnostics)``."""
    X, Y, P = ctx.lf("X"), ctx.lf("Y"), ctx.lf("P")
    A, B = ctx.lf("a+bd"), ctx.lf("ad+b")
    two = ctx.one * 2
    diag = {}
    mode = None
    if ident == "OP-HERMITE-X":
        n = p["n"]
        return hermite_of_operator(n, X), normal_symbol_power(X.to_expr(), n).scale(two ** n), None, diag
    if ident == "X-POWER":
        n = p["n"]
        rhs = normal_symbol_hermite(n, X.scale(ctx.I)).scale((2 * ctx.I) ** -n)
        return operator_power(X.to_expr(), n), rhs, None, diag
    if ident == "P-HERMITE":
        n = p["n"]
        return hermite_of_operator(n, P), normal_symbol_power(P.to_expr(), n).scale(two ** n), None, diag
    if ident in ("VACUUM-X", "VACUUM-P"):
        n = p["n"]
        L = X if ident == "VACUUM-X" else P
        full = hermite_of_operator(n, L)
        ket = apply_to_vacuum(full)
        diag["_scale"] = max((abs(complex(c)) for c in full.terms.values()), default=0.0)
        coeff = ctx.SQRT2 ** n * (ctx.I ** n if ident == "VACUUM-P" else ctx.one)
        expected = FockKet({(n, 0): coeff})
        amps = ket.amplitudes()
        target = (1j ** n if ident == "VACUUM-P" else 1) * math.sqrt(math.factorial(n) * 2 ** n)
        diag["amplitude_error"] = abs(amps.get((n, 0), 0) - target) / abs(target)
        if ident == "VACUUM-P":
            diag["index_convention"] = "momentum amplitude <p|n> uses H_n(p), indexed by the state"
        return ket, expected, None, diag
    if ident == "SCALED-X":
        n, f = p["n"], ctx.scalar(p["f"])
        fX = X.scale(f)
        lhs = hermite_of_operator(n, fX)
        rhs, mode = _scaled_hermite_rhs(ctx, n, fX, 1 - f * f)
        naive = normal_symbol_power(fX.to_expr(), n).scale(two ** n)
        diag["naive_equal"] = _compare(lhs, naive, ctx.numeric, DEFAULT_TOL)[0]
        return lhs, rhs, mode, diag
    if ident == "SUM-XY":
        n = p["n"]
        XY = X + Y
        lhs = hermite_of_operator(n, XY / ctx.SQRT2)
        return lhs, normal_symbol_power(XY.to_expr(), n).scale(ctx.SQRT2 ** n), None, diag
    if ident in ("GENERAL-FG", "FG-UNITY"):
        n = p["m"]
        if ident == "GENERAL-FG":
            f, g = ctx.scalar(p["f"]), ctx.scalar(p["g"])
        else:
            f = g = ctx.one
        L = X.scale(f) + Y.scale(g)
        lhs = hermite_of_operator(n, L)
        if ident == "FG-UNITY":
            rhs = normal_symbol_hermite(n, L.scale(-ctx.I)).scale(ctx.I ** n)
        else:
            rhs, mode = _scaled_hermite_rhs(ctx, n, L, 1 - f * f - g * g)
        return lhs, rhs, mode, diag
    if ident == "TWOVAR-NORMAL":
        m, n = p["m"], p["n"]
        lhs = two_var_hermite_of_operators(m, n, A, B, inside_normal_symbol=False)
        rhs = commuting_multiply(normal_symbol_power(A.to_expr(), m), normal_symbol_power(B.to_expr(), n))
        return lhs, rhs, None, diag
    if ident == "TWOVAR-ANTINORMAL":
        m, n = p["m"], p["n"]
        lhs = normal_order_multiply(operator_power(A.to_expr(), m), operator_power(B.to_expr(), n))
        rhs = two_var_hermite_of_operators(m, n, A.scale(ctx.I), B.scale(ctx.I), inside_normal_symbol=True)
        return lhs, rhs.scale((-ctx.I) ** (m + n)), None, diag
    if ident == "XY-POWER":
        n = p["n"]
        XY = X + Y
        rhs = normal_symbol_hermite(n, XY.scale(ctx.I) / ctx.SQRT2).scale((ctx.I * ctx.SQRT2) ** -n)
        return operator_power(XY.to_expr(), n), rhs, None, diag
    raise UnknownIdentity(ident)


def _build_polynomial(ident: str, p: dict, ctx: _Ctx):
    if ident == "BINOMIAL-LIKE":
        n, x, y = p["n"], ctx.scalar(p["x"]), ctx.scalar(p["y"])
        lhs = sum((two_var_hermite_eval(ell, n - ell, x, y) * binomial(n, ell) for ell in range(n + 1)),
                  ctx.one * 0)
        return lhs, hermite_eval(n, (x + y) / 2) * ctx.one, None, {}
    if ident == "D1-SUM":
        m = p["m"]
        f, g, x, y = (ctx.scalar(p[k]) for k in ("f", "g", "x", "y"))
        u, v = ctx.SQRT2 * f * x, ctx.SQRT2 * g * y
        lhs = sum((hermite_eval(m - k, u) * hermite_eval(k, v) * binomial(m, k) for k in range(m + 1)),
                  ctx.one * 0)
        return lhs, ctx.SQRT2 ** m * hermite_eval(m, f * x + g * y), None, {}
    raise UnknownIdentity(ident)


# ---------------------------------------------------------------------------
# comparison


def _coefficient_maps(side):
    if isinstance(side, OperatorExpr):
        return side.terms
    if isinstance(side, FockKet):
        return side.coeffs
    return {(): side}


def _compare(lhs, rhs, numeric: bool, tol: float, scale: float | None = None):
    """``(equal, max_abs_diff)``; exact mode compares term maps exactly.

    Numeric mode accepts a coefficient when its difference is within
    ``tol`` relative to the coefficient, or within ``ABS_FLOOR`` relative to
    ``scale`` (default: the largest coefficient of either side). The second
    clause covers coefficients that are exactly zero but carry round-off.
    """
    if not numeric:
        return lhs == rhs, None
    lm, rm = _coefficient_maps(lhs), _coefficient_maps(rhs)
    if scale is None:
        scale = max((abs(complex(v)) for v in itertools.chain(lm.values(), rm.values())), default=0.0)
    floor = ABS_FLOOR * max(1.0, scale)
    ok = True
    worst = 0.0
    for key in set(lm) | set(rm):
        lv, rv = complex(lm.get(key, 0)), complex(rm.get(key, 0))
        diff = abs(lv - rv)
        worst = max(worst, diff)
        if diff <= tol * max(abs(lv), abs(rv)) or diff <= floor:
            continue
        ok = False
    return ok, worst


def _perturbed(side, delta):
    if delta is None:
        return side
    if isinstance(side, OperatorExpr):
        return side + OperatorExpr.scalar(delta)
    if isinstance(side, FockKet):
        coeffs = side.coeffs
        coeffs[(0, 0)] = coeffs.get((0, 0), 0) + delta
        return FockKet(coeffs)
    return side + delta


def _render(side) -> str:
    if isinstance(side, (OperatorExpr, FockKet)):
        return str(side)
    if isinstance(side, complex):
        return repr(side)
    return str(side)


# ---------------------------------------------------------------------------
# public entry points


def _normalise_params(info: IdentityInfo, params: dict) -> dict:
    missing = [k for k in info.params if k not in params]
    if missing:
        raise ValueError(f"{info.id} needs parameters {', '.join(missing)}")
    return {k: params[k] for k in info.params}


def verify_identity(ident: str, params: dict, mode: str = "exact", tol: float = DEFAULT_TOL,
                    perturb=None) -> IdentityReport:
    """Check one identity at one parameter point.

    Parameters
    ----------
    ident : str
        Registry id such as ``"GENERAL-FG"``.
    params : dict
        Integers for indices; rationals/ExactScalar for ``f, g, x, y, mu,
        nu`` (floats are accepted in numeric mode).
    mode : {"exact", "numeric"}
    tol : float
        Relative tolerance of numeric mode.
    perturb : scalar, optional
        Added to the right-hand side; used to confirm that a falsified
        identity is reported as failing.

    Raises
    ------
    UnknownIdentity, NotRepresentable, DegreeTooLarge
    """
    if ident not in IDENTITIES:
        raise UnknownIdentity(f"unknown identity {ident!r}")
    if mode not in ("exact", "numeric"):
        raise ValueError(f"mode must be 'exact' or 'numeric', got {mode!r}")
    info = IDENTITIES[ident]
    p = _normalise_params(info, params)
    numeric = mode == "numeric"
    start = time.perf_counter()
    if ident.startswith("INT-"):
        return _verify_integral(info, p, numeric, tol, perturb, start)
    ctx = _Ctx(numeric)
    if ident in ("BINOMIAL-LIKE", "D1-SUM"):
        lhs, rhs, override, diag = _build_polynomial(ident, p, ctx)
    else:
        lhs, rhs, override, diag = _build_operator(ident, p, ctx)
    if perturb is not None:
        rhs = _perturbed(rhs, ctx.scalar(perturb))
    scale = diag.pop("_scale", None)
    equal, diff = _compare(lhs, rhs, numeric, tol, scale)
    ms = (time.perf_counter() - start) * 1e3
    return IdentityReport(ident, p, override or mode, _render(lhs), _render(rhs), equal, diff, ms, diag)


def _verify_integral(info, p, numeric, tol, perturb, start):
    kw = dict(p)
    n = kw.pop("m", None)
    n = kw.pop("n", n)
    cf = integrals.ClosedForm(info.id, n, **kw)
    diag = {}
    if numeric:
        q = integrals.quadrature_check(cf.with_floats(), tol=tol)
        ref = q.reference + (float(perturb) if perturb is not None else 0.0)
        abs_err = abs(q.value - ref)
        if abs(ref) < integrals.NEAR_ZERO:
            equal = abs_err <= integrals.NEAR_ZERO
        else:
            equal = abs_err <= tol * abs(ref)
        diag.update(criterion=q.criterion, rel_error=q.rel_error if perturb is None else abs_err / max(abs(ref), 1e-300))
        mode = "degenerate-limit" if q.degenerate else "numeric"
        lhs, rhs, diff = repr(q.value), repr(ref), abs_err
    else:
        cf = cf.with_exact()
        lhs_v = integrals.integral_lhs(cf)
        rhs_v = integrals.closed_form_rhs(cf)
        if perturb is not None:
            rhs_v = rhs_v + as_scalar(perturb)
        equal = lhs_v == rhs_v
        mode = "degenerate-limit" if integrals.is_degenerate(cf) else "exact"
        lhs, rhs, diff = str(lhs_v), str(rhs_v), None
    ms = (time.perf_counter() - start) * 1e3
    return IdentityReport(info.id, p, mode, lhs, rhs, equal, diff, ms, diag)


# ---------------------------------------------------------------------------
# parameter grids


def _rationals(max_den: int, max_value: Fraction):
    seen = set()
    for q in range(1, max_den + 1):
        for num in range(1, int(max_value * q) + 1):
            f = Fraction(num, q)
            if f not in seen:
                seen.add(f)
                yield f


def _admissible(radicand) -> bool:
    if not radicand:
        return False
    try:
        sqrt_in_ring(radicand)
    except NotRepresentable:
        return False
    return True


def admissible_f_values(count: int = 5) -> list:
    """Rationals ``f`` (by increasing denominator) with ``sqrt(1-f^2)`` in the ring."""
    out = []
    for f in _rationals(20, Fraction(2)):
        if _admissible(1 - f * f):
            out.append(f)
            if len(out) == count:
                break
    return out


def admissible_fg_pairs(count: int = 5) -> list:
    """Pairs ``(f, g)``, ``f <= g``, with ``sqrt(1-f^2-g^2)`` in the ring.

    Candidates are tried in order of their largest denominator, then size.
    """
    values = list(_rationals(6, Fraction(3, 2)))
    pairs = sorted(((f, g) for f in values for g in values if f <= g),
                   key=lambda fg: (max(fg[0].denominator, fg[1].denominator), fg[0] + fg[1], fg))
    return [fg for fg in pairs if _admissible(1 - fg[0] ** 2 - fg[1] ** 2)][:count]


_ALL_OPERATOR_N = ("OP-HERMITE-X", "X-POWER", "P-HERMITE", "VACUUM-X", "VACUUM-P", "SUM-XY", "XY-POWER")
_NUMERIC_F = (0.3, 0.7, 1.3)
_NUMERIC_FG = ((0.3, 0.4), (0.9, 0.8), (0.5, -0.6))
GENERAL_FG_MAX_M = 10
INTEGRAL_POINTS = 12


def default_grid(ident: str, mode: str = "exact", max_n: int = 12, max_two_index: int = 8) -> list:
    """Deterministic list of parameter dicts exercised by :func:`run_suite`."""
    if ident not in IDENTITIES:
        raise UnknownIdentity(f"unknown identity {ident!r}")
    numeric = mode == "numeric"
    ns = range(max_n + 1)
    if ident in _ALL_OPERATOR_N:
        return [{"n": n} for n in ns]
    if ident == "SCALED-X":
        fs = list(_NUMERIC_F) if numeric else [as_scalar(f) for f in admissible_f_values()] + [ONE]
        return [{"n": n, "f": f} for f in fs for n in ns]
    if ident == "GENERAL-FG":
        if numeric:
            pairs = list(_NUMERIC_FG)
        else:
            half = SQRT2 * as_scalar("1/2")
            pairs = [(as_scalar(f), as_scalar(g)) for f, g in admissible_fg_pairs()]
            pairs += [(as_scalar("3/5"), as_scalar("4/5")), (half, half)]
        return [{"m": m, "f": f, "g": g} for f, g in pairs for m in range(min(max_n, GENERAL_FG_MAX_M) + 1)]
    if ident == "FG-UNITY":
        return [{"m": m} for m in ns]
    if ident in ("TWOVAR-NORMAL", "TWOVAR-ANTINORMAL"):
        k = range(max_two_index + 1)
        return [{"m": m, "n": n} for m in k for n in k]
    if ident == "BINOMIAL-LIKE":
        pts = [(0.4, 2.5), (-2.0, 1.75)] if numeric else [(as_scalar("1/3"), as_scalar("5/2")), (as_scalar(-2), as_scalar("7/4"))]
        return [{"n": n, "x": x, "y": y} for x, y in pts for n in ns]
    if ident == "D1-SUM":
        if numeric:
            pts = [(0.5, 0.75, 0.6, -1.0), (2.0, -0.3, 0.2, 1.5)]
        else:
            pts = [tuple(as_scalar(v) for v in ("1/2", "3/4", "2/3", "-1")),
                   tuple(as_scalar(v) for v in ("2", "-1/3", "1/5", "3/2"))]
        return [{"m": m, "f": f, "g": g, "x": x, "y": y} for f, g, x, y in pts for m in ns]
    # integral ids
    rng = random.Random(f"{ident}-{mode}")
    names = IDENTITIES[ident].params
    grid = []
    for _ in range(INTEGRAL_POINTS):
        if numeric:
            cf = integrals.random_float_point(ident, rng, max_n=min(max_n, 10))
        else:
            cf = integrals.random_exact_point(ident, rng, max_n=min(max_n, 10))
        grid.append({name: (cf.n if name in ("n", "m") else getattr(cf, name)) for name in names})
    return grid


def run_suite(selection="all", mode: str = "exact", max_n: int = 12, max_two_index: int = 8,
              tol: float = DEFAULT_TOL, perturb=None) -> SuiteReport:
    """Verify every selected identity over its default parameter grid.

    Reports come back sorted by (registry order, parameters), independent
    of evaluation order.
    """
    if selection == "all" or selection is None:
        ids = [info.id for info in _INFO]
    else:
        ids = list(selection)
        for ident in ids:
            if ident not in IDENTITIES:
                raise UnknownIdentity(f"unknown identity {ident!r}")
    reports = []
    for ident in ids:
        for params in default_grid(ident, mode, max_n, max_two_index):
            reports.append(verify_identity(ident, params, mode, tol, perturb))
    reports.sort(key=IdentityReport.sort_key)
    return SuiteReport(reports, mode)
