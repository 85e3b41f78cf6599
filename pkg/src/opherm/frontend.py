"""Surface syntax for operator and Hermite expressions.

Grammar (whitespace insensitive)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := rational | 'i' | 'sqrt2' | symbol
            | 'H(' nat ',' expr ')' | 'H2(' nat ',' nat ',' expr ',' expr ')'
            | ':' expr ':' | '(' expr ')'

Rationals are written ``p`` or ``p/q``. Mode operators are ``a ad b bd``;
``X Y P Px Py`` are the quadratures. Inside ``: ... :`` all products
commute; everywhere else they are operator products put into normal
order. Integrand expressions use the commuting variables ``x`` and ``y``
instead of operators.

Examples
--------
>>> str(elaborate(parse_expression("a*ad")))
'ad*a + 1'
>>> render_expression(elaborate(parse_expression("H(2, X)")))
'2*ad^2 + 4*ad*a + 2*a^2'
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .boson import (
    LINEAR_SYMBOLS,
    LinearForm,
    OperatorExpr,
    commuting_multiply,
    hermite_of_operator,
    normal_order_multiply,
    normal_symbol_hermite,
    normal_symbol_power,
    operator_power,
    two_var_hermite_of_operators,
)
from .errors import ExprSyntaxError, NonLinearHermiteArgument
from .integrals import _poly_mul
from .polynomials import check_degree, hermite_coefficients, two_var_hermite_coefficients
from .scalars import I, ONE, SQRT2, ZERO, ExactScalar, as_scalar

__all__ = [
    "ExprAst",
    "OPERATOR_SYMBOLS",
    "INTEGRAND_SYMBOLS",
    "parse_expression",
    "parse_integrand",
    "parse_scalar",
    "elaborate",
    "elaborate_integrand",
    "render_expression",
]

OPERATOR_SYMBOLS = frozenset(("a", "ad", "b", "bd", "X", "Y", "P", "Px", "Py"))
INTEGRAND_SYMBOLS = frozenset(("x", "y"))
MAX_DEPTH = 200
MAX_LITERAL = 1000


# ---------------------------------------------------------------------------
# syntax tree


@dataclass(frozen=True)
class ExprAst:
    """One node of a parsed expression.

    ``op`` is one of ``num sym neg sum mul pow H H2 normal``; ``args``
    holds child nodes, or the literal payload for leaves (an ExactScalar
    for ``num``, a name for ``sym``). ``ints`` carries the natural-number
    indices of ``pow``, ``H`` and ``H2``, and the term signs (+1/-1) of
    ``sum``. Sums and products are n-ary so that long expressions stay
    shallow. ``pos`` is the source offset.
    """

    op: str
    args: tuple = ()
    ints: tuple = ()
    pos: int = 0
    form: object = field(default=None, compare=False)

    def children(self):
        if self.op in ("num", "sym"):
            return ()
        return self.args


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<punct>[-+*^(),:]))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # num, name, punct, end
    text: str
    pos: int


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            out.append(_Tok("end", "", n))
            return out
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos,
                                  ("number", "name", "operator"))
        kind = m.lastgroup
        if kind == "num" and len(m.group(kind)) > MAX_LITERAL:
            raise ExprSyntaxError("numeric literal too long", m.start(kind), ("shorter number",))
        out.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str, symbols: frozenset):
        if not isinstance(text, str):
            raise ExprSyntaxError("expression must be a string", 0, ("string",))
        self.text = text
        self.symbols = symbols
        self.toks = _tokenize(text)
        self.k = 0
        self.depth = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.k]

    def _advance(self) -> _Tok:
        t = self.toks[self.k]
        if t.kind != "end":
            self.k += 1
        return t

    def _fail(self, expected):
        t = self.tok
        got = "end of input" if t.kind == "end" else repr(t.text)
        raise ExprSyntaxError(f"expected {' or '.join(expected)}, got {got}", t.pos, tuple(expected))

    def _expect(self, text: str) -> _Tok:
        if self.tok.kind == "punct" and self.tok.text == text:
            return self._advance()
        self._fail((repr(text),))

    def _is(self, text: str) -> bool:
        return self.tok.kind == "punct" and self.tok.text == text

    def parse(self) -> ExprAst:
        node = self.expr()
        if self.tok.kind != "end":
            self._fail(("'+'", "'-'", "'*'", "end of input"))
        return node

    def expr(self) -> ExprAst:
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ExprSyntaxError("expression nested too deeply", self.tok.pos, ())
        start = self.tok.pos
        sign = None
        if self._is("-") or self._is("+"):
            sign = self._advance().text
        terms = [self.term()]
        signs = [-1 if sign == "-" else 1]
        while self._is("+") or self._is("-"):
            signs.append(1 if self._advance().text == "+" else -1)
            terms.append(self.term())
        self.depth -= 1
        if len(terms) == 1:
            return terms[0] if signs[0] > 0 else ExprAst("neg", (terms[0],), pos=start)
        return ExprAst("sum", tuple(terms), tuple(signs), pos=start)

    def term(self) -> ExprAst:
        start = self.tok.pos
        factors = [self.factor()]
        while self._is("*"):
            self._advance()
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return ExprAst("mul", tuple(factors), pos=start)

    def factor(self) -> ExprAst:
        node = self.atom()
        if self._is("^"):
            op = self._advance()
            node = ExprAst("pow", (node,), (self.nat(),), pos=op.pos)
        return node

    def nat(self) -> int:
        t = self.tok
        if t.kind == "num" and "/" not in t.text:
            self._advance()
            return int(t.text)
        self._fail(("natural number",))

    def atom(self) -> ExprAst:
        t = self.tok
        if t.kind == "num":
            self._advance()
            num, _, den = t.text.partition("/")
            if den and int(den) == 0:
                raise ExprSyntaxError("zero denominator", t.pos, ("nonzero denominator",))
            return ExprAst("num", (as_scalar(Fraction(int(num), int(den or 1))),), pos=t.pos)
        if t.kind == "name":
            if t.text in ("H", "H2"):
                return self.hermite()
            self._advance()
            if t.text == "i":
                return ExprAst("num", (I,), pos=t.pos)
            if t.text == "sqrt2":
                return ExprAst("num", (SQRT2,), pos=t.pos)
            if t.text in self.symbols:
                return ExprAst("sym", (t.text,), pos=t.pos)
            raise ExprSyntaxError(f"unknown symbol {t.text!r}", t.pos,
                                  tuple(sorted(self.symbols)) + ("i", "sqrt2", "H", "H2"))
        if self._is("("):
            self._advance()
            node = self.expr()
            self._expect(")")
            return node
        if self._is(":"):
            self._advance()
            inner = self.expr()
            self._expect(":")
            return ExprAst("normal", (inner,), pos=t.pos)
        self._fail(("number", "symbol", "'('", "':'", "'H('", "'H2('"))

    def hermite(self) -> ExprAst:
        t = self._advance()
        self._expect("(")
        if t.text == "H":
            n = self.nat()
            self._expect(",")
            arg = self.expr()
            self._expect(")")
            form = _linear_argument(arg, self.symbols)
            return ExprAst("H", (arg,), (n,), pos=t.pos, form=(form,))
        m = self.nat()
        self._expect(",")
        n = self.nat()
        self._expect(",")
        arg1 = self.expr()
        self._expect(",")
        arg2 = self.expr()
        self._expect(")")
        forms = (_linear_argument(arg1, self.symbols), _linear_argument(arg2, self.symbols))
        return ExprAst("H2", (arg1, arg2), (m, n), pos=t.pos, form=forms)


# ---------------------------------------------------------------------------
# linearity of Hermite arguments
#
# _classify returns ("s", scalar) for c-numbers, ("l", (form, const)) for
# affine combinations of symbols and None for anything of higher degree.


def _symbol_form(name: str):
    if name in LINEAR_SYMBOLS:
        return LINEAR_SYMBOLS[name]
    return {name: ONE}


def _form_add(u, v):
    if isinstance(u, LinearForm):
        return u + v
    out = dict(u)
    for key, c in v.items():
        out[key] = out.get(key, ZERO) + c
    return out


def _form_scale(u, k):
    if isinstance(u, LinearForm):
        return u * k
    return {key: c * k for key, c in u.items()}


def _affine_add(u, v, sign):
    if u[0] == v[0] == "s":
        return ("s", u[1] + sign * v[1])
    fu, cu = u[1] if u[0] == "l" else (None, u[1])
    fv, cv = v[1] if v[0] == "l" else (None, v[1])
    if fv is not None and sign < 0:
        fv = _form_scale(fv, -ONE)
    form = fv if fu is None else fu if fv is None else _form_add(fu, fv)
    return ("l", (form, cu + sign * cv))


def _classify(node: ExprAst, symbols):
    op = node.op
    if op == "num":
        return ("s", node.args[0])
    if op == "sym":
        return ("l", (_symbol_form(node.args[0]), ZERO))
    if op == "neg":
        c = _classify(node.args[0], symbols)
        if c is None:
            return None
        if c[0] == "s":
            return ("s", -c[1])
        return ("l", (_form_scale(c[1][0], -ONE), -c[1][1]))
    if op == "sum":
        acc = ("s", ZERO)
        for child, sign in zip(node.args, node.ints):
            v = _classify(child, symbols)
            if v is None:
                return None
            acc = _affine_add(acc, v, sign)
        return acc
    if op == "mul":
        acc = ("s", ONE)
        for child in node.args:
            v = _classify(child, symbols)
            if v is None:
                return None
            if acc[0] == v[0] == "s":
                acc = ("s", acc[1] * v[1])
                continue
            if acc[0] == "l" and v[0] == "l":
                return None
            (k, (form, c)) = (acc[1], v[1]) if acc[0] == "s" else (v[1], acc[1])
            acc = ("l", (_form_scale(form, k), c * k))
        return acc
    if op == "pow":
        e = node.ints[0]
        u = _classify(node.args[0], symbols)
        if u is None:
            return None
        if u[0] == "s":
            check_degree(e, "exponent")
            return ("s", u[1] ** e)
        if e == 0:
            return ("s", ONE)
        return u if e == 1 else None
    if op == "normal":
        return _classify(node.args[0], symbols)
    if op == "H":
        n = node.ints[0]
        if n == 0:
            return ("s", ONE)
        if n == 1:
            u = _classify(node.args[0], symbols)
            if u is None or u[0] == "s":
                return u and ("s", 2 * u[1])
            return ("l", (_form_scale(u[1][0], as_scalar(2)), 2 * u[1][1]))
        return None
    if op == "H2":
        m, n = node.ints
        if (m, n) == (0, 0):
            return ("s", ONE)
        if (m, n) == (1, 0):
            return _classify(node.args[0], symbols)
        if (m, n) == (0, 1):
            return _classify(node.args[1], symbols)
        return None
    return None


def _linear_argument(node: ExprAst, symbols):
    """Linear form of a Hermite argument, or raise NonLinearHermiteArgument.

    Operator arguments must be homogeneous linear combinations of mode
    operators. Integrand arguments may carry a constant term.
    """
    c = _classify(node, symbols)
    operator_mode = not (symbols <= INTEGRAND_SYMBOLS)
    if c is None or c[0] != "l":
        raise NonLinearHermiteArgument(
            "Hermite argument must be a linear combination of "
            + ("mode operators" if operator_mode else "the variables"),
            node.pos, ("linear expression",))
    form, const = c[1]
    if operator_mode:
        if const:
            raise NonLinearHermiteArgument("Hermite argument of operators may not contain a constant term",
                                           node.pos, ("linear expression",))
        return form
    return (form, const)


def parse_expression(text: str, symbols=OPERATOR_SYMBOLS) -> ExprAst:
    """Parse ``text`` into an :class:`ExprAst`.

    Raises
    ------
    ExprSyntaxError
        With ``position`` (character offset) and ``expected`` set.
    NonLinearHermiteArgument
        When ``H``/``H2`` is applied to a non-linear argument.
    """
    return _Parser(text, frozenset(symbols)).parse()


def parse_integrand(text: str) -> ExprAst:
    """Parse a polynomial in the commuting variables ``x`` and ``y``."""
    return parse_expression(text, INTEGRAND_SYMBOLS)


# ---------------------------------------------------------------------------
# elaboration to operators


def elaborate(ast: ExprAst) -> OperatorExpr:
    """Evaluate a parsed operator expression into normal-ordered form."""
    return _elab(ast, False)


def _elab(node: ExprAst, inside: bool) -> OperatorExpr:
    op = node.op
    if op == "num":
        return OperatorExpr.scalar(node.args[0])
    if op == "sym":
        return LINEAR_SYMBOLS[node.args[0]].to_expr()
    if op == "neg":
        return -_elab(node.args[0], inside)
    if op == "sum":
        out = OperatorExpr()
        for child, sign in zip(node.args, node.ints):
            e = _elab(child, inside)
            out = out + e if sign > 0 else out - e
        return out
    if op == "mul":
        product = commuting_multiply if inside else normal_order_multiply
        out = _elab(node.args[0], inside)
        for child in node.args[1:]:
            out = product(out, _elab(child, inside))
        return out
    if op == "pow":
        e = node.ints[0]
        check_degree(e, "exponent")
        base = _elab(node.args[0], inside)
        return normal_symbol_power(base, e) if inside else operator_power(base, e)
    if op == "normal":
        return _elab(node.args[0], True)
    if op == "H":
        (L,) = node.form
        return normal_symbol_hermite(node.ints[0], L) if inside else hermite_of_operator(node.ints[0], L)
    if op == "H2":
        m, n = node.ints
        L1, L2 = node.form
        return two_var_hermite_of_operators(m, n, L1, L2, inside_normal_symbol=inside)
    raise ValueError(f"unknown node {op!r}")


# ---------------------------------------------------------------------------
# elaboration to c-number polynomials


def _poly_scalar(c) -> dict:
    return {(0, 0): c} if c else {}


def _poly_add(p1: dict, p2: dict, sign=1) -> dict:
    out = dict(p1)
    for key, c in p2.items():
        v = out.get(key, ZERO) + (c if sign > 0 else -c)
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


def _poly_pow(p: dict, e: int) -> dict:
    out = {(0, 0): ONE}
    for _ in range(e):
        out = _poly_mul(out, p)
    return out


def _poly_affine(form_const) -> dict:
    form, const = form_const
    poly = {}
    for name, c in form.items():
        key = (1, 0) if name == "x" else (0, 1)
        poly = _poly_add(poly, {key: c})
    return _poly_add(poly, _poly_scalar(const))


def _poly_compose(coeffs, arg: dict) -> dict:
    """``sum coeffs[k] * arg**k`` by Horner."""
    out = {}
    for c in reversed(coeffs):
        out = _poly_add(_poly_mul(out, arg), _poly_scalar(as_scalar(c)))
    return out


def elaborate_integrand(ast: ExprAst) -> dict:
    """Evaluate an ``x``/``y`` expression to ``{(j, k): coeff of x^j y^k}``.

    Colons are accepted and have no effect since the variables commute.
    """
    op = ast.op
    if op == "num":
        return _poly_scalar(ast.args[0])
    if op == "sym":
        return {(1, 0) if ast.args[0] == "x" else (0, 1): ONE}
    if op == "neg":
        return {k: -c for k, c in elaborate_integrand(ast.args[0]).items()}
    if op == "sum":
        out = {}
        for child, sign in zip(ast.args, ast.ints):
            out = _poly_add(out, elaborate_integrand(child), sign)
        return out
    if op == "mul":
        out = elaborate_integrand(ast.args[0])
        for child in ast.args[1:]:
            out = _poly_mul(out, elaborate_integrand(child))
        return out
    if op == "pow":
        check_degree(ast.ints[0], "exponent")
        return _poly_pow(elaborate_integrand(ast.args[0]), ast.ints[0])
    if op == "normal":
        return elaborate_integrand(ast.args[0])
    if op == "H":
        (fc,) = ast.form
        return _poly_compose(hermite_coefficients(ast.ints[0]).coeffs, _poly_affine(fc))
    if op == "H2":
        m, n = ast.ints
        u, v = (_poly_affine(fc) for fc in ast.form)
        out = {}
        for (j, k), c in two_var_hermite_coefficients(m, n).coeffs.items():
            term = _poly_mul(_poly_pow(u, j), _poly_pow(v, k))
            out = _poly_add(out, {key: as_scalar(c) * val for key, val in term.items()})
        return out
    raise ValueError(f"unknown node {op!r}")


# ---------------------------------------------------------------------------
# scalars and rendering


def parse_scalar(text: str) -> ExactScalar:
    """Parse a c-number such as ``3/5``, ``-1/2*sqrt2`` or ``1 + i``."""
    e = elaborate(parse_expression(text, frozenset()))
    if e.is_zero():
        return ZERO
    return as_scalar(e.coefficient(0, 0, 0, 0))


def render_expression(e: OperatorExpr, style: str = "plain") -> str:
    """Canonical text (``plain``) or LaTeX (``latex``) for an expression.

    Plain output parses back to the same expression.
    """
    return e.to_text(style)
