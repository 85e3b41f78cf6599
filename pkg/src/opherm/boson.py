"""Two-mode boson operator algebra in normal-ordered canonical form.

An :class:`OperatorExpr` is a finite sum of words ``ad^p a^q bd^r b^s``
(``ad`` is the creation operator of mode ``a``) with scalar coefficients.
Coefficients are :class:`~opherm.scalars.ExactScalar` for exact work or
plain ``complex`` for numeric checks; the algebra only needs ``+``, ``*``
and truthiness from them.

Two products are provided:

* :func:`normal_order_multiply` is the true operator product, rewritten
  into normal order with the per-mode Wick closed form.
* :func:`commuting_multiply` is the product inside the normal-ordering
  symbol ``:...:``, where all mode operators commute.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from functools import lru_cache
from typing import NamedTuple

from . import kernels
from .errors import DegreeTooLarge, NonCommutingArguments, UnknownSymbol
from .polynomials import (
    check_degree,
    get_degree_guard,
    hermite_coefficients,
    two_var_hermite_coefficients,
)
from .scalars import I, ONE, SQRT2, ZERO, ExactScalar, as_scalar, to_float_complex

__all__ = [
    "NormalMonomial",
    "OperatorExpr",
    "LinearForm",
    "FockKet",
    "LINEAR_SYMBOLS",
    "make_linear_form",
    "normal_order_multiply",
    "commuting_multiply",
    "operator_power",
    "normal_symbol_power",
    "hermite_of_operator",
    "normal_symbol_hermite",
    "two_var_hermite_of_operators",
    "apply_to_vacuum",
]


class NormalMonomial(NamedTuple):
    """The normal-ordered word ``ad^p a^q bd^r b^s``."""

    p: int = 0
    q: int = 0
    r: int = 0
    s: int = 0

    @property
    def degree(self) -> int:
        return self.p + self.q + self.r + self.s


IDENTITY = NormalMonomial(0, 0, 0, 0)
_NAMES = ("ad", "a", "bd", "b")
_LATEX = (r"a^{\dagger%s}", "a%s", r"b^{\dagger%s}", "b%s")


def _monomial_text(m: NormalMonomial) -> str:
    parts = []
    for name, power in zip(_NAMES, m):
        if power == 1:
            parts.append(name)
        elif power:
            parts.append(f"{name}^{power}")
    return "*".join(parts)


def _monomial_latex(m: NormalMonomial) -> str:
    parts = []
    for tmpl, power in zip(_LATEX, m):
        if not power:
            continue
        if "dagger" in tmpl:
            parts.append(tmpl % ("" if power == 1 else f" {power}"))
        else:
            parts.append(tmpl % ("" if power == 1 else f"^{{{power}}}"))
    return " ".join(parts)


def _split_sign(text: str):
    """Pull a leading minus off a single-component scalar text."""
    if text.startswith("-"):
        return "-", text[1:]
    return "+", text


def _coefficient_parts(c):
    """(sign, magnitude text, is_unit, needs_parens) for a coefficient."""
    if isinstance(c, ExactScalar):
        nonzero = sum(1 for comp in c.components if comp)
        text = c.to_text()
        if nonzero == 1:
            sign, mag = _split_sign(text)
            return sign, mag, mag == "1", False
        return "+", text, False, True
    if isinstance(c, complex):
        if c.imag == 0:
            c = c.real
        else:
            return "+", repr(c), False, True
    sign = "-" if c < 0 else "+"
    mag = abs(c)
    return sign, repr(mag), mag == 1, False


class OperatorExpr:
    """Immutable linear combination of :class:`NormalMonomial` words.

    Zero coefficients are never stored, so two expressions are equal
    exactly when their term maps are equal.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, coeff in dict(terms).items():
                if coeff:
                    if isinstance(coeff, int) or hasattr(coeff, "denominator"):
                        coeff = as_scalar(coeff)
                    clean[NormalMonomial(*mono)] = coeff
        self._terms = clean

    @classmethod
    def _wrap(cls, terms: dict) -> OperatorExpr:
        obj = object.__new__(cls)
        obj._terms = {k: v for k, v in terms.items() if v}
        return obj

    @classmethod
    def scalar(cls, c) -> OperatorExpr:
        return cls._wrap({IDENTITY: c})

    @classmethod
    def monomial(cls, p=0, q=0, r=0, s=0, coeff=ONE) -> OperatorExpr:
        return cls._wrap({NormalMonomial(p, q, r, s): coeff})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms in canonical order (descending lexicographic ``(p, q, r, s)``)."""
        return sorted(self._terms.items(), key=lambda kv: kv[0], reverse=True)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(mono for mono, _ in self.items())

    def coefficient(self, p=0, q=0, r=0, s=0):
        return self._terms.get(NormalMonomial(p, q, r, s), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def max_degree(self) -> int:
        return max((m.degree for m in self._terms), default=0)

    # -- linear structure ---------------------------------------------

    def __add__(self, other):
        other = _as_expr(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for mono, c in other._terms.items():
            if mono in out:
                out[mono] = out[mono] + c
            else:
                out[mono] = c
        return OperatorExpr._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return OperatorExpr._wrap({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = _as_expr(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_expr(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> OperatorExpr:
        if not c:
            return OperatorExpr()
        return OperatorExpr._wrap({m: v * c for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, OperatorExpr):
            return normal_order_multiply(self, other)
        if isinstance(other, LinearForm):
            return normal_order_multiply(self, other.to_expr())
        if isinstance(other, (int, complex, float, ExactScalar)) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, complex, float, ExactScalar)) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        other = _as_expr(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def map_coefficients(self, fn) -> OperatorExpr:
        return OperatorExpr._wrap({m: fn(c) for m, c in self._terms.items()})

    def to_complex(self) -> OperatorExpr:
        """Same expression with ``complex`` coefficients."""
        return self.map_coefficients(lambda c: c if isinstance(c, complex) else complex(c))

    # -- rendering -----------------------------------------------------

    def to_text(self, style: str = "plain") -> str:
        if style not in ("plain", "latex"):
            raise ValueError(f"unknown style {style!r}")
        if not self._terms:
            return "0"
        pieces = []
        for mono, c in self.items():
            if style == "latex":
                pieces.append(_latex_term(mono, c))
            else:
                pieces.append(_plain_term(mono, c))
        sign0, body0 = pieces[0]
        out = ("-" if sign0 == "-" else "") + body0
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"OperatorExpr({self.to_text()!r})"


def _plain_term(mono, c):
    sign, mag, unit, parens = _coefficient_parts(c)
    word = _monomial_text(mono)
    if not word:
        return sign, f"({mag})" if parens else mag
    if unit:
        return sign, word
    return sign, (f"({mag})" if parens else mag) + "*" + word


def _latex_term(mono, c):
    word = _monomial_latex(mono)
    if isinstance(c, ExactScalar):
        nonzero = sum(1 for comp in c.components if comp)
        text = c.to_latex()
        if nonzero == 1:
            sign, mag = _split_sign(text)
            parens = False
        else:
            sign, mag, parens = "+", text, True
    else:
        sign, mag, _, parens = _coefficient_parts(c)
    if not word:
        return sign, rf"\left({mag}\right)" if parens else mag
    if mag in ("", "1"):
        return sign, word
    return sign, (rf"\left({mag}\right)" if parens else mag) + " " + word


def _as_expr(value):
    if isinstance(value, OperatorExpr):
        return value
    if isinstance(value, LinearForm):
        return value.to_expr()
    if isinstance(value, (int, complex, float, ExactScalar)) or hasattr(value, "denominator"):
        if isinstance(value, int) and not isinstance(value, bool):
            value = as_scalar(value)
        return OperatorExpr.scalar(value)
    return None


# ---------------------------------------------------------------------------
# products


@lru_cache(maxsize=1 << 16)
def _wick(m1: NormalMonomial, m2: NormalMonomial) -> tuple:
    return tuple(
        (NormalMonomial(p, q, r, s), mult)
        for p, q, r, s, mult in kernels.wick_product(*m1, *m2)
    )


def _check_product_degree(d1: int, d2: int) -> None:
    limit = 4 * get_degree_guard()
    if d1 + d2 > limit:
        raise DegreeTooLarge(f"product degree {d1 + d2} exceeds {limit}")


def normal_order_multiply(e1: OperatorExpr, e2: OperatorExpr) -> OperatorExpr:
    """Operator product ``e1 * e2`` brought into normal order.

    Each mode is reordered with ``a^q ad^p = sum_k k! C(q,k) C(p,k)
    ad^(p-k) a^(q-k)``; operators of different modes commute.
    """
    e1, e2 = _as_expr(e1), _as_expr(e2)
    _check_product_degree(e1.max_degree(), e2.max_degree())
    out: dict = {}
    get = out.get
    for m1, c1 in e1._terms.items():
        for m2, c2 in e2._terms.items():
            c = c1 * c2
            for mono, mult in _wick(m1, m2):
                v = c if mult == 1 else c * mult
                prev = get(mono)
                out[mono] = v if prev is None else prev + v
    return OperatorExpr._wrap(out)


def commuting_multiply(e1: OperatorExpr, e2: OperatorExpr) -> OperatorExpr:
    """Product inside ``:...:`` (exponents simply add)."""
    e1, e2 = _as_expr(e1), _as_expr(e2)
    _check_product_degree(e1.max_degree(), e2.max_degree())
    out: dict = {}
    get = out.get
    for m1, c1 in e1._terms.items():
        for m2, c2 in e2._terms.items():
            mono = NormalMonomial(m1.p + m2.p, m1.q + m2.q, m1.r + m2.r, m1.s + m2.s)
            v = c1 * c2
            prev = get(mono)
            out[mono] = v if prev is None else prev + v
    return OperatorExpr._wrap(out)


def _powers(e: OperatorExpr, n: int, product) -> list:
    one = OperatorExpr.scalar(_unit_like(e))
    out = [one]
    for _ in range(n):
        out.append(product(out[-1], e))
    return out


def _unit_like(e):
    for c in e._terms.values():
        if isinstance(c, complex):
            return 1 + 0j
    return ONE


def operator_power(e, n: int) -> OperatorExpr:
    """``e**n`` as an operator power, normal ordered."""
    check_degree(n, "power")
    return _powers(_as_expr(e), n, normal_order_multiply)[-1]


def normal_symbol_power(e, n: int) -> OperatorExpr:
    """``:e**n:`` (commuting power)."""
    check_degree(n, "power")
    return _powers(_as_expr(e), n, commuting_multiply)[-1]


# ---------------------------------------------------------------------------
# linear forms


@dataclass(frozen=True)
class LinearForm:
    """``c_a*a + c_adag*ad + c_b*b + c_bdag*bd``."""

    c_a: object = ZERO
    c_adag: object = ZERO
    c_b: object = ZERO
    c_bdag: object = ZERO

    def coefficients(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))

    def is_zero(self) -> bool:
        return not any(self.coefficients())

    def to_expr(self) -> OperatorExpr:
        return OperatorExpr._wrap({
            NormalMonomial(0, 1, 0, 0): self.c_a,
            NormalMonomial(1, 0, 0, 0): self.c_adag,
            NormalMonomial(0, 0, 0, 1): self.c_b,
            NormalMonomial(0, 0, 1, 0): self.c_bdag,
        })

    def scale(self, k) -> LinearForm:
        return LinearForm(*(c * k for c in self.coefficients()))

    def __mul__(self, k):
        if isinstance(k, (LinearForm, OperatorExpr)):
            return normal_order_multiply(self.to_expr(), _as_expr(k))
        return self.scale(k)

    def __rmul__(self, k):
        return self.scale(k)

    def __truediv__(self, k):
        if isinstance(k, complex) or any(isinstance(c, complex) for c in self.coefficients()):
            return self.scale(1 / complex(k))
        return self.scale(as_scalar(1) / k)

    def __add__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return LinearForm(*(x + y for x, y in zip(self.coefficients(), other.coefficients())))

    def __sub__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return LinearForm(*(x - y for x, y in zip(self.coefficients(), other.coefficients())))

    def __neg__(self):
        return self.scale(-1)

    def commutator(self, other: LinearForm):
        """The c-number ``[self, other]`` (``[a, ad] = [b, bd] = 1``)."""
        return (self.c_a * other.c_adag - self.c_adag * other.c_a
                + self.c_b * other.c_bdag - self.c_bdag * other.c_b)

    def to_complex(self) -> LinearForm:
        return LinearForm(*(c if isinstance(c, complex) else to_float_complex(c)
                            for c in self.coefficients()))

    def __str__(self):
        return self.to_expr().to_text()


_HALF_SQRT2 = SQRT2 * ExactScalar("1/2")

LINEAR_SYMBOLS = {
    "a": LinearForm(c_a=ONE),
    "ad": LinearForm(c_adag=ONE),
    "b": LinearForm(c_b=ONE),
    "bd": LinearForm(c_bdag=ONE),
    "X": LinearForm(c_a=_HALF_SQRT2, c_adag=_HALF_SQRT2),
    "Y": LinearForm(c_b=_HALF_SQRT2, c_bdag=_HALF_SQRT2),
    # P = (a - ad) / (i sqrt2)
    "P": LinearForm(c_a=-I * _HALF_SQRT2, c_adag=I * _HALF_SQRT2),
    "Px": LinearForm(c_a=-I * _HALF_SQRT2, c_adag=I * _HALF_SQRT2),
    "Py": LinearForm(c_b=-I * _HALF_SQRT2, c_bdag=I * _HALF_SQRT2),
    "a+bd": LinearForm(c_a=ONE, c_bdag=ONE),
    "ad+b": LinearForm(c_adag=ONE, c_b=ONE),
}


def make_linear_form(symbol: str) -> LinearForm:
    """Exact linear form of a named operator (``X``, ``Px``, ``a+bd``, ...)."""
    key = symbol.replace(" ", "")
    try:
        return LINEAR_SYMBOLS[key]
    except KeyError:
        raise UnknownSymbol(f"unknown operator symbol {symbol!r}") from None


def _linear_expr(L) -> OperatorExpr:
    if not isinstance(L, LinearForm):
        raise TypeError("Hermite polynomials of operators need a LinearForm argument")
    return L.to_expr()


def _hermite_sum(n: int, powers: list, unit) -> OperatorExpr:
    coeffs = hermite_coefficients(n).coeffs
    out = OperatorExpr()
    for k, c in enumerate(coeffs):
        if c:
            out = out + powers[k].scale(unit * c)
    return out


def hermite_of_operator(n: int, L: LinearForm) -> OperatorExpr:
    """``H_n(L)`` with operator powers of ``L``, fully normal ordered."""
    check_degree(n)
    e = _linear_expr(L)
    unit = _unit_like(e)
    return _hermite_sum(n, _powers(e, n, normal_order_multiply), unit)


def normal_symbol_hermite(n: int, L: LinearForm) -> OperatorExpr:
    """``:H_n(L):`` -- the mode operators are treated as commuting."""
    check_degree(n)
    e = _linear_expr(L)
    unit = _unit_like(e)
    return _hermite_sum(n, _powers(e, n, commuting_multiply), unit)


def two_var_hermite_of_operators(m: int, n: int, L1: LinearForm, L2: LinearForm,
                                 inside_normal_symbol: bool = False) -> OperatorExpr:
    """``H_{m,n}(L1, L2)``, or ``:H_{m,n}(L1, L2):`` when the flag is set.

    Raises
    ------
    NonCommutingArguments
        If ``[L1, L2]`` is not zero and the flag is off; inside the normal
        symbol all factors commute, so any pair is accepted there.
    """
    e1, e2 = _linear_expr(L1), _linear_expr(L2)
    comm = 0 if inside_normal_symbol else L1.commutator(L2)
    if (abs(comm) > 1e-12) if isinstance(comm, complex) else bool(comm):
        raise NonCommutingArguments(f"[L1, L2] = {comm} is not zero")
    table = two_var_hermite_coefficients(m, n)
    product = commuting_multiply if inside_normal_symbol else normal_order_multiply
    unit = _unit_like(e1 + e2)
    pow1 = _powers(e1, m, product)
    pow2 = _powers(e2, n, product)
    out = OperatorExpr()
    for (j, k), c in table.coeffs.items():
        out = out + product(pow1[j], pow2[k]).scale(unit * c)
    return out


# ---------------------------------------------------------------------------
# vacuum


class FockKet:
    """``sum c[p, r] * ad^p bd^r |00>`` with exact coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=None):
        self._coeffs = {tuple(k): v for k, v in (coeffs or {}).items() if v}

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def is_empty(self) -> bool:
        return not self._coeffs

    def __eq__(self, other):
        if not isinstance(other, FockKet):
            return NotImplemented
        return self._coeffs == other._coeffs

    def amplitudes(self) -> dict:
        """Float amplitudes on number states ``|p, r>``.

        ``ad^p |0> = sqrt(p!) |p>``, so the amplitude is
        ``c * sqrt(p! r!)``.
        """
        return {
            (p, r): complex(c) * math.sqrt(math.factorial(p) * math.factorial(r))
            for (p, r), c in self._coeffs.items()
        }

    def __str__(self):
        if not self._coeffs:
            return "0"
        expr = OperatorExpr._wrap({NormalMonomial(p, 0, r, 0): c for (p, r), c in self._coeffs.items()})
        return f"({expr.to_text()})|00>"

    def __repr__(self):
        return f"FockKet({self})"


def apply_to_vacuum(e: OperatorExpr) -> FockKet:
    """Act on ``|00>``: every term containing ``a`` or ``b`` drops out."""
    e = _as_expr(e)
    return FockKet({(m.p, m.r): c for m, c in e._terms.items() if m.q == 0 and m.s == 0})
