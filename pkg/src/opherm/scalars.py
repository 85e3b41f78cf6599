"""Exact arithmetic in the ring Q(i, sqrt2).

A value is stored as four rationals ``(r1, r2, i1, i2)`` meaning
``r1 + r2*sqrt2 + i1*i + i2*i*sqrt2``. Since ``{1, sqrt2, i, i*sqrt2}`` is a
basis of Q(i, sqrt2) over Q the representation is unique, so equality and
hashing are component-wise.

Rationals are :class:`fractions.Fraction` (``BigRational``), which already
keeps numerator/denominator reduced with a positive denominator.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from .errors import NotRepresentable

__all__ = [
    "BigRational",
    "ExactScalar",
    "ZERO",
    "ONE",
    "I",
    "SQRT2",
    "as_scalar",
    "ring_mul",
    "ring_pow",
    "sqrt_in_ring",
    "to_float_complex",
]

BigRational = Fraction

_Q0 = Fraction(0)
_Q1 = Fraction(1)


def _q(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected a rational, got {type(value).__name__}")


def _qs_mul(x1, x2, y1, y2):
    """(x1 + x2*sqrt2)(y1 + y2*sqrt2) in Q(sqrt2), skipping zero work."""
    if not x2 and not y2:
        return x1 * y1, _Q0
    if not x2:
        return x1 * y1, x1 * y2
    if not y2:
        return x1 * y1, x2 * y1
    return x1 * y1 + 2 * x2 * y2, x1 * y2 + x2 * y1


class ExactScalar:
    """Immutable element of Q(i, sqrt2)."""

    __slots__ = ("r1", "r2", "i1", "i2", "_hash")

    def __init__(self, r1=0, r2=0, i1=0, i2=0):
        self.r1 = _q(r1)
        self.r2 = _q(r2)
        self.i1 = _q(i1)
        self.i2 = _q(i2)
        self._hash = None

    @classmethod
    def _raw(cls, r1, r2, i1, i2):
        obj = object.__new__(cls)
        obj.r1 = r1
        obj.r2 = r2
        obj.i1 = i1
        obj.i2 = i2
        obj._hash = None
        return obj

    # -- structure -----------------------------------------------------

    @property
    def components(self):
        return (self.r1, self.r2, self.i1, self.i2)

    def is_zero(self) -> bool:
        return not (self.r1 or self.r2 or self.i1 or self.i2)

    def is_real(self) -> bool:
        return not (self.i1 or self.i2)

    def is_rational(self) -> bool:
        return not (self.r2 or self.i1 or self.i2)

    def __bool__(self):
        return not self.is_zero()

    def conj(self) -> ExactScalar:
        return ExactScalar._raw(self.r1, self.r2, -self.i1, -self.i2)

    def real_part(self) -> ExactScalar:
        return ExactScalar._raw(self.r1, self.r2, _Q0, _Q0)

    def imag_part(self) -> ExactScalar:
        return ExactScalar._raw(self.i1, self.i2, _Q0, _Q0)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return ExactScalar._raw(self.r1 + o.r1, self.r2 + o.r2, self.i1 + o.i1, self.i2 + o.i2)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._raw(-self.r1, -self.r2, -self.i1, -self.i2)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return ExactScalar._raw(self.r1 - o.r1, self.r2 - o.r2, self.i1 - o.i1, self.i2 - o.i2)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, int):
            return ExactScalar._raw(self.r1 * other, self.r2 * other, self.i1 * other, self.i2 * other)
        o = _coerce(other)
        if o is None:
            return NotImplemented
        # (A + Bi)(C + Di) with A, B, C, D in Q(sqrt2)
        a1, a2, b1, b2 = self.r1, self.r2, self.i1, self.i2
        c1, c2, d1, d2 = o.r1, o.r2, o.i1, o.i2
        self_real = not (b1 or b2)
        other_real = not (d1 or d2)
        ac1, ac2 = _qs_mul(a1, a2, c1, c2)
        if self_real and other_real:
            return ExactScalar._raw(ac1, ac2, _Q0, _Q0)
        if self_real:
            ad1, ad2 = _qs_mul(a1, a2, d1, d2)
            return ExactScalar._raw(ac1, ac2, ad1, ad2)
        if other_real:
            bc1, bc2 = _qs_mul(b1, b2, c1, c2)
            return ExactScalar._raw(ac1, ac2, bc1, bc2)
        bd1, bd2 = _qs_mul(b1, b2, d1, d2)
        ad1, ad2 = _qs_mul(a1, a2, d1, d2)
        bc1, bc2 = _qs_mul(b1, b2, c1, c2)
        return ExactScalar._raw(ac1 - bd1, ac2 - bd2, ad1 + bc1, ad2 + bc2)

    __rmul__ = __mul__

    def inverse(self) -> ExactScalar:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(i, sqrt2)")
        # 1/(A + Bi) = (A - Bi) / (A^2 + B^2), then rationalise u + v*sqrt2
        a1, a2, b1, b2 = self.r1, self.r2, self.i1, self.i2
        aa1, aa2 = _qs_mul(a1, a2, a1, a2)
        bb1, bb2 = _qs_mul(b1, b2, b1, b2)
        u, v = aa1 + bb1, aa2 + bb2
        norm = u * u - 2 * v * v
        inv1, inv2 = u / norm, -v / norm
        n1, n2 = _qs_mul(a1, a2, inv1, inv2)
        m1, m2 = _qs_mul(-b1, -b2, inv1, inv2)
        return ExactScalar._raw(n1, n2, m1, m2)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if o.is_rational():
            if not o.r1:
                raise ZeroDivisionError("division by zero in Q(i, sqrt2)")
            d = o.r1
            return ExactScalar._raw(self.r1 / d, self.r2 / d, self.i1 / d, self.i2 / d)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ring_pow(self.inverse(), -n)
        return ring_pow(self, n)

    # -- comparison / hashing -----------------------------------------

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return (self.r1 == o.r1 and self.r2 == o.r2 and self.i1 == o.i1 and self.i2 == o.i2)

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.r1)
            else:
                self._hash = hash(self.components)
        return self._hash

    # -- conversion ----------------------------------------------------

    def __complex__(self):
        return to_float_complex(self)

    def __float__(self):
        if not self.is_real():
            raise TypeError("cannot convert a non-real ExactScalar to float")
        return _real_float(self.r1, self.r2)

    def __repr__(self):
        return f"ExactScalar({self})"

    def __str__(self):
        return self.to_text()

    def to_text(self) -> str:
        """Canonical text ``p/q + r/s*sqrt2 + t/u*i + v/w*i*sqrt2``."""
        parts = []
        for value, unit in ((self.r1, ""), (self.r2, "sqrt2"), (self.i1, "i"), (self.i2, "i*sqrt2")):
            if not value:
                continue
            sign = "-" if value < 0 else "+"
            mag = -value if value < 0 else value
            if not unit:
                body = str(mag)
            elif mag == 1:
                body = unit
            else:
                body = f"{mag}*{unit}"
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_latex(self) -> str:
        parts = []
        for value, unit in ((self.r1, ""), (self.r2, r"\sqrt{2}"), (self.i1, "i"), (self.i2, r"i\sqrt{2}")):
            if not value:
                continue
            sign = "-" if value < 0 else "+"
            mag = abs(value)
            if mag.denominator == 1:
                num = "" if (mag == 1 and unit) else str(mag.numerator)
            else:
                num = rf"\frac{{{mag.numerator}}}{{{mag.denominator}}}"
            parts.append((sign, num + unit))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _coerce(value):
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return ExactScalar._raw(Fraction(value), _Q0, _Q0, _Q0)
    if isinstance(value, Rational):
        return ExactScalar._raw(Fraction(value), _Q0, _Q0, _Q0)
    return None


def as_scalar(value) -> ExactScalar:
    """Coerce an int, Fraction, ``"p/q"`` string or ExactScalar."""
    if isinstance(value, str):
        value = Fraction(value)
    out = _coerce(value)
    if out is None:
        raise TypeError(f"cannot interpret {value!r} as an exact scalar")
    return out


ZERO = ExactScalar()
ONE = ExactScalar(1)
I = ExactScalar(0, 0, 1)
SQRT2 = ExactScalar(0, 1)


def ring_mul(x: ExactScalar, y: ExactScalar) -> ExactScalar:
    return as_scalar(x) * as_scalar(y)


def ring_pow(x, n: int) -> ExactScalar:
    """``x**n`` by repeated squaring; ``x**0`` is one."""
    if n < 0:
        raise ValueError("ring_pow needs n >= 0")
    base = as_scalar(x)
    result = ONE
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def _rational_sqrt(r: Fraction):
    """Exact square root of a nonnegative rational, or None."""
    num, den = r.numerator, r.denominator
    sn, sd = math.isqrt(num), math.isqrt(den)
    if sn * sn == num and sd * sd == den:
        return Fraction(sn, sd)
    return None


def sqrt_in_ring(r) -> ExactScalar:
    """Principal square root of a rational inside Q(i, sqrt2).

    Succeeds when ``|r|`` is ``s**2`` or ``2*s**2`` for a rational ``s``;
    a negative ``r`` gives a positive imaginary result.

    Raises
    ------
    NotRepresentable
        If the root is not in the ring (e.g. ``sqrt(3)``), or ``r`` is not
        rational to begin with.
    """
    if isinstance(r, ExactScalar):
        if not r.is_rational():
            raise NotRepresentable(f"radicand {r} is not rational")
        r = r.r1
    r = _q(r)
    mag = -r if r < 0 else r
    s = _rational_sqrt(mag)
    if s is not None:
        root = ExactScalar._raw(s, _Q0, _Q0, _Q0)
    else:
        s = _rational_sqrt(mag / 2)
        if s is None:
            raise NotRepresentable(f"sqrt({r}) is not in Q(i, sqrt2)")
        root = ExactScalar._raw(_Q0, s, _Q0, _Q0)
    if r < 0:
        root = root * I
    return root


def _real_float(a: Fraction, b: Fraction) -> float:
    """Float of ``a + b*sqrt2`` within a couple of ulp, even under cancellation."""
    if not b:
        return float(a)
    if not a:
        return float(b) * math.sqrt(2.0)
    bits = 160
    sign = 1 if b > 0 else -1
    while True:
        scale = 1 << bits
        t = 2 * b * b * scale * scale
        root = math.isqrt(t.numerator // t.denominator)
        approx = a + sign * Fraction(root, scale)
        # truncation error < 2/scale; stop once it is far below one ulp
        if abs(approx) * scale > 1 << 72 or bits > 1 << 16:
            return float(approx)
        bits *= 2


def to_float_complex(x) -> complex:
    """Double-precision complex value of an ExactScalar."""
    x = as_scalar(x)
    return complex(_real_float(x.r1, x.r2), _real_float(x.i1, x.i2))
