"""Exact single- and two-variable Hermite polynomials.

``H_n`` are the physicists' polynomials with generating function
``exp(-t^2 + 2 t z)``; ``H_{m,n}(x, y)`` are the two-variable polynomials
with generating function ``exp(-t t' + t x + t' y)``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import numpy as np

from . import kernels
from .errors import DegreeTooLarge

__all__ = [
    "DEFAULT_DEGREE_GUARD",
    "HARD_DEGREE_CAP",
    "HermitePoly",
    "TwoVarHermite",
    "binomial",
    "check_degree",
    "get_degree_guard",
    "set_degree_guard",
    "hermite_coefficients",
    "hermite_eval",
    "two_var_hermite_coefficients",
    "two_var_hermite_eval",
    "wavefunction_eval",
]

DEFAULT_DEGREE_GUARD = 64
HARD_DEGREE_CAP = 256
WAVEFUNCTION_MAX_N = 32

_guard = DEFAULT_DEGREE_GUARD


def get_degree_guard() -> int:
    return _guard


def set_degree_guard(n: int) -> int:
    """Set the degree guard; returns the previous value."""
    global _guard
    if not 0 <= n <= HARD_DEGREE_CAP:
        raise ValueError(f"degree guard must lie in [0, {HARD_DEGREE_CAP}]")
    old, _guard = _guard, n
    return old


def check_degree(n: int, what: str = "degree") -> None:
    if n < 0:
        raise ValueError(f"{what} must be nonnegative, got {n}")
    if n > _guard:
        raise DegreeTooLarge(f"{what} {n} exceeds the degree guard {_guard}")


# Pascal triangle rows, extended on demand; appends are idempotent.
_pascal = [[1]]
_pascal_lock = threading.Lock()


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    if n >= len(_pascal):
        with _pascal_lock:
            while len(_pascal) <= n:
                prev = _pascal[-1]
                _pascal.append([1] + [prev[j - 1] + prev[j] for j in range(1, len(prev))] + [1])
    return _pascal[n][k]


@dataclass(frozen=True)
class HermitePoly:
    """``H_n(z) = sum(coeffs[k] * z**k)``."""

    degree: int
    coeffs: tuple

    def __call__(self, z):
        return _horner(self.coeffs, z)

    def derivative_coeffs(self) -> tuple:
        return tuple(k * c for k, c in enumerate(self.coeffs))[1:] or (0,)

    def __str__(self):
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            elif k == 1:
                body = "z" if mag == 1 else f"{mag}*z"
            else:
                body = f"z^{k}" if mag == 1 else f"{mag}*z^{k}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


@lru_cache(maxsize=None)
def _hermite_table(n: int) -> tuple:
    if n == 0:
        return (1,)
    if n == 1:
        return (0, 2)
    prev, cur = _hermite_table(n - 2), _hermite_table(n - 1)
    # H_n = 2z H_{n-1} - 2(n-1) H_{n-2}
    out = [0] * (n + 1)
    for k, c in enumerate(cur):
        out[k + 1] += 2 * c
    for k, c in enumerate(prev):
        out[k] -= 2 * (n - 1) * c
    return tuple(out)


def hermite_coefficients(n: int) -> HermitePoly:
    """Integer coefficients of ``H_n`` from the three-term recurrence."""
    check_degree(n)
    for k in range(0, n, 32):
        # warm the cache bottom-up so recursion depth stays small
        _hermite_table(k)
    return HermitePoly(n, _hermite_table(n))


def _horner(coeffs, z):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def hermite_eval(n: int, z):
    """``H_n(z)``; exact for ExactScalar/Fraction/int ``z``, float for floats."""
    return _horner(hermite_coefficients(n).coeffs, z)


@dataclass(frozen=True)
class TwoVarHermite:
    """``H_{m,n}(x, y) = sum(coeffs[(j, k)] * x**j * y**k)``."""

    m: int
    n: int
    coeffs: dict

    def __call__(self, x, y):
        acc = 0
        for (j, k), c in self.coeffs.items():
            acc = acc + c * x**j * y**k
        return acc

    def __str__(self):
        items = sorted(self.coeffs.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))
        parts = []
        for (j, k), c in items:
            factors = []
            if j:
                factors.append("x" if j == 1 else f"x^{j}")
            if k:
                factors.append("y" if k == 1 else f"y^{k}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


@lru_cache(maxsize=None)
def _two_var_table(m: int, n: int) -> tuple:
    fm, fn = factorial(m), factorial(n)
    out = []
    for ell in range(min(m, n) + 1):
        c = fm * fn // (factorial(ell) * factorial(m - ell) * factorial(n - ell))
        out.append(((m - ell, n - ell), -c if ell % 2 else c))
    return tuple(out)


def two_var_hermite_coefficients(m: int, n: int) -> TwoVarHermite:
    """Closed-form coefficients of ``H_{m,n}``.

    Entry ``(m-l, n-l)`` is ``(-1)^l m! n! / (l! (m-l)! (n-l)!)``.
    """
    check_degree(m)
    check_degree(n)
    return TwoVarHermite(m, n, dict(_two_var_table(m, n)))


def two_var_hermite_eval(m: int, n: int, x, y):
    return two_var_hermite_coefficients(m, n)(x, y)


def wavefunction_eval(n: int, x):
    """Oscillator number-state wavefunction ``psi_n(x)`` in double precision.

    Uses the orthonormal recurrence, which stays finite where ``H_n(x)``
    and ``exp(-x^2/2)`` separately would lose range.
    """
    check_degree(n)
    if n > WAVEFUNCTION_MAX_N:
        raise DegreeTooLarge(f"wavefunction order {n} exceeds {WAVEFUNCTION_MAX_N}")
    values = kernels.wavefunction_values(n, np.asarray(x, dtype=float))
    if np.ndim(x) == 0:
        return float(values)
    return values
