"""Gaussian integrals of Hermite polynomials, exact and by quadrature.

Every exact integral here reduces to one primitive, the Gaussian moment

    int dx/sqrt(pi) exp(-(x - mu)^2) x^n = (2i)^(-n) H_n(i mu),

applied to the monomials of an integrand after a binomial shift about the
kernel centre. The closed-form right-hand sides in :func:`closed_form_rhs`
are written independently of that engine, so agreement between the two is
a real check. :func:`quadrature_check` adds a floating-point Gauss-Hermite
oracle on top.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import DegenerateParameters, NotRepresentable, QuadratureDegree
from .polynomials import binomial, check_degree, hermite_coefficients, hermite_eval
from .scalars import I, ONE, SQRT2, ZERO, ExactScalar, as_scalar, sqrt_in_ring

__all__ = [
    "integrand_quadrature",
    "CLOSED_FORM_KINDS",
    "ClosedForm",
    "GaussianIntegrandSpec",
    "QuadratureReport",
    "closed_form_rhs",
    "gauss_hermite_rule",
    "gaussian_moment",
    "hermite_definite_integral",
    "hermite_integrand",
    "integral_lhs",
    "integrand_spec",
    "integrate_gaussian_1d",
    "integrate_gaussian_2d",
    "is_degenerate",
    "power_integrand",
    "quadrature_check",
    "quadrature_condition",
    "quadrature_value",
    "random_exact_point",
    "random_float_point",
]

DEFAULT_NODES = 64
NEAR_ZERO = 1e-12

# ---------------------------------------------------------------------------
# moment engine


def gaussian_moment(n: int, mu) -> ExactScalar:
    """``int dx/sqrt(pi) exp(-(x-mu)^2) x^n`` as ``(2i)^(-n) H_n(i mu)``."""
    check_degree(n)
    mu = as_scalar(mu)
    value = (I * ExactScalar("-1/2")) ** n * hermite_eval(n, I * mu)
    if mu.is_real() and not value.is_real():
        raise AssertionError(f"moment of real centre {mu} came out complex: {value}")
    return as_scalar(value)


@lru_cache(maxsize=None)
def _central_moment(j: int) -> ExactScalar:
    return gaussian_moment(j, ZERO)


def _shifted_moment(k: int, mu: ExactScalar) -> ExactScalar:
    """``int x^k`` about centre ``mu`` from central moments by binomial shift."""
    acc = ZERO
    mu_pow = ONE
    # sum_j C(k, j) mu^(k-j) M_j, iterating j downward so mu powers build up
    for j in range(k, -1, -1):
        m = _central_moment(j)
        if m:
            acc = acc + m * mu_pow * binomial(k, j)
        mu_pow = mu_pow * mu
    return acc


def _poly_mul(p1: dict, p2: dict) -> dict:
    out: dict = {}
    for (j1, k1), c1 in p1.items():
        for (j2, k2), c2 in p2.items():
            key = (j1 + j2, k1 + k2)
            out[key] = out.get(key, ZERO) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _linear_power(f, g, k: int) -> dict:
    """``(f x + g y)^k`` as a bivariate coefficient map."""
    f, g = as_scalar(f), as_scalar(g)
    out = {}
    for j in range(k + 1):
        c = binomial(k, j) * f ** j * g ** (k - j)
        if c:
            out[(j, k - j)] = c
    return out


def hermite_integrand(n: int, f=1, g=0) -> dict:
    """Coefficient map of ``H_n(f x + g y)`` in ``x^j y^k``."""
    out: dict = {}
    for k, c in enumerate(hermite_coefficients(n).coeffs):
        if not c:
            continue
        for key, v in _linear_power(f, g, k).items():
            out[key] = out.get(key, ZERO) + v * c
    return {k: v for k, v in out.items() if v}


def power_integrand(j: int, k: int = 0, coeff=ONE) -> dict:
    return {(j, k): as_scalar(coeff)}


@dataclass(frozen=True)
class GaussianIntegrandSpec:
    """A polynomial integrand against ``exp(-(x-mu)^2)/sqrt(pi)`` per dimension.

    ``poly`` maps ``(j, k)`` to the coefficient of ``x^j y^k``; for a 1-D
    integrand every ``k`` is zero.
    """

    dims: int
    poly: dict
    mu: object = ZERO
    nu: object = ZERO

    def __post_init__(self):
        if self.dims not in (1, 2):
            raise ValueError("dims must be 1 or 2")
        if self.dims == 1 and any(k for _, k in self.poly):
            raise ValueError("1-D integrand may not contain y")

    def degree(self) -> tuple:
        return (max((j for j, _ in self.poly), default=0), max((k for _, k in self.poly), default=0))

    def times(self, other: dict) -> GaussianIntegrandSpec:
        return replace(self, poly=_poly_mul(self.poly, other))


def integrate_gaussian_1d(spec: GaussianIntegrandSpec) -> ExactScalar:
    if spec.dims != 1:
        raise ValueError("integrate_gaussian_1d needs a 1-D spec")
    mu = as_scalar(spec.mu)
    check_degree(spec.degree()[0])
    acc = ZERO
    for (j, _), c in spec.poly.items():
        acc = acc + as_scalar(c) * _shifted_moment(j, mu)
    return acc


def integrate_gaussian_2d(spec: GaussianIntegrandSpec) -> ExactScalar:
    """Iterated 1-D moment rule; the product kernel factorises."""
    if spec.dims != 2:
        raise ValueError("integrate_gaussian_2d needs a 2-D spec")
    mu, nu = as_scalar(spec.mu), as_scalar(spec.nu)
    dx, dy = spec.degree()
    check_degree(dx)
    check_degree(dy)
    mx = [_shifted_moment(j, mu) for j in range(dx + 1)]
    my = [_shifted_moment(k, nu) for k in range(dy + 1)]
    acc = ZERO
    for (j, k), c in spec.poly.items():
        acc = acc + as_scalar(c) * mx[j] * my[k]
    return acc


def hermite_definite_integral(n: int, y):
    """``int_0^y H_n(x) dx = [H_{n+1}(y) - H_{n+1}(0)] / (2(n+1))``."""
    check_degree(n + 1)
    y = y if isinstance(y, (float, complex)) else as_scalar(y)
    return (hermite_eval(n + 1, y) - hermite_eval(n + 1, 0)) / (2 * (n + 1))


def _antiderivative_value(n: int, y) -> ExactScalar:
    """Term-by-term antiderivative of the coefficient table, evaluated at ``y``."""
    y = as_scalar(y)
    acc = ZERO
    for k, c in enumerate(hermite_coefficients(n).coeffs):
        if c:
            acc = acc + y ** (k + 1) * Fraction(c, k + 1)
    return acc


# ---------------------------------------------------------------------------
# closed forms

CLOSED_FORM_KINDS = ("INT-5", "INT-8", "INT-9", "INT-C8", "INT-C12", "INT-D8", "INT-D9")

_DESCRIPTIONS = {
    "INT-5": "int_0^y H_n(x) dx = [H_{n+1}(y) - H_{n+1}(0)] / (2(n+1))",
    "INT-8": "int dx/sqrt(pi) e^{-(x-y)^2} H_n(x) = 2^n y^n",
    "INT-9": "int dx/sqrt(pi) e^{-(x-y)^2} x^n = (2i)^{-n} H_n(iy)",
    "INT-C8": "int dxdy/pi H_n((x+y)/sqrt2) e^{-(x-mu)^2-(y-nu)^2} = (sqrt2 mu + sqrt2 nu)^n",
    "INT-C12": "int dx/sqrt(pi) H_n(fx) e^{-(x-y)^2} = (1-f^2)^{n/2} H_n(fy/sqrt(1-f^2))",
    "INT-D8": "int dxdy/pi H_m(fx+gy) e^{-(x-mu)^2-(y-nu)^2} = (1-f^2-g^2)^{m/2} H_m((f mu+g nu)/sqrt(1-f^2-g^2))",
    "INT-D9": "int dxdy/pi H_m(x+y) e^{-(x-mu)^2-(y-nu)^2} = i^m H_m(-i(mu+nu))",
}


@dataclass(frozen=True)
class ClosedForm:
    """One instance of a closed-form integral formula.

    Single-centre formulas (INT-5, 8, 9, C12) use ``y``; the two-dimensional
    ones (INT-C8, D8, D9) use ``mu`` and ``nu``. ``n`` doubles as ``m``.
    """

    kind: str
    n: int
    f: object = None
    g: object = None
    y: object = 0
    mu: object = 0
    nu: object = 0

    def __post_init__(self):
        if self.kind not in CLOSED_FORM_KINDS:
            raise ValueError(f"unknown closed form {self.kind!r}")
        if self.kind in ("INT-C12", "INT-D8") and self.f is None:
            raise ValueError(f"{self.kind} needs f")
        if self.kind == "INT-D8" and self.g is None:
            raise ValueError("INT-D8 needs g")

    @property
    def description(self) -> str:
        return _DESCRIPTIONS[self.kind]

    @property
    def numeric(self) -> bool:
        return any(isinstance(v, (float, complex)) for v in (self.f, self.g, self.y, self.mu, self.nu))

    def params(self) -> dict:
        names = {"INT-5": ("n", "y"), "INT-8": ("n", "y"), "INT-9": ("n", "y"),
                 "INT-C8": ("n", "mu", "nu"), "INT-C12": ("n", "f", "y"),
                 "INT-D8": ("m", "f", "g", "mu", "nu"), "INT-D9": ("m", "mu", "nu")}[self.kind]
        out = {}
        for name in names:
            out[name] = self.n if name == "m" else getattr(self, name)
        return out

    def with_floats(self) -> ClosedForm:
        def conv(v):
            if v is None:
                return None
            return float(as_scalar(v)) if not isinstance(v, (float, complex)) else v
        return replace(self, f=conv(self.f), g=conv(self.g), y=conv(self.y), mu=conv(self.mu), nu=conv(self.nu))

    def with_exact(self) -> ClosedForm:
        def conv(v):
            if v is None or isinstance(v, ExactScalar):
                return v
            if isinstance(v, float):
                return as_scalar(Fraction(v))
            return as_scalar(v)
        return replace(self, f=conv(self.f), g=conv(self.g), y=conv(self.y), mu=conv(self.mu), nu=conv(self.nu))


def _radicand(cf: ClosedForm):
    if cf.kind == "INT-C12":
        return 1 - cf.f * cf.f
    if cf.kind == "INT-D8":
        return 1 - cf.f * cf.f - cf.g * cf.g
    return None


def is_degenerate(cf: ClosedForm) -> bool:
    """True where the formula's radical vanishes (``f^2 = 1`` or ``f^2+g^2 = 1``)."""
    rad = _radicand(cf)
    if rad is None:
        return False
    if cf.numeric:
        return abs(rad) < 1e-14
    return not as_scalar(rad)


class _ExactOps:
    @staticmethod
    def sqrt(r):
        return sqrt_in_ring(as_scalar(r))

    I = I
    SQRT2 = SQRT2

    @staticmethod
    def cast(v):
        return as_scalar(v)

    @staticmethod
    def hermite(n, z):
        return as_scalar(hermite_eval(n, z))


def _hermite_complex(n: int, z: complex) -> complex:
    h_prev, h = 1.0 + 0j, 2.0 * z
    if n == 0:
        return h_prev
    for k in range(1, n):
        h_prev, h = h, 2.0 * z * h - 2.0 * k * h_prev
    return h


class _FloatOps:
    @staticmethod
    def sqrt(r):
        return cmath.sqrt(complex(r))

    I = 1j
    SQRT2 = math.sqrt(2.0)

    @staticmethod
    def cast(v):
        return complex(v)

    hermite = staticmethod(_hermite_complex)


def closed_form_rhs(cf: ClosedForm, allow_degenerate: bool = True):
    """Right-hand side of a closed-form integral formula.

    Exact (ExactScalar) for exact parameters, ``complex`` when any parameter
    is a float. Degenerate radicals give the limiting value
    ``2^n (f y)^n`` (INT-C12) or ``2^m (f mu + g nu)^m`` (INT-D8).

    Raises
    ------
    NotRepresentable
        Exact mode with a radicand whose root is outside Q(i, sqrt2).
    DegenerateParameters
        Degenerate point with ``allow_degenerate=False``.
    """
    ops = _FloatOps if cf.numeric else _ExactOps
    n = cf.n
    check_degree(n + 1 if cf.kind == "INT-5" else n)
    c = ops.cast
    if cf.kind == "INT-5":
        y = c(cf.y)
        return (ops.hermite(n + 1, y) - ops.hermite(n + 1, c(0))) / (2 * (n + 1))
    if cf.kind == "INT-8":
        return (2 * c(cf.y)) ** n
    if cf.kind == "INT-9":
        return (2 * ops.I) ** -n * ops.hermite(n, ops.I * c(cf.y))
    if cf.kind == "INT-C8":
        return (ops.SQRT2 * c(cf.mu) + ops.SQRT2 * c(cf.nu)) ** n
    if cf.kind == "INT-D9":
        return ops.I ** n * ops.hermite(n, -ops.I * (c(cf.mu) + c(cf.nu)))
    if is_degenerate(cf):
        if not allow_degenerate:
            raise DegenerateParameters(f"{cf.kind} radical vanishes at {cf.params()}")
        if cf.kind == "INT-C12":
            return (2 * c(cf.f) * c(cf.y)) ** n
        return (2 * (c(cf.f) * c(cf.mu) + c(cf.g) * c(cf.nu))) ** n
    s = ops.sqrt(_radicand(replace(cf, f=c(cf.f), g=None if cf.g is None else c(cf.g))))
    if cf.kind == "INT-C12":
        return s ** n * ops.hermite(n, c(cf.f) * c(cf.y) / s)
    return s ** n * ops.hermite(n, (c(cf.f) * c(cf.mu) + c(cf.g) * c(cf.nu)) / s)


def integrand_spec(cf: ClosedForm) -> GaussianIntegrandSpec:
    """The Gaussian integral on the left-hand side (not defined for INT-5)."""
    n = cf.n
    half = SQRT2 * ExactScalar("1/2")
    if cf.kind == "INT-8":
        return GaussianIntegrandSpec(1, hermite_integrand(n), as_scalar(cf.y))
    if cf.kind == "INT-9":
        return GaussianIntegrandSpec(1, power_integrand(n), as_scalar(cf.y))
    if cf.kind == "INT-C12":
        return GaussianIntegrandSpec(1, hermite_integrand(n, cf.f), as_scalar(cf.y))
    if cf.kind == "INT-C8":
        return GaussianIntegrandSpec(2, hermite_integrand(n, half, half), as_scalar(cf.mu), as_scalar(cf.nu))
    if cf.kind == "INT-D8":
        return GaussianIntegrandSpec(2, hermite_integrand(n, cf.f, cf.g), as_scalar(cf.mu), as_scalar(cf.nu))
    if cf.kind == "INT-D9":
        return GaussianIntegrandSpec(2, hermite_integrand(n, 1, 1), as_scalar(cf.mu), as_scalar(cf.nu))
    raise ValueError(f"{cf.kind} is not a Gaussian integral")


def integral_lhs(cf: ClosedForm) -> ExactScalar:
    """Exact left-hand side computed by the moment engine (or antiderivative)."""
    cf = cf.with_exact()
    if cf.kind == "INT-5":
        return _antiderivative_value(cf.n, cf.y)
    spec = integrand_spec(cf)
    if spec.dims == 1:
        return integrate_gaussian_1d(spec)
    return integrate_gaussian_2d(spec)


# ---------------------------------------------------------------------------
# quadrature oracle


@lru_cache(maxsize=32)
def _rule(nodes: int):
    t, w = kernels.gauss_hermite(nodes)
    w = np.asarray(w) / math.sqrt(math.pi)
    t = np.asarray(t)
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


def gauss_hermite_rule(nodes: int = DEFAULT_NODES):
    """Nodes ``t`` and weights for ``int dt/sqrt(pi) exp(-t^2) p(t)``.

    The weights sum to one. Arrays are shared and read-only.
    """
    return _rule(int(nodes))


def _sum(values) -> float:
    return math.fsum(np.ravel(values))


def _quadrature_terms(cf: ClosedForm, nodes: int):
    """Weighted integrand samples ``w_i f(x_i)`` whose sum is the integral."""
    n = cf.n
    if n > 2 * nodes - 1:
        raise QuadratureDegree(f"degree {n} exceeds 2N-1 = {2 * nodes - 1} for N = {nodes}")
    cf = cf.with_floats()
    H = kernels.hermite_values
    if cf.kind == "INT-5":
        s, w = np.polynomial.legendre.leggauss(nodes)
        x = 0.5 * cf.y * (s + 1.0)
        return 0.5 * cf.y * w * H(n, x)
    t, w = gauss_hermite_rule(nodes)
    if cf.kind in ("INT-8", "INT-9", "INT-C12"):
        x = cf.y + t
        if cf.kind == "INT-8":
            vals = H(n, x)
        elif cf.kind == "INT-9":
            vals = x ** n
        else:
            vals = H(n, cf.f * x)
        return w * vals
    x = cf.mu + t[:, None]
    y = cf.nu + t[None, :]
    if cf.kind == "INT-C8":
        arg = (x + y) / math.sqrt(2.0)
    elif cf.kind == "INT-D8":
        arg = cf.f * x + cf.g * y
    else:
        arg = x + y
    return w[:, None] * w[None, :] * H(n, arg)


def quadrature_value(cf: ClosedForm, nodes: int = DEFAULT_NODES) -> float:
    """Left-hand side by Gauss-Hermite (Gauss-Legendre for INT-5) quadrature.

    Raises
    ------
    QuadratureDegree
        If the integrand degree exceeds ``2*nodes - 1``.
    """
    return _sum(_quadrature_terms(cf, nodes))


def quadrature_condition(cf: ClosedForm, nodes: int = DEFAULT_NODES) -> float:
    """``sum |w f| / |sum w f|``: how much cancellation the quadrature sum has."""
    terms = _quadrature_terms(cf, nodes)
    total = abs(_sum(terms))
    scale = _sum(np.abs(terms))
    if total == 0.0:
        return math.inf if scale else 1.0
    return scale / total


def integrand_quadrature(spec: GaussianIntegrandSpec, nodes: int = DEFAULT_NODES) -> complex:
    """Gauss-Hermite value of a :class:`GaussianIntegrandSpec` (tensor rule in 2-D).

    Raises
    ------
    QuadratureDegree
        If a per-variable degree exceeds ``2*nodes - 1``.
    """
    dx, dy = spec.degree()
    if max(dx, dy) > 2 * nodes - 1:
        raise QuadratureDegree(f"degree {max(dx, dy)} exceeds {2 * nodes - 1} for a {nodes}-node rule")
    if complex(spec.mu).imag or complex(spec.nu).imag:
        raise ValueError("quadrature needs real kernel centres")
    t, w = gauss_hermite_rule(nodes)
    xs = t + complex(spec.mu).real
    ys = t + complex(spec.nu).real if spec.dims == 2 else np.zeros(1)
    wy = w if spec.dims == 2 else np.ones(1)
    vals = np.zeros((len(xs), len(ys)), dtype=complex)
    for (j, k), c in spec.poly.items():
        vals += complex(c) * np.outer(xs ** j, ys ** k)
    weighted = np.outer(w, wy) * vals
    return complex(_sum(weighted.real), _sum(weighted.imag))


@dataclass
class QuadratureReport:
    closed_form: ClosedForm
    value: float
    reference: float
    abs_error: float
    rel_error: float
    criterion: str
    passed: bool
    degenerate: bool = False
    extra: dict = field(default_factory=dict)


def quadrature_check(cf: ClosedForm, tol: float = 1e-9, nodes: int = DEFAULT_NODES) -> QuadratureReport:
    """Compare quadrature with the closed form.

    Passes when the relative error is at most ``tol``; references with
    magnitude below ``1e-12`` use the absolute error against ``1e-12``.
    """
    value = quadrature_value(cf, nodes)
    ref = complex(closed_form_rhs(cf.with_floats()))
    if abs(ref.imag) > 1e-9 * max(1.0, abs(ref.real)):
        raise AssertionError(f"closed form of a real integral is complex: {ref}")
    ref = ref.real
    abs_err = abs(value - ref)
    if abs(ref) < NEAR_ZERO:
        criterion = "absolute"
        rel_err = math.inf if abs_err else 0.0
        passed = abs_err <= NEAR_ZERO
    else:
        criterion = "relative"
        rel_err = abs_err / abs(ref)
        passed = rel_err <= tol
    return QuadratureReport(cf, value, ref, abs_err, rel_err, criterion, passed, is_degenerate(cf))


# ---------------------------------------------------------------------------
# parameter sampling


def _rand_rational(rng: random.Random, num: int = 12, den: int = 7) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def _curve_point(rng: random.Random):
    """Rational ``f0`` with ``1 - f0^2`` equal to ``+-s^2`` or ``+-2 s^2``."""
    u = Fraction(rng.randint(1, 9), rng.randint(1, 9))
    branch = rng.randrange(4)
    if branch == 0:
        return (1 - u * u) / (1 + u * u)
    if branch == 1:
        return (1 + u * u) / (2 * u)
    if branch == 2:
        return (1 - 2 * u * u) / (1 + 2 * u * u)
    if 2 * u * u == 1:
        return Fraction(3)
    return (1 + 2 * u * u) / (1 - 2 * u * u)


def random_exact_point(kind: str, rng: random.Random, max_n: int = 10) -> ClosedForm:
    """A random admissible, non-degenerate exact instance of ``kind``.

    Candidate ``f`` (and ``g``) come from rational parametrisations; each is
    accepted only if :func:`sqrt_in_ring` really finds the root.
    """
    n = rng.randint(0, max_n)
    while True:
        if kind == "INT-C12":
            f = _curve_point(rng)
            cf = ClosedForm(kind, n, f=as_scalar(f), y=as_scalar(_rand_rational(rng)))
        elif kind == "INT-D8":
            f0 = _curve_point(rng)
            t = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            c, s = (1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)
            cf = ClosedForm(kind, n, f=as_scalar(c * f0), g=as_scalar(s * f0),
                            mu=as_scalar(_rand_rational(rng)), nu=as_scalar(_rand_rational(rng)))
        elif kind in ("INT-C8", "INT-D9"):
            cf = ClosedForm(kind, n, mu=as_scalar(_rand_rational(rng)), nu=as_scalar(_rand_rational(rng)))
        else:
            cf = ClosedForm(kind, n, y=as_scalar(_rand_rational(rng)))
        rad = _radicand(cf)
        if rad is not None:
            if not as_scalar(rad):
                continue
            try:
                sqrt_in_ring(rad)
            except NotRepresentable:
                continue
        return cf


_FLOAT_RANGES = {
    "INT-5": {"y": (-2.0, 2.0)},
    "INT-8": {"y": (-2.0, 2.0)},
    "INT-9": {"y": (-2.0, 2.0)},
    "INT-C8": {"mu": (-2.0, 2.0), "nu": (-2.0, 2.0)},
    "INT-C12": {"f": (-1.5, 1.5), "y": (-2.0, 2.0)},
    "INT-D8": {"f": (-1.2, 1.2), "g": (-1.2, 1.2), "mu": (-2.0, 2.0), "nu": (-2.0, 2.0)},
    "INT-D9": {"mu": (-2.0, 2.0), "nu": (-2.0, 2.0)},
}

MAX_CONDITION = 1e4


def random_float_point(kind: str, rng: random.Random, max_n: int = 10,
                       max_condition: float = MAX_CONDITION) -> ClosedForm:
    """A random float instance of ``kind``.

    Points within 0.05 of a vanishing radical are redrawn, as are points
    whose quadrature sum cancels by more than ``max_condition`` (there a
    double-precision sum cannot resolve a 1e-9 relative error at all).
    """
    n = rng.randint(0, max_n)
    while True:
        vals = {name: rng.uniform(lo, hi) for name, (lo, hi) in _FLOAT_RANGES[kind].items()}
        cf = ClosedForm(kind, n, **vals)
        rad = _radicand(cf)
        if rad is not None and abs(rad) < 0.05:
            continue
        if quadrature_condition(cf) > max_condition:
            continue
        return cf
