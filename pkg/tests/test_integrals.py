import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opherm.errors import QuadratureDegree
from opherm.integrals import (
    CLOSED_FORM_KINDS,
    ClosedForm,
    GaussianIntegrandSpec,
    closed_form_rhs,
    gauss_hermite_rule,
    gaussian_moment,
    hermite_definite_integral,
    hermite_integrand,
    integral_lhs,
    integrand_quadrature,
    integrate_gaussian_1d,
    integrate_gaussian_2d,
    is_degenerate,
    power_integrand,
    quadrature_check,
    random_exact_point,
    random_float_point,
)
from opherm.polynomials import binomial, hermite_coefficients
from opherm.scalars import ONE, SQRT2, as_scalar

Q = lambda v: as_scalar(Fraction(v))  # noqa: E731
rationals = st.fractions(min_value=-4, max_value=4, max_denominator=7)


# -- moments -------------------------------------------------------------------------


def test_moment_examples():
    y = Q("3/7")
    assert gaussian_moment(0, y) == ONE
    assert gaussian_moment(1, y) == y
    assert gaussian_moment(2, y) == y * y + Q("1/2")


@pytest.mark.parametrize("n", [0, 1, 2, 3, 6, 9])
@pytest.mark.parametrize("mu", ["0", "1/2", "-5/3"])
def test_moment_against_mpmath_quadrature(n, mu):
    mpmath = pytest.importorskip("mpmath")
    m = Fraction(mu)
    with mpmath.workdps(30):
        c = mpmath.mpf(m.numerator) / m.denominator
        ref = mpmath.quad(lambda x: mpmath.exp(-(x - c) ** 2) * x ** n, [-mpmath.inf, c, mpmath.inf]) / mpmath.sqrt(mpmath.pi)
    assert float(gaussian_moment(n, Q(mu))) == pytest.approx(float(ref), rel=1e-14, abs=1e-14)


@given(st.integers(0, 20), rationals)
@settings(max_examples=60, deadline=None)
def test_moment_is_real(n, mu):
    v = gaussian_moment(n, as_scalar(mu))
    assert v.i1 == 0 and v.i2 == 0 and v.r2 == 0


# -- 1-D and 2-D engine ---------------------------------------------------------------


def test_1d_examples():
    assert integrate_gaussian_1d(GaussianIntegrandSpec(1, hermite_integrand(2), Q(1))) == Q(4)
    spec = GaussianIntegrandSpec(1, hermite_integrand(2, f=Q("3/5")), Q(0))
    assert integrate_gaussian_1d(spec) == Q("-32/25")
    assert integrate_gaussian_1d(GaussianIntegrandSpec(1, power_integrand(0), Q(5))) == ONE


def test_2d_examples():
    h = SQRT2 * Q("1/2")
    spec = GaussianIntegrandSpec(2, hermite_integrand(1, f=h, g=h), Q(1), Q(1))
    assert integrate_gaussian_2d(spec) == 2 * SQRT2
    spec = GaussianIntegrandSpec(2, hermite_integrand(1, f=1, g=1), Q(2), Q(3))
    assert integrate_gaussian_2d(spec) == Q(10)
    assert integrate_gaussian_2d(GaussianIntegrandSpec(2, power_integrand(0, 0), Q(2), Q(3))) == ONE


@pytest.mark.parametrize("n", range(0, 13))
def test_moment_closed_form_duality(n):
    for y in ("0", "1", "-2/3", "7/5"):
        spec = GaussianIntegrandSpec(1, hermite_integrand(n), Q(y))
        assert integrate_gaussian_1d(spec) == Q(2) ** n * Q(y) ** n


@given(st.lists(rationals, min_size=1, max_size=7), rationals)
@settings(max_examples=40, deadline=None)
def test_translation(coeffs, mu):
    mu = as_scalar(mu)
    poly = {(j, 0): as_scalar(c) for j, c in enumerate(coeffs) if c}
    shifted = {}
    # p(x + mu) expanded by the binomial theorem
    for (j, _), c in poly.items():
        for k in range(j + 1):
            key = (k, 0)
            shifted[key] = shifted.get(key, as_scalar(0)) + c * binomial(j, k) * mu ** (j - k)
    lhs = integrate_gaussian_1d(GaussianIntegrandSpec(1, poly, mu))
    rhs = integrate_gaussian_1d(GaussianIntegrandSpec(1, shifted, as_scalar(0)))
    assert lhs == rhs


def test_spec_validation():
    with pytest.raises(ValueError):
        GaussianIntegrandSpec(1, {(0, 1): ONE})
    with pytest.raises(ValueError):
        GaussianIntegrandSpec(3, {})


# -- definite integral ----------------------------------------------------------------


def test_definite_integral_examples():
    assert hermite_definite_integral(1, 1) == ONE
    assert hermite_definite_integral(0, 3) == Q(3)
    assert hermite_definite_integral(2, 0) == 0


@pytest.mark.parametrize("n", range(0, 15))
def test_antiderivative(n):
    # d/dy [H_{n+1}(y) - H_{n+1}(0)] / (2(n+1)) == H_n(y), coefficient by coefficient
    d = hermite_coefficients(n + 1).derivative_coeffs()
    assert tuple(Fraction(c, 2 * (n + 1)) for c in d) == hermite_coefficients(n).coeffs
    y = Q("2/3")
    coeffs = hermite_coefficients(n).coeffs
    integral = sum((Fraction(c, k + 1) * Fraction(2, 3) ** (k + 1) for k, c in enumerate(coeffs)), Fraction(0))
    assert hermite_definite_integral(n, y) == integral


# -- closed forms ---------------------------------------------------------------------


def test_closed_form_examples():
    assert closed_form_rhs(ClosedForm("INT-8", 3, y=Q(2))) == Q(64)
    assert closed_form_rhs(ClosedForm("INT-C12", 2, f=Q("3/5"), y=Q(0))) == Q("-32/25")
    cf = ClosedForm("INT-D8", 1, f=Q("2/3"), g=Q("2/3"), mu=Q(3), nu=Q(3))
    assert closed_form_rhs(cf) == Q(8) == integral_lhs(cf)


@pytest.mark.parametrize("kind", CLOSED_FORM_KINDS)
def test_closed_forms_equal_engine(kind):
    rng = random.Random(kind)
    for _ in range(8):
        cf = random_exact_point(kind, rng, max_n=8)
        assert closed_form_rhs(cf) == integral_lhs(cf), cf


def test_degenerate_limits():
    cf = ClosedForm("INT-C12", 3, f=Q(1), y=Q("1/2"))
    assert is_degenerate(cf)
    assert closed_form_rhs(cf) == Q(2) ** 3 * Q("1/2") ** 3 == integral_lhs(cf)
    cf = ClosedForm("INT-D8", 2, f=Q("3/5"), g=Q("4/5"), mu=Q(1), nu=Q(-2))
    assert is_degenerate(cf)
    assert closed_form_rhs(cf) == integral_lhs(cf)


def test_unknown_kind():
    with pytest.raises(ValueError):
        ClosedForm("INT-99", 1)


# -- quadrature -----------------------------------------------------------------------


def test_rule_normalised():
    t, w = gauss_hermite_rule(64)
    assert abs(sum(w) - 1.0) < 1e-14
    assert not t.flags.writeable


def test_quadrature_examples():
    rep = quadrature_check(ClosedForm("INT-8", 4, y=1.3), tol=1e-9)
    assert rep.passed and rep.rel_error <= 1e-9
    rep = quadrature_check(ClosedForm("INT-D9", 3, mu=0.5, nu=-0.5), tol=1e-9)
    assert rep.passed and rep.reference == 0 and rep.criterion == "absolute"
    with pytest.raises(QuadratureDegree):
        quadrature_check(ClosedForm("INT-8", 9, y=0.3), nodes=4)


@pytest.mark.parametrize("kind", CLOSED_FORM_KINDS)
def test_float_points_pass(kind):
    rng = random.Random(kind + "float")
    for _ in range(10):
        cf = random_float_point(kind, rng)
        assert quadrature_check(cf).passed, cf


def test_integrand_quadrature():
    spec = GaussianIntegrandSpec(2, {(3, 0): ONE, (1, 2): Q(2)}, Q("1/2"), Q("-1/3"))
    exact = complex(integrate_gaussian_2d(spec))
    assert abs(integrand_quadrature(spec) - exact) < 1e-12
    with pytest.raises(QuadratureDegree):
        integrand_quadrature(GaussianIntegrandSpec(1, {(10, 0): ONE}), nodes=4)

