import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opherm.errors import NotRepresentable
from opherm.scalars import (
    I,
    ONE,
    SQRT2,
    ZERO,
    ExactScalar,
    as_scalar,
    ring_mul,
    ring_pow,
    sqrt_in_ring,
    to_float_complex,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(ExactScalar, fractions, fractions, fractions, fractions)


def S(*parts):
    return ExactScalar(*parts)


# -- ring_mul -----------------------------------------------------------------


def test_conjugate_product():
    assert ring_mul(ONE + SQRT2, ONE - SQRT2) == as_scalar(-1)


def test_i_sqrt2_squared():
    x = I * SQRT2
    assert ring_mul(x, x) == as_scalar(-2)


def test_mixed_product_against_complex_doubles():
    x = S(Fraction(1, 2), 0, 1, 0)
    y = S(2, 0, 0, -1)
    got = ring_mul(x, y)
    assert got == S(1, 1, 2, Fraction(-1, 2))
    ref = complex(0.5, 1.0) * complex(2.0, -2 ** 0.5)
    assert abs(to_float_complex(got) - ref) < 1e-14


# -- ring_pow -----------------------------------------------------------------


def test_powers():
    assert ring_pow(I, 4) == ONE
    assert ring_pow(SQRT2, 3) == S(0, 2)
    assert ring_pow(ONE + I, 2) == S(0, 0, 2)


@given(scalars, st.integers(0, 9))
@settings(max_examples=60, deadline=None)
def test_ring_pow_matches_repeated_multiplication(x, n):
    acc = ONE
    for _ in range(n):
        acc = ring_mul(acc, x)
    assert ring_pow(x, n) == acc


# -- sqrt_in_ring -------------------------------------------------------------


@pytest.mark.parametrize(
    "r, expected",
    [
        (Fraction(9, 25), S(Fraction(3, 5))),
        (Fraction(2, 9), S(0, Fraction(1, 3))),
        (Fraction(-16, 25), S(0, 0, Fraction(4, 5))),
        (Fraction(0), ZERO),
        (Fraction(-2), S(0, 0, 0, 1)),
    ],
)
def test_sqrt_in_ring(r, expected):
    assert sqrt_in_ring(r) == expected


@pytest.mark.parametrize("r", [3, Fraction(1, 3), Fraction(-3, 4), 6])
def test_sqrt_not_representable(r):
    with pytest.raises(NotRepresentable):
        sqrt_in_ring(r)


@given(fractions)
@settings(max_examples=200, deadline=None)
def test_sqrt_squares_back(r):
    try:
        s = sqrt_in_ring(r)
    except NotRepresentable:
        return
    assert s * s == as_scalar(r)


@given(st.fractions(min_value=-50, max_value=50, max_denominator=30), st.sampled_from([1, 2, -1, -2]))
@settings(max_examples=100, deadline=None)
def test_sqrt_succeeds_on_constructed_squares(q, k):
    r = k * q * q
    s = sqrt_in_ring(r)
    assert s * s == as_scalar(r)


# -- floats -------------------------------------------------------------------


def test_to_float_complex_examples():
    assert abs(to_float_complex(ONE + SQRT2) - 2.414213562373095) < 1e-15
    assert abs(to_float_complex(I * SQRT2) - 1.4142135623730951j) < 1e-15
    assert to_float_complex(ZERO) == 0


def test_to_float_is_correctly_rounded_under_cancellation():
    # 665857/470832 approximates sqrt2 to 1e-12; the difference is tiny
    mpmath = pytest.importorskip("mpmath")
    x = S(Fraction(-665857, 470832), 1)
    with mpmath.workdps(60):
        ref = float(mpmath.sqrt(2) - mpmath.mpf(665857) / 470832)
    assert to_float_complex(x).real == ref


# -- ring axioms ----------------------------------------------------------------


@given(scalars, scalars, scalars)
@settings(max_examples=100, deadline=None)
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    assert x + ZERO == x and x * ONE == x
    assert x - x == ZERO


@given(scalars)
@settings(max_examples=100, deadline=None)
def test_norm_is_real(x):
    n = ring_mul(x, x.conj())
    assert n.i1 == 0 and n.i2 == 0


@given(scalars.filter(lambda v: not v.is_zero()))
@settings(max_examples=100, deadline=None)
def test_inverse(x):
    assert x * x.inverse() == ONE
    assert x / x == ONE


@given(scalars, scalars)
@settings(max_examples=100, deadline=None)
def test_complex_homomorphism(x, y):
    got = to_float_complex(x * y)
    ref = complex(x) * complex(y)
    assert cmath.isclose(got, ref, rel_tol=1e-12, abs_tol=1e-12)


@given(scalars)
@settings(max_examples=100, deadline=None)
def test_text_is_deterministic_and_hash_consistent(x):
    y = ExactScalar(*x.components)
    assert x == y and hash(x) == hash(y)
    assert x.to_text() == y.to_text()


def test_rational_hash_matches_fraction():
    assert hash(as_scalar(Fraction(3, 7))) == hash(Fraction(3, 7))
    assert as_scalar(Fraction(3, 7)) == Fraction(3, 7)


@pytest.mark.parametrize(
    "x, text",
    [
        (ZERO, "0"),
        (ONE, "1"),
        (SQRT2, "sqrt2"),
        (I, "i"),
        (I * SQRT2, "i*sqrt2"),
        (S(Fraction(1, 2), -3, 0, Fraction(-2, 3)), "1/2 - 3*sqrt2 - 2/3*i*sqrt2"),
    ],
)
def test_to_text(x, text):
    assert x.to_text() == text


def test_as_scalar_parses_strings():
    assert as_scalar("3/5") == S(Fraction(3, 5))
    assert as_scalar(-4) == S(-4)
