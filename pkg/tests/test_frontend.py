import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opherm.boson import OperatorExpr, hermite_of_operator, make_linear_form, normal_order_multiply
from opherm.errors import DegreeTooLarge, ExprSyntaxError, NonCommutingArguments, NonLinearHermiteArgument
from opherm.frontend import (
    elaborate,
    elaborate_integrand,
    parse_expression,
    parse_integrand,
    parse_scalar,
    render_expression,
)
from opherm.scalars import I, ONE, SQRT2, ExactScalar, as_scalar


def E(text):
    return elaborate(parse_expression(text))


def mono(p=0, q=0, r=0, s=0, c=1):
    return OperatorExpr.monomial(p, q, r, s, as_scalar(c))


def test_parse_examples():
    tree = parse_expression("2*X^2 - 1")
    assert tree.op == "sum" and tree.ints == (1, -1)
    assert E("H(2, X) - (2*ad^2 + 4*ad*a + 2*a^2)").is_zero()
    with pytest.raises(NonLinearHermiteArgument):
        parse_expression("H(2, X^2)")


def test_elaborate_examples():
    assert E("a*ad") == mono(1, 1) + mono()
    assert E(":(a+ad)^2:") == mono(2) + mono(1, 1, c=2) + mono(q=2)
    assert E("H(1,Px)") == OperatorExpr.monomial(1, 0, 0, 0, I * SQRT2) - OperatorExpr.monomial(0, 1, 0, 0, I * SQRT2)


def test_render_examples():
    assert render_expression(OperatorExpr()) == "0"
    assert render_expression(hermite_of_operator(2, make_linear_form("X"))) == "2*ad^2 + 4*ad*a + 2*a^2"
    assert render_expression(E("H(2, X)"), "latex") == r"2 a^{\dagger 2} + 4 a^{\dagger} a + 2 a^{2}"


def test_precedence():
    tree = parse_expression("a+b*bd^2")
    assert tree.op == "sum"
    left, right = tree.args
    assert left.op == "sym" and right.op == "mul"
    assert right.args[1].op == "pow" and right.args[1].ints == (2,)
    assert E("a+b*bd^2") == mono(q=1) + normal_order_multiply(mono(s=1), mono(r=2))


def test_whitespace_insensitive():
    assert E(" H ( 2 ,X )- 1") == E("H(2,X)-1")


def test_normal_symbol_semantics():
    assert E(":a*ad:") == mono(1, 1)
    assert E(":H(2, X):") == E("H(2, X)") - E("2")
    assert E("H2(1, 1, a+bd, ad+b)") == E(":(a+bd)*(ad+b):")
    with pytest.raises(NonCommutingArguments):
        E("H2(1, 1, a, ad)")
    assert E(":H2(1, 1, a, ad):") == E("ad*a - 1")


def test_unary_and_constants():
    assert E("-a") == -mono(q=1)
    assert E("-(1/2 + i)*ad") == OperatorExpr.monomial(1, 0, 0, 0, -(as_scalar(Fraction(1, 2)) + I))
    assert E("sqrt2^2") == mono(c=2)


def test_hermite_argument_forms():
    assert E("H(1, 2*(X - Y)*3)") == E("12*X - 12*Y")
    for bad in ("H(2, X*Y)", "H(2, X + 1)", "H(2, 3)", "H(1, H(2, X))"):
        with pytest.raises(NonLinearHermiteArgument):
            parse_expression(bad)
    assert E("H(1, H(1, X))") == E("4*X")


@pytest.mark.parametrize(
    "text, pos",
    [("a + * b", 4), ("(a", 2), ("a)", 1), ("2 % a", 2), ("H(x, a)", 2), ("X^a", 2), ("1/0", 0), ("zz", 0), ("", 0)],
)
def test_syntax_errors(text, pos):
    with pytest.raises(ExprSyntaxError) as info:
        parse_expression(text)
    assert info.value.position == pos
    assert isinstance(info.value.expected, tuple)


def test_depth_limit():
    with pytest.raises(ExprSyntaxError):
        parse_expression("(" * 500 + "a" + ")" * 500)
    assert E("(" * 50 + "a" + ")" * 50) == mono(q=1)


def test_long_flat_expressions():
    assert E("+".join(["a"] * 3000)) == mono(q=1, c=3000)
    assert E("*".join(["ad"] * 40)) == mono(p=40)


def test_degree_guard():
    with pytest.raises(DegreeTooLarge):
        E("X^1000")
    with pytest.raises(DegreeTooLarge):
        E("H(1000, X)")


@given(st.text(max_size=60))
@settings(max_examples=300, deadline=None)
def test_parser_total_on_text(text):
    try:
        parse_expression(text)
    except ExprSyntaxError as exc:
        assert 0 <= exc.position <= len(text)


@given(st.binary(max_size=60))
@settings(max_examples=200, deadline=None)
def test_parser_total_on_bytes(data):
    text = data.decode("latin-1")
    try:
        parse_expression(text)
    except ExprSyntaxError as exc:
        assert 0 <= exc.position <= len(text)


_ALPHABET = ["a", "ad", "b", "bd", "X", "Y", "P", "i", "sqrt2", "1/2", "3", "+", "-", "*", "^2", "(", ")", ":", " "]


@given(st.lists(st.sampled_from(_ALPHABET), max_size=25))
@settings(max_examples=300, deadline=None)
def test_parser_total_on_token_soup(tokens):
    try:
        parse_expression("".join(tokens))
    except ExprSyntaxError:
        pass


def _random_scalar(rng):
    parts = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) if rng.random() < 0.5 else 0 for _ in range(4)]
    s = ExactScalar(*parts)
    return s if s else ONE


def _random_expr(rng):
    e = OperatorExpr()
    for _ in range(rng.randint(0, 6)):
        e = e + OperatorExpr.monomial(*(rng.randint(0, 3) for _ in range(4)), coeff=_random_scalar(rng))
    return e


def test_round_trip_random():
    rng = random.Random(2024)
    for _ in range(100):
        e = _random_expr(rng)
        assert E(render_expression(e)) == e


@pytest.mark.parametrize("text", ["H(6, 3/5*X + 4/5*Y)", "H2(3, 2, i*(a+bd), i*(ad+b))", "(X+Y)^5", "H(7, P)"])
def test_round_trip_identities(text):
    e = E(text)
    assert E(render_expression(e)) == e


def test_parse_scalar():
    assert parse_scalar("3/5") == as_scalar(Fraction(3, 5))
    assert parse_scalar("-1/2*sqrt2 + i") == -SQRT2 * as_scalar(Fraction(1, 2)) + I
    with pytest.raises(ExprSyntaxError):
        parse_scalar("0.3")
    with pytest.raises(ExprSyntaxError):
        parse_scalar("X")


def test_integrand():
    poly = elaborate_integrand(parse_integrand("H(2, 2*x - 1/2) * y"))
    assert poly == {(2, 1): 16, (1, 1): -8, (0, 1): -1}
    assert elaborate_integrand(parse_integrand("H2(1, 1, x, y)")) == {(1, 1): 1, (0, 0): -1}
    with pytest.raises(ExprSyntaxError):
        parse_integrand("a")
