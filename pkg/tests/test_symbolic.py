"""Symbolic expression canonicalization, evaluation, and polynomial equality."""

import pytest

from malkit import symbolic
from malkit.errors import DomainError
from malkit.parsing import _parse_expression
from malkit.symbolic import Abs, Add, Div, Lit, Mul, Pow, Sqrt, Var
from malkit.values import Rational


def canon(text):
    return symbolic.canonical(_parse_expression(text))


def key(text):
    return symbolic.canonical_key(_parse_expression(text))


def test_squared_binomial_orderings_share_canonical_form():
    assert key("(x+6)^2") == key("(6+x)^2")
    assert key("(x+6)^2") == key("x^2 + 12x + 36")
    assert key("(x+6)^2") != key("x^2 + 12x + 35")


def test_two_variable_factorization_equality():
    assert key("(3x + 5y)^2") == key("9x^2 + 30xy + 25y^2")
    assert key("(3x + 5y)^2") != key("9x^2 + 25y^2")


def test_canonical_rendering_is_stable():
    assert symbolic.render(canon("(6+x)^2")) == "(x + 6)^2"
    assert symbolic.render(canon("(5y + 3x)^2")) == "(3x + 5y)^2"
    assert symbolic.render(canon("sqrt(73)")) == "sqrt(73)"
    assert symbolic.render(canon("x + x")) == "2x"
    assert symbolic.render(canon("36 + 12x + x^2")) == "x^2 + 12x + 36"


def test_constant_folding():
    assert canon("sqrt(25)") == Lit(5)
    assert canon("sqrt(8^2 + 3^2)") == Sqrt(Lit(73))
    assert canon("|3 - 10|") == Lit(7)
    assert canon("2^3 + 1") == Lit(9)
    assert canon("6/4") == Lit(Rational(3, 2))


def test_canonical_idempotent():
    for text in [
        "(x+6)^2",
        "sqrt(x^2 + 25)",
        "|x + 3| - 2y",
        "3x + 5y + 3x",
        "x/(y+1)",
        "2(x+1)(x+2)",
        "sqrt(73) + 1/2",
    ]:
        once = canon(text)
        twice = symbolic.canonical(once)
        assert once == twice
        assert symbolic.render(once) == symbolic.render(twice)


def test_evaluate_exact():
    e = _parse_expression("sqrt(x^2 + 25)")
    assert symbolic.evaluate(e, {"x": Rational(12)}) == Rational(13)
    with pytest.raises(DomainError):
        symbolic.evaluate(e, {"x": Rational(8)})  # sqrt(89) is irrational
    with pytest.raises(DomainError):
        symbolic.evaluate(_parse_expression("1/x"), {"x": Rational(0)})
    with pytest.raises(DomainError):
        symbolic.evaluate(_parse_expression("sqrt(0 - 4)"))


def test_evaluate_matches_float_reference():
    e = _parse_expression("(3x + 5y)^2 - |x - y|")
    for x in range(-5, 6):
        for y in range(-5, 6):
            got = symbolic.evaluate(e, {"x": Rational(x), "y": Rational(y)})
            want = (3 * x + 5 * y) ** 2 - abs(x - y)
            assert got == Rational(want)


def test_to_decimal_sqrt():
    d = symbolic.to_decimal(_parse_expression("sqrt(73)"))
    assert abs(float(d) - 73**0.5) < 1e-9


def test_poly_expansion_oracle():
    # (x+6)^2 expands to exactly {x^2: 1, x: 12, 1: 36}.
    p = symbolic.poly(_parse_expression("(x+6)^2"))
    assert p == {
        (("x", 2),): Rational(1),
        (("x", 1),): Rational(12),
        (): Rational(36),
    }
    assert symbolic.poly(_parse_expression("sqrt(x)")) is None
    assert symbolic.poly(_parse_expression("|x|")) is None
    assert symbolic.poly(_parse_expression("x/(y+1)")) is None


def test_non_polynomial_structural_comparison():
    assert key("sqrt(x^2 + 25)") == key("sqrt(25 + x^2)")
    assert key("sqrt(x^2 + 25)") != key("sqrt(x^2 + 16)")
    assert key("|x + 3|") == key("|3 + x|")


def test_division_by_constant_folds_into_coefficients():
    assert key("(4x + 2)/2") == key("2x + 1")


def test_parse_implicit_multiplication():
    assert key("30xy") == key("30 x y")
    assert key("2(x+1)") == key("2x + 2")
