from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ratprog.errors import DivisionByZeroFunction, ExpressionSyntaxError
from ratprog.fp_arith import Prime
from ratprog.ratfield import (
    IntPolynomial,
    Pole,
    RationalFunction,
    check_linear_independence,
    derivative,
    evaluate_mod_p,
    is_nonconstant,
    normalize,
    parse_rational_function as P,
    poly_gcd,
    resultant,
)


def coeffs(R):
    return R.numerator.coefficients, R.denominator.coefficients


@pytest.mark.parametrize(
    "text, num, den",
    [
        ("1/t", (1,), (0, 1)),
        ("(2t+2)/2", (1, 1), (1,)),
        ("t^2 - 3t", (0, -3, 1), (1,)),
        ("(t^2+1)/(t^2+1)", (1,), (1,)),
        ("t/(-2)", (0, -1), (2,)),
        ("1/2t", (0, 1), (2,)),
        ("0.5t + 1", (2, 1), (2,)),
        ("2(t+1)^2", (2, 4, 2), (1,)),
        ("-t^2", (0, 0, -1), (1,)),
        ("(t^2-1)/(t-1)", (1, 1), (1,)),
    ],
)
def test_parse_and_normalize(text, num, den):
    assert coeffs(P(text)) == (num, den)


@pytest.mark.parametrize(
    "text, position",
    [("t^", 2), ("t +", 3), ("(t", 2), ("t)", 1), ("t^t", 2), ("t^-1", 2), ("x", 0), ("2^3^2", 3), ("", 0)],
)
def test_syntax_errors_carry_position(text, position):
    with pytest.raises(ExpressionSyntaxError) as exc:
        P(text)
    assert exc.value.position == position


def test_division_by_zero_function():
    with pytest.raises(DivisionByZeroFunction):
        P("1/(t - t)")
    with pytest.raises(DivisionByZeroFunction):
        P("t/0")


@pytest.mark.parametrize("text, expected", [("t^2", "2t"), ("1/t", "-1/t^2"), ("t/(t+1)", "1/(t+1)^2")])
def test_derivative_examples(text, expected):
    assert derivative(P(text)) == P(expected)


def test_string_round_trip():
    for text in ["t", "1/t", "(t^2 + 1)/(2t - 3)", "-3t^3 + 2t^2", "(t - 2)/t^2"]:
        R = P(text)
        assert P(str(R)) == R


def test_linear_independence_examples():
    assert check_linear_independence(P("t"), P("1/t"))
    assert not check_linear_independence(P("t"), P("2t+3"))
    assert check_linear_independence(P("t"), P("t^2"))
    assert not check_linear_independence(P("1/t"), P("(3 + 2t)/t"))


def test_evaluate_mod_p_examples():
    F5, F7 = Prime(5), Prime(7)
    assert evaluate_mod_p(P("1/t"), F5(2)).value == 3
    assert evaluate_mod_p(P("1/t"), F5(0)) is Pole
    assert evaluate_mod_p(P("t^2"), F7(3)).value == 2


def test_is_nonconstant_examples():
    assert not is_nonconstant(P("5"))
    assert is_nonconstant(P("t"))
    assert not is_nonconstant(P("(t^2+1)/(t^2+1)"))
    assert is_nonconstant(P("1/t"))
    assert not is_nonconstant(P("t/t"))


def test_exact_evaluation():
    assert P("(t+1)/(t-2)")(Fraction(1, 3)) == Fraction(4, 3) / Fraction(-5, 3)
    assert P("1/(t-2)")(2) is Pole


def test_gcd_and_resultant():
    a = IntPolynomial((-1, 0, 1))  # t^2 - 1
    b = IntPolynomial((1, 1))
    assert poly_gcd(a, b) == IntPolynomial((1, 1))
    # Res(t - 1, t - 3) = (1 - 3) up to sign
    assert abs(resultant(IntPolynomial((-1, 1)), IntPolynomial((-3, 1)))) == 2
    assert resultant(IntPolynomial((0, 1)), IntPolynomial((5,))) == 5


small = st.integers(-4, 4)
polys = st.lists(small, min_size=1, max_size=5).map(lambda c: IntPolynomial(tuple(c)))
nonzero_polys = polys.filter(lambda q: not q.is_zero())
rationals = st.builds(lambda a, b: RationalFunction.from_polys(a, b), polys, nonzero_polys)


@settings(max_examples=60, deadline=None)
@given(rationals)
def test_normalization_idempotent(R):
    once = normalize(R)
    assert normalize(once) == once
    assert coeffs(normalize(once)) == coeffs(once)
    assert once.denominator.leading > 0


@settings(max_examples=60, deadline=None)
@given(rationals, rationals, st.integers(-5, 5), st.integers(-5, 5))
def test_derivative_is_linear(R, S, a, b):
    assert derivative(a * R + b * S) == a * derivative(R) + b * derivative(S)


@settings(max_examples=40, deadline=None)
@given(rationals, rationals, st.sampled_from([5, 7, 11]))
def test_evaluation_is_multiplicative(R, S, p):
    F = Prime(p)
    RS = R * S
    for y in range(p):
        r, s = R.evaluate_mod_p(F(y)), S.evaluate_mod_p(F(y))
        if r is Pole or s is Pole:
            continue
        rs = RS.evaluate_mod_p(F(y))
        # the product may cancel a common pole, never create one
        assert rs is not Pole and rs == r * s


@settings(max_examples=40, deadline=None)
@given(rationals, st.sampled_from([5, 7, 11]))
def test_value_table_matches_pointwise(R, p):
    values, pole = R.value_table(p)
    for y in range(p):
        v = R.evaluate_mod_p(Prime(p)(y))
        assert pole[y] == (v is Pole)
        if v is not Pole:
            assert values[y] == v.value
