from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from germhodge.errors import ParseError, UnknownVariable
from germhodge.poly import (GREVLEX, LEX, Polynomial, format_polynomial, hessian_determinant, parse_polynomial,
                            weighted_degree)

XYZ = ("x", "y", "z")


def P(text, variables=XYZ):
    return parse_polynomial(text, variables)


def test_parse_basic():
    p = P("x^2*y - 3*z + 1/2")
    assert p.terms == {(2, 1, 0): 1, (0, 0, 1): -3, (0, 0, 0): Fraction(1, 2)}


def test_power_operators_agree():
    assert P("(x+y)**3") == P("(x+y)^3") == P("x^3 + 3*x^2*y + 3*x*y^2 + y^3")


def test_unary_minus_and_parentheses():
    assert P("-(x - y)*(x + y)") == P("y^2 - x^2")
    assert P("--x") == P("x")


@pytest.mark.parametrize("text", ["", "x^", "x+*y", "(x+y", "x^y", "1/0", "x $ y", "x^-1"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        P(text)


def test_unknown_variable_reports_position():
    with pytest.raises(UnknownVariable) as info:
        P("x + w^2")
    assert info.value.position == 4


def test_format_decreasing_grevlex():
    assert format_polynomial(P("1 + x*y + x^3 - 2/3*y^4")) == "-2/3*y^4 + x^3 + x*y + 1"


def test_grevlex_key():
    # degree first, then the smaller power of the last variable wins
    assert GREVLEX.key((1, 1, 0)) > GREVLEX.key((1, 0, 1)) > GREVLEX.key((0, 1, 1))
    assert LEX.key((1, 0, 0)) > LEX.key((0, 5, 5))


def test_derivatives_and_hessian():
    f = P("x^3 + y^4", ("x", "y"))
    assert f.diff(0) == P("3*x^2", ("x", "y"))
    assert hessian_determinant(f) == P("72*x*y^2", ("x", "y"))


def test_weighted_degree():
    assert weighted_degree((1, 2), (Fraction(1, 3), Fraction(1, 4))) == Fraction(5, 6)


def test_evaluation():
    assert P("x^2 + y*z")(Fraction(1, 2), 2, 3) == Fraction(25, 4)


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
monos = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(monos, coeffs, max_size=5).map(lambda d: Polynomial(XYZ, d))


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Polynomial.zero(XYZ)


@settings(max_examples=60, deadline=None)
@given(polys)
def test_parse_print_roundtrip(p):
    assert parse_polynomial(format_polynomial(p), XYZ) == p
