from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liouville.algebra.numbers import sqrt_rational
from liouville.algebra.poly import Poly
from liouville.algebra.ratfunc import RatFunc
from liouville.celestial.families import kappa_family_r
from liouville.errors import ParseError, UnsupportedPoleField
from liouville.kovacic import analyze
from liouville.parser import parse_bindings, parse_expression, parse_rational, parse_ratfunc

x = RatFunc.x()


def test_kappa_family_with_binding():
    r = parse_ratfunc("(4*k*x + 4*k - 3)/(4*(1-x)^2*(1+x)^2)", {"k": F(3)})
    assert r == kappa_family_r(3)


def test_zero_and_whitespace():
    assert parse_ratfunc("0") == RatFunc.const(0)
    assert parse_ratfunc("  x ^ 2  -  1 / 2 ") == x * x - F(1, 2)


def test_variable_name_is_reported():
    value, var = parse_expression("tau^2 + 1")
    assert var == "tau" and value == x * x + 1
    assert parse_expression("7/3")[1] == "x"


def test_negative_exponent_and_sqrt():
    assert parse_ratfunc("x^-2") == 1 / (x * x)
    assert parse_ratfunc("12*sqrt(2)/(1+2*sqrt(2))") == RatFunc.const(12 * sqrt_rational(2) / (1 + 2 * sqrt_rational(2)))


def test_parse_succeeds_but_analysis_refuses_cubic_poles():
    r = parse_ratfunc("1/(x^3+x+1)^2")
    with pytest.raises(UnsupportedPoleField):
        analyze(r)


@pytest.mark.parametrize("text, pos", [
    ("x +", 3),
    ("(x + 1", 6),
    ("x $ 2", 2),
    ("x * y", 4),
    ("x ^ y", 4),
    ("1/0", 1),
    ("x) ", 1),
    ("sqrt(x)", 0),
])
def test_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as info:
        parse_ratfunc(text)
    assert info.value.position == pos
    assert info.value.exit_code == 3


def test_expected_tokens():
    with pytest.raises(ParseError) as info:
        parse_ratfunc("(x + 1")
    assert info.value.expected == {")"}


def test_rationals_and_bindings():
    assert parse_rational(" -7/2 ") == F(-7, 2)
    assert parse_bindings(["k=3", "m = -1/2"]) == {"k": F(3), "m": F(-1, 2)}
    with pytest.raises(ParseError):
        parse_rational("x")
    with pytest.raises(ParseError):
        parse_bindings(["3=k"])


small = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def ratfuncs(draw):
    num = Poly(tuple(draw(st.lists(small, min_size=1, max_size=4))))
    den = Poly(tuple(draw(st.lists(small, min_size=1, max_size=3))) + (F(1),))
    return RatFunc(num, den)


@settings(max_examples=60, deadline=None)
@given(ratfuncs())
def test_render_round_trip(r):
    assert parse_ratfunc(r.render("x")) == r
    assert parse_ratfunc(r.render("s"), variable="s") == r
