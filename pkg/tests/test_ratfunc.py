from fractions import Fraction

import pytest

from brgenus.poly import Poly
from brgenus.ratfunc import ParseError, RatFunc, parse_polys, parse_ratfunc, split_top_level


def test_parse_factored_form():
    f = parse_ratfunc("x^2*(x-1)/(x+1)^3")
    assert f.degree == 0
    assert f.exponent(Poly([0, 1])) == 2
    assert f.exponent(Poly([1, 1])) == -3
    assert f.const == 1


def test_parse_constants_and_scaling():
    f = parse_ratfunc("3*(2x+4)")
    assert f.const == 6
    assert f.exponent(Poly([2, 1])) == 1
    assert parse_ratfunc("-2/3").const == Fraction(-2, 3)


def test_parse_expands_sums():
    num, den = parse_polys("(x+1)^2 - x^2")
    assert num == Poly([1, 2]) and den == Poly([1])


def test_parse_mod_p():
    f = parse_ratfunc("x^2 + 1", modulus=5)
    # x^2 + 1 = (x + 2)(x + 3) over F_5
    assert len(f.factors) == 2 and f.modulus == 5
    assert parse_ratfunc("x^2 + 1", modulus=3).factors == ((Poly([1, 0, 1], 3), 1),)


def test_arithmetic():
    f = parse_ratfunc("x*(x-1)")
    g = parse_ratfunc("1/(x-1)")
    assert (f * g) == parse_ratfunc("x")
    assert f**3 * f.inverse() ** 3 == RatFunc.constant(1)
    assert (f**2).degree == 4


@pytest.mark.parametrize("bad", ["", "x +", "(x", "x/0", "0", "y", "x^-"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        parse_ratfunc(bad)


def test_parse_error_type():
    with pytest.raises(ParseError):
        parse_ratfunc("0")


def test_split_top_level():
    assert split_top_level("(x, y), z", ",") == ["(x, y)", "z"]
    assert split_top_level("(a,b);(c,(d,e))", ";") == ["(a,b)", "(c,(d,e))"]
