from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mirrorpairs.errors import ParseError
from mirrorpairs.scalars import QI, I, conj, format_scalar, im_part, is_real, parse_scalar, re_part

rats = st.fractions(max_denominator=50).filter(lambda x: abs(x.numerator) < 10**6)
gauss = st.builds(QI, rats, rats)


def test_i_squared():
    assert I * I == -1
    assert I * I == QI(-1, 0)


@given(gauss, gauss, gauss)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - b) + b == a
    if b != 0:
        assert (a / b) * b == a


@given(gauss)
def test_conjugation(a):
    assert conj(conj(a)) == a
    assert is_real(a * conj(a))
    assert re_part(a) == a.re and im_part(a) == a.im


@given(gauss)
def test_format_round_trip(a):
    assert parse_scalar(format_scalar(a)) == a


@given(rats)
def test_rational_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x
    assert "i" not in format_scalar(x)


@pytest.mark.parametrize(
    "text,value",
    [("3/4", Fraction(3, 4)), ("-2", Fraction(-2)), ("i", QI(0, 1)), ("-i", QI(0, -1)), ("1/2-3*i", QI(Fraction(1, 2), -3)), ("2i", QI(0, 2))],
)
def test_parse_literals(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text", ["", "abc", "1/", "0.5", "1+2j"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        parse_scalar(text)


def test_mixed_arithmetic():
    assert Fraction(1, 2) + I == QI(Fraction(1, 2), 1)
    assert 2 * I - I == I
    assert 1 / I == -I
