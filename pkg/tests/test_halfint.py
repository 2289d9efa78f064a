from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from legendrian_theta.halfint import HALF, HalfInt


@pytest.mark.parametrize("text,doubled", [
    ("-1/2", -1), ("−1/2", -1), ("0.5", 1), ("1.5", 3), ("-0.5", -1), ("3", 6), (" 2 ", 4),
])
def test_parse_strings(text, doubled):
    assert HalfInt.of(text).doubled == doubled


def test_parse_other_types():
    assert HalfInt.of(2) == HalfInt(4)
    assert HalfInt.of(Fraction(-3, 2)) == HalfInt(-3)
    assert HalfInt.of(0.5) == HALF
    with pytest.raises(ValueError):
        HalfInt.of("1/3")
    with pytest.raises(TypeError):
        HalfInt.of(True)
    with pytest.raises(TypeError):
        HalfInt(1.0)


def test_arithmetic_and_format():
    a = HalfInt.of("-1/2")
    assert a + 1 == HALF
    assert 1 - a == HalfInt(3)
    assert -a == HALF
    assert str(a) == "-1/2" and str(HalfInt(4)) == "2"
    assert a.to_json() == -0.5 and HalfInt(4).to_json() == 2
    assert HalfInt(4).to_int() == 2
    with pytest.raises(ValueError):
        a.to_int()
    assert a < 0 < HALF
    assert hash(HalfInt(2)) == hash(HalfInt.of(1))


@given(st.integers(-1000, 1000), st.integers(-1000, 1000))
def test_matches_fractions(x, y):
    a, b = HalfInt(x), HalfInt(y)
    assert (a + b).to_fraction() == Fraction(x, 2) + Fraction(y, 2)
    assert (a - b).to_fraction() == Fraction(x, 2) - Fraction(y, 2)
    assert (a < b) == (x < y)
    assert HalfInt.of(str(a)) == a
