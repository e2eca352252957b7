from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mzvrel.bigfixed import BigFixed

fracs = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)


@given(fracs, fracs)
def test_arithmetic_within_half_ulp(a, b):
    bits = 96
    x, y = BigFixed.from_fraction(a, bits), BigFixed.from_fraction(b, bits)
    ulp = Fraction(1, 2**bits)
    assert abs(x.to_fraction() - a) <= ulp / 2
    assert abs((x + y).to_fraction() - (a + b)) <= ulp
    assert abs((x - y).to_fraction() - (a - b)) <= ulp
    # product error: rounding of both inputs plus one final rounding
    err = abs((x * y).to_fraction() - a * b)
    assert err <= ulp / 2 * (abs(a) + abs(b) + 2)


def test_from_string_and_decimal():
    x = BigFixed.from_string("1e-25", 192)
    assert abs(x.to_fraction() - Fraction(1, 10**25)) < Fraction(1, 2**191)
    assert BigFixed.from_int(3, 64).to_decimal(5).startswith("3.0000")
    assert BigFixed.from_fraction(Fraction(1, 3), 128).to_decimal(10) == "0.3333333333"


def test_mixed_precision_rejected():
    with pytest.raises(ValueError):
        BigFixed.from_int(1, 64) + BigFixed.from_int(1, 65)


def test_rescale_and_compare():
    x = BigFixed.from_fraction(Fraction(5, 7), 100)
    assert abs(x.rescale(60).to_fraction() - Fraction(5, 7)) < Fraction(1, 2**59)
    assert BigFixed.from_int(1, 64) < BigFixed.from_int(2, 64)
    assert abs(BigFixed.from_int(-2, 64)) == BigFixed.from_int(2, 64)
    assert (BigFixed.from_int(7, 64) / 7) == BigFixed.from_int(1, 64)


def test_ulp():
    assert BigFixed.ulp(10).to_fraction() == Fraction(1, 1024)
