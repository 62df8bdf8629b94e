from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from segre_k3.arith import binom_int, binom_rat, fmt, parse_rational


def falling_product(a, b):
    """Oracle: a(a-1)...(a-b+1)/b! evaluated literally."""
    num = 1
    for j in range(b):
        num *= a - j
    return Fraction(num, factorial(b))


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (0, 0, 1),
        (3, 5, 0),
        (-2, 3, -4),
        (0, 3, 0),
        (5, -1, 0),
        (-3, -2, 0),
        (7, 3, 35),
        (-1, 4, 1),
        (-1, 3, -1),
    ],
)
def test_binom_int_conventions(a, b, expected):
    assert binom_int(a, b) == expected


def test_negative_upper_matches_product_formula():
    # (-2)(-3)(-4)/3!
    assert binom_int(-2, 3) == Fraction(-2 * -3 * -4, 6)


@given(st.integers(-60, 60), st.integers(1, 30))
def test_pascal_on_extended_domain(a, b):
    assert binom_int(a, b) == binom_int(a - 1, b) + binom_int(a - 1, b - 1)


@given(st.integers(-60, 60), st.integers(0, 25))
def test_binom_int_is_the_falling_factorial(a, b):
    assert binom_int(a, b) == falling_product(a, b)


@given(st.integers(-60, -1), st.integers(0, 25))
def test_sign_rule(a, b):
    assert binom_int(a, b) == (-1) ** b * binom_int(-a + b - 1, b)


@given(st.integers(1, 15), st.integers(1, 30))
def test_binom_of_minus_j(k, j):
    assert binom_int(-j, 2 * k - j) == (-1) ** j * binom_int(2 * k - 1, j - 1)


@pytest.mark.parametrize(
    "q, b, expected",
    [
        (Fraction(1, 2), 2, Fraction(-1, 8)),
        (Fraction(7, 3), 0, 1),
        (Fraction(-5, 2), 0, 1),
        (5, 2, 10),
        (Fraction(1, 2), -1, 0),
    ],
)
def test_binom_rat(q, b, expected):
    assert binom_rat(q, b) == expected


@given(st.integers(0, 40), st.integers(0, 40))
def test_binom_rat_agrees_on_integers(q, b):
    assert binom_rat(q, b) == binom_int(q, b)


@given(st.fractions(max_denominator=12).filter(lambda q: abs(q) < 50), st.integers(0, 12))
def test_binom_rat_is_the_falling_factorial(q, b):
    assert binom_rat(q, b) == falling_product(q, b)


def test_rational_wire_format():
    assert fmt(Fraction(6, 4)) == "3/2"
    assert fmt(Fraction(-4, 2)) == "-2"
    assert parse_rational("-3/6") == Fraction(-1, 2)
    for bad in ["0.5", "1e3", ""]:
        with pytest.raises(ValueError):
            parse_rational(bad)


@given(st.fractions())
def test_wire_format_round_trip(q):
    assert parse_rational(fmt(q)) == q
