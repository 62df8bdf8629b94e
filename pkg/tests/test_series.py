from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from segre_k3.arith import binom_int
from segre_k3.series import (
    BadConstantTerm,
    NonUnitConstantTerm,
    NonzeroInnerConstant,
    NotInvertible,
    TruncatedSeries as TS,
    ZeroConstantTerm,
    compose,
    exp_series,
    inverse,
    log_series,
    mul,
    pow_rat,
    revert,
    revert_lagrange,
)
from segre_k3.series import pow_binomial

N = 10
x = TS.var(N)


def sympy_series(expr, order):
    """Oracle: Taylor coefficients of a sympy expression in X."""
    X = sympy.Symbol("X")
    poly = sympy.series(expr(X), X, 0, order).removeO()
    return TS([Fraction(str(poly.coeff(X, k))) for k in range(order)], order)


coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def series(draw, order=None, const=None, linear_nonzero=False):
    n = order or draw(st.integers(2, 8))
    cs = draw(st.lists(coeff, min_size=n, max_size=n))
    if const is not None:
        cs[0] = Fraction(const)
    if linear_nonzero and cs[1] == 0:
        cs[1] = Fraction(1)
    return TS(cs, n)


# -- examples ----------------------------------------------------------------


def test_mul_examples():
    assert (1 + x) * (1 - x) == TS([1, 0, -1], N)
    f = TS([3, 1, 4, 1, 5], 5)
    assert f * TS.one(5) == f
    assert mul(1 + x, 1 + x) == TS([1, 2, 1], N)


def test_mixed_orders_truncate_to_smaller():
    f, g = TS([1, 1, 1, 1], 4), TS([1, 2], 2)
    assert (f * g).order == 2
    assert (f + g) == TS([2, 3], 2)


def test_inverse_examples():
    assert inverse(1 - x) == TS([1] * N, N)
    assert inverse(TS.one(N)) == TS.one(N)
    f = TS([2, -1, 3, 0, 7], 5)
    assert inverse(inverse(f)) == f
    with pytest.raises(ZeroConstantTerm):
        inverse(x)


def test_pow_rat_examples():
    assert pow_rat(1 + x, 2) == TS([1, 2, 1], N)
    assert pow_rat(TS([1, 3, 5], 6), 0) == TS.one(6)
    half = pow_rat(1 - 2 * x, Fraction(1, 2))
    assert half.coefficients[:3] == (1, -1, Fraction(-1, 2))
    assert half == sympy_series(lambda X: sympy.sqrt(1 - 2 * X), N)
    with pytest.raises(NonUnitConstantTerm):
        pow_rat(2 + x, Fraction(1, 2))


def test_exp_log_examples():
    assert exp_series(TS([0], N)) == TS.one(N)
    assert log_series(1 + x) == TS([0] + [Fraction((-1) ** (k + 1), k) for k in range(1, N)], N)
    assert exp_series(x) == sympy_series(sympy.exp, N)
    with pytest.raises(BadConstantTerm):
        exp_series(1 + x)
    with pytest.raises(BadConstantTerm):
        log_series(2 + x)


def test_compose_examples():
    f = TS([1, 2, 3, 4, 5, 6], 6)
    assert compose(f, TS.var(6)) == f
    assert compose(inverse(1 - x), x * x) == TS([1, 0, 1, 0, 1, 0, 1, 0, 1, 0], N)
    g = TS([0, 1, -1, 2, 0, 3], 6)
    assert compose(TS.var(6), g) == g
    with pytest.raises(NonzeroInnerConstant):
        compose(f, 1 + TS.var(6))


def test_compose_against_sympy():
    got = compose(exp_series(x), x + x * x)
    assert got == sympy_series(lambda X: sympy.exp(X + X**2), N)


def test_revert_examples():
    assert revert(TS.var(N)) == TS.var(N)
    # t + 2t^2 + t^3 = t(1+t)^2: coefficient of x^(n+1) is binom(-2n-2, n)/(n+1)
    g = revert(x + 2 * x**2 + x**3)
    assert g.coefficients[:4] == (0, 1, -2, 7)
    oracle = [Fraction(binom_int(-2 * n - 2, n), n + 1) for n in range(N - 1)]
    assert list(g.coefficients[1:]) == oracle
    with pytest.raises(NotInvertible):
        revert(1 + x)
    with pytest.raises(NotInvertible):
        revert(x * x)


def test_revert_teq_order_30():
    t = TS.var(30)
    g = revert(t * (1 + t) ** 2)
    assert g == revert_lagrange(t * (1 + t) ** 2)
    for n in range(29):
        assert g[n + 1] == Fraction(binom_int(-2 * n - 2, n), n + 1)


def test_revert_of_log_is_expm1():
    assert revert(log_series(1 + x)) == exp_series(x) - 1


def test_json_round_trip():
    f = TS([Fraction(1, 3), -2, 0, Fraction(7, 5)], 4)
    obj = f.to_json_obj()
    assert obj == {"coefficients": ["1/3", "-2", "0", "7/5"], "order": 4}
    assert TS.from_json(f.to_json()) == f


def test_rescale_and_shift():
    f = TS([1, 1, 1, 1], 4)
    assert f.rescale(2) == TS([1, 2, 4, 8], 4)
    assert f.shift(2) == TS([0, 0, 1, 1], 4)


# -- properties --------------------------------------------------------------


@given(series(order=7), series(order=7), series(order=7))
def test_ring_axioms(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f


exponent = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@given(series(const=1), exponent, exponent)
def test_pow_additive(f, p, q):
    assert pow_rat(f, p) * pow_rat(f, q) == pow_rat(f, p + q)


@given(series(const=1), exponent)
def test_pow_recurrence_matches_binomial_series(f, q):
    assert pow_rat(f, q) == pow_binomial(f, q)


@given(series(const=1), st.integers(-4, 4))
def test_integer_pow_matches_repeated_product(f, k):
    expected = TS.one(f.order)
    for _ in range(abs(k)):
        expected = expected * f
    if k < 0:
        expected = inverse(expected)
    assert pow_rat(f, k) == expected


@given(series(const=0))
def test_exp_log_round_trip(f):
    assert log_series(exp_series(f)) == f


@given(series(const=1))
def test_log_exp_round_trip(f):
    assert exp_series(log_series(f)) == f


@settings(max_examples=60)
@given(series(const=0, linear_nonzero=True))
def test_revert_round_trip(f):
    g = revert(f)
    z = TS.var(f.order)
    assert compose(f, g) == z
    assert compose(g, f) == z
    assert revert(g) == f


@settings(max_examples=60)
@given(series(const=0, linear_nonzero=True))
def test_newton_matches_lagrange(f):
    assert revert(f) == revert_lagrange(f)


@settings(max_examples=60)
@given(series(const=0, linear_nonzero=True))
def test_derivative_of_reversion(f):
    g = revert(f)
    lhs = g.derivative()
    rhs = inverse(compose(f.derivative(), g.truncate(f.order - 1)))
    assert lhs == rhs
