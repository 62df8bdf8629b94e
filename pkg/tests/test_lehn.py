from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from segre_k3 import lehn
from segre_k3.arith import binom_int
from segre_k3.segre import DomainError, alpha_next_poly, alpha_top_poly, alpha_curve_poly, segre_top
from segre_k3.series import TruncatedSeries as TS, compose, exp_series, log_series, revert_lagrange

ORDER = 12


def test_constants_for_presets():
    assert lehn.lehn_constants(lehn.k3(5)) == lehn.LehnConstants(0, 16, 7)
    assert lehn.lehn_constants(lehn.abelian(5)) == lehn.LehnConstants(0, 10, 5)
    assert lehn.lehn_constants(lehn.enriques(5)) == lehn.LehnConstants(0, 13, 6)
    assert lehn.k3(3).c2 == 24 and lehn.enriques(3).c2 == 12 and lehn.abelian(3).c2 == 0


def test_constants_general_surface():
    s = lehn.SurfaceInvariants(K2=1, HK=3, H2=5, chiO=1)
    k = lehn.lehn_constants(s)
    assert (k.a, k.b, k.c) == (1, 5 - 6 + 1 + 3, Fraction(5 - 3, 2) + 1)
    assert not s.k_trivial
    with pytest.raises(lehn.NotKTrivial):
        lehn.ktrivial_series(s, ORDER)


def test_substitutions_are_compatible():
    # x(y(w)) = 2 z(w)
    assert compose(lehn.x_of_y(ORDER), lehn.y_of_w(ORDER)) == 2 * lehn.z_of_w(ORDER)
    w = lehn.w_of_z(ORDER)
    assert compose(lehn.z_of_w(ORDER), w) == TS.var(ORDER)
    assert w == revert_lagrange(lehn.z_of_w(ORDER))
    assert lehn.x_from_z(lehn.z_from_x(TS([1, 2, 3], 3))) == TS([1, 2, 3], 3)


@pytest.mark.parametrize("ell", [0, 1, 2, 5, 9, 14])
def test_k3_series_matches_closed_form(ell):
    s = lehn.lehn_series(lehn.lehn_constants(lehn.k3(ell)), ORDER)
    assert s == lehn.segre_series(ell, ORDER)
    assert s == lehn.ktrivial_series(lehn.k3(ell), ORDER)


def test_k3_series_small_example():
    s = lehn.lehn_series(lehn.lehn_constants(lehn.k3(5)), 4)
    assert list(s.coefficients) == [1, 10, 12, 0]


def test_a1_a4_definitions():
    t = TS.var(ORDER)
    z = t * (1 + t) ** 2 / 2
    assert compose(lehn.a1_series(ORDER), z) == log_series(1 + t) / 2
    assert compose(lehn.a4_series(ORDER), z) == log_series(1 + t) / 8 - log_series(1 + 3 * t) / 24
    assert lehn.a1_series(ORDER)[0] == 0 and lehn.a1_series(ORDER)[1] == 1
    assert lehn.a4_series(ORDER)[0] == 0


@pytest.mark.parametrize("ell", [0, 1, 3, 8])
def test_a1_and_a4_reproduce_k3(ell):
    lhs = exp_series(lehn.a1_series(ORDER) * (2 * ell) + lehn.a4_series(ORDER) * 24)
    assert lhs == lehn.segre_series(ell, ORDER)


def test_a1_alone_from_abelian_and_a4_alone_from_elliptic():
    # abelian surfaces isolate A1, elliptic surfaces with H = m f isolate A4
    assert lehn.ktrivial_series(lehn.abelian(1), ORDER) == exp_series(2 * lehn.a1_series(ORDER))
    assert lehn.ktrivial_series(lehn.elliptic(1), ORDER) == exp_series(12 * lehn.a4_series(ORDER))


@pytest.mark.parametrize("ell", range(0, 9))
def test_abelian_closed_form(ell):
    assert lehn.abelian_closed(ell, ORDER) == lehn.ktrivial_series(lehn.abelian(ell), ORDER)
    assert lehn.abelian_closed(ell, ORDER) == lehn.ktrivial_series(lehn.bielliptic(ell), ORDER)


def test_abelian_degree_zero_is_trivial():
    assert lehn.abelian_closed(0, ORDER) == TS.one(ORDER)


@pytest.mark.parametrize("ell", range(0, 7))
def test_enriques_square(ell):
    assert lehn.enriques_check(ell, ORDER)


def test_elliptic_examples():
    assert lehn.elliptic_series(0, ORDER) == TS.one(ORDER)
    base = lehn.elliptic_base(ORDER)
    assert lehn.elliptic_series(2, ORDER) == lehn.z_from_x(base)
    assert list(base.coefficients[:4]) == [1, 0, 3, -20]
    with pytest.raises(DomainError):
        lehn.elliptic_series(-1, ORDER)


@pytest.mark.parametrize("chi", range(0, 5))
def test_elliptic_matches_a4(chi):
    assert lehn.elliptic_series(chi, ORDER) == exp_series(lehn.a4_series(ORDER) * (12 * chi))


def test_ident_at_base_cases():
    y = TS.var(ORDER)
    y_x = lehn.y_of_x(ORDER)
    # ell = -2: the right side is 1 - 2y
    assert lehn.ident_lhs(-2, ORDER) == compose(1 - 2 * y, y_x)
    # ell = -3: the right side is 1 - 3y
    assert lehn.ident_lhs(-3, ORDER) == compose(1 - 3 * y, y_x)
    assert lehn.ident_lhs(-2, 4).coefficients == (1, -2, 10, -56)


@pytest.mark.parametrize("ell", range(-6, 15))
def test_ident_and_pascal(ell):
    assert lehn.ident_check(ell, ORDER)
    assert lehn.pascal_check(ell, ORDER)


@settings(max_examples=25, deadline=None)
@given(st.fractions(min_value=-10, max_value=10, max_denominator=5))
def test_ident_for_rational_ell(q):
    assert lehn.ident_check(q, 8)


def test_ident_report_on_mismatch():
    r = lehn.compare_series("demo", {"ell": 1}, TS([1, 2, 3], 3), TS([1, 2, 4], 3))
    assert not r and r.first_mismatch == 2
    assert r.to_json_obj()["left"] == "3" and r.to_json_obj()["right"] == "4"


def test_segre_series_is_the_binomial_formula():
    for ell in range(6):
        s = lehn.segre_series(ell, ORDER)
        assert all(s[n] == 2**n * binom_int(ell - 2 * n + 2, n) for n in range(ORDER))
        assert all(s[n] == segre_top(ell, n) for n in range(ORDER))


@pytest.mark.parametrize("n", range(2, 9))
def test_chern_segre_leading_terms(n):
    lead, sub = lehn.chern_segre_leading(n)
    poly = alpha_next_poly(n)
    assert lehn.bivariate_coeff(lead, 1, 2 * n - 1) * 2**n == poly.coeff(n)
    assert lehn.bivariate_coeff(sub, 1, 2 * n - 1) * 2 ** (n - 1) == poly.coeff(n - 1)
    # the other corners agree with the known closed forms
    assert lehn.bivariate_coeff(lead, 0, 2 * n) * 2**n == alpha_top_poly(n).coeff(n)
    assert lehn.bivariate_coeff(lead, n, n) * 2**n == alpha_curve_poly(n).coeff(n)


def test_chern_segre_leading_needs_n_at_least_two():
    with pytest.raises(DomainError):
        lehn.chern_segre_leading(1)
