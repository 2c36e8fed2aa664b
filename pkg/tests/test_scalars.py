"""Exact scalar tower, checked against sympy as an independent oracle."""

from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from jordan.scalars import (
    Scalar,
    conj,
    format_scalar,
    im_part,
    parse_scalar,
    re_part,
    real_sign,
    sqrt_exact,
    to_mpc,
)

from strategies import exact_scalars, nonzero_rationals, rationals


def to_sympy(v):
    if isinstance(v, Fraction):
        return sympy.Rational(v.numerator, v.denominator)
    total = sympy.Integer(0)
    for (m, e), q in v.terms:
        total += sympy.Rational(q.numerator, q.denominator) * sympy.sqrt(m) * (sympy.I if e else 1)
    return total


def same(a, b) -> bool:
    return sympy.simplify(to_sympy(a) - to_sympy(b)) == 0


def same_value(v, expr) -> bool:
    return sympy.simplify(to_sympy(v) - expr) == 0


# --- construction and normal form ------------------------------------------------

def test_rational_results_demote_to_fraction():
    r2 = sqrt_exact(2)
    assert isinstance(r2 * r2, Fraction) and r2 * r2 == 2
    z = Scalar.gaussian(1, 1)
    assert isinstance(z * conj(z), Fraction) and z * conj(z) == 2


def test_radical_products_reduce_radicands():
    assert sqrt_exact(2) * sqrt_exact(6) == 2 * sqrt_exact(3)
    assert Scalar.radical({8: 1}) == 2 * sqrt_exact(2)
    assert sqrt_exact(Fraction(1, 2)) == sqrt_exact(2) / 2


def test_negative_square_root_is_imaginary():
    assert sqrt_exact(-4) == Scalar.gaussian(0, 2)
    assert sqrt_exact(-3) ** 2 == -3


@pytest.mark.parametrize("text", ["3/4", "1/2+3/4i", "sqrt(2)", "-sqrt(2)", "1-i", "i", "1+2*sqrt(3)i", "1/4*sqrt(2)-1/2"])
def test_format_parse_round_trip(text):
    v = parse_scalar(text)
    assert parse_scalar(format_scalar(v)) == v


def test_decimal_strings_parse_exactly():
    assert parse_scalar("0.25") == Fraction(1, 4)
    assert parse_scalar("1e-3") == Fraction(1, 1000)


def test_sign_of_radical_expressions():
    assert real_sign(1 - sqrt_exact(2)) == -1
    assert real_sign(3 - 2 * sqrt_exact(2)) == 1
    assert real_sign(sqrt_exact(2) + sqrt_exact(3) - sqrt_exact(10)) == -1  # 3.146 vs 3.162
    assert real_sign(sqrt_exact(2) + sqrt_exact(3) - 3) == 1


# --- field laws against sympy -------------------------------------------------------

@given(exact_scalars(), exact_scalars())
def test_sum_and_product_match_sympy(a, b):
    assert same_value(a + b, to_sympy(a) + to_sympy(b))
    assert same_value(a * b, to_sympy(a) * to_sympy(b))


@given(exact_scalars())
def test_inverse_matches_sympy(a):
    if a == 0:
        with pytest.raises(ZeroDivisionError):
            1 / a
        return
    inv = 1 / a
    assert inv * a == 1
    assert same_value(inv, 1 / to_sympy(a))


@given(exact_scalars(), exact_scalars(), exact_scalars())
def test_distributivity(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(exact_scalars())
def test_conjugation_and_parts(a):
    assert conj(conj(a)) == a
    assert re_part(a) + Scalar.gaussian(0, 1) * im_part(a) == a
    assert same_value(conj(a), sympy.conjugate(to_sympy(a)))


@given(exact_scalars())
def test_numeric_value_matches(a):
    z = complex(to_mpc(a))
    w = complex(sympy.N(to_sympy(a), 30))
    assert abs(z - w) <= 1e-12 * max(1, abs(w))


@given(exact_scalars(gaussian=False))
def test_real_sign_matches_numeric(a):
    expected = sympy.sign(sympy.N(to_sympy(a), 60))
    assert real_sign(a) == int(expected)


@given(exact_scalars())
def test_text_round_trip(a):
    assert parse_scalar(format_scalar(a)) == a


@given(rationals)
def test_sqrt_exact_squares_back(q):
    assert sqrt_exact(q) ** 2 == q


@given(exact_scalars(), st.integers(0, 4))
def test_integer_powers(a, k):
    expected = Fraction(1)
    for _ in range(k):
        expected = expected * a
    assert a**k == expected


def test_mpmath_interop():
    with mpmath.workprec(80):
        v = mpmath.mpf(1) + sqrt_exact(2)
        assert abs(v - (1 + mpmath.sqrt(2))) < mpmath.mpf(2) ** -75
