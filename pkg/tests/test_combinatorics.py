import math
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bernfred.combinatorics import (
    BERNOULLI_CAP,
    CapExceededError,
    RationalPolynomial,
    bernoulli_number,
    bernoulli_polynomial,
    constant_function,
    euler_maclaurin_sum,
    norlund_coefficients,
    norlund_polynomial,
    power_function,
    reciprocal_function,
    stirling2,
    stirling2_norlund,
)


def recurrence_bernoulli(n_max):
    """Oracle: sum_{k=0}^{n} C(n+1, k) B_k = 0 solved for B_n."""
    b = [Fraction(1)]
    for n in range(1, n_max + 1):
        b.append(-sum(comb(n + 1, k) * b[k] for k in range(n)) / (n + 1))
    return b


def brute_stirling(n, k):
    """Oracle: inclusion-exclusion count of surjections divided by k!."""
    return sum((-1) ** (k - j) * comb(k, j) * j**n for j in range(k + 1)) // math.factorial(k)


ORACLE_B = recurrence_bernoulli(60)


@pytest.mark.parametrize("n,expected", [(0, Fraction(1)), (1, Fraction(-1, 2)), (3, Fraction(0)), (12, Fraction(-691, 2730))])
def test_bernoulli_examples(n, expected):
    assert bernoulli_number(n) == expected


def test_bernoulli_matches_recurrence_oracle():
    assert [bernoulli_number(n) for n in range(61)] == ORACLE_B


def test_bernoulli_values_are_exact_fractions():
    b = bernoulli_number(60)
    assert isinstance(b, Fraction)
    assert b.denominator == 56786730


@given(st.integers(min_value=1, max_value=60))
def test_odd_bernoulli_vanish(m):
    assert bernoulli_number(2 * m + 1) == 0


@given(st.integers(min_value=1, max_value=60))
def test_even_bernoulli_sign_alternates(m):
    b = bernoulli_number(2 * m)
    assert (b > 0) == (m % 2 == 1)


def test_bernoulli_cap():
    assert BERNOULLI_CAP == 200
    with pytest.raises(CapExceededError):
        bernoulli_number(201)
    with pytest.raises(CapExceededError):
        bernoulli_number(30, cap=20)
    assert bernoulli_number(220, cap=300) != 0


def test_bernoulli_polynomial_low_orders():
    assert bernoulli_polynomial(1) == RationalPolynomial([Fraction(-1, 2), 1])
    assert bernoulli_polynomial(2)(Fraction(0)) == Fraction(1, 6)
    b4 = bernoulli_polynomial(4)
    assert b4(Fraction(1)) - b4(Fraction(0)) == 0


@given(
    st.integers(min_value=1, max_value=25),
    st.fractions(min_value=-3, max_value=3, max_denominator=50),
)
def test_bernoulli_polynomial_difference_identity(n, x):
    p = bernoulli_polynomial(n)
    assert p(x + 1) - p(x) == n * x ** (n - 1)


@given(st.integers(min_value=0, max_value=40))
def test_bernoulli_polynomial_constant_term(n):
    assert bernoulli_polynomial(n)(Fraction(0)) == bernoulli_number(n)


def test_rational_polynomial_trims_and_degree():
    p = RationalPolynomial([1, 2, 0, 0])
    assert p.degree == 1
    assert p.coefficients == (Fraction(1), Fraction(2))
    assert RationalPolynomial([0, 0]).degree == 0
    assert p.derivative() == RationalPolynomial([2])
    assert p.antiderivative() == RationalPolynomial([0, 1, 1])


def test_norlund_examples():
    assert norlund_polynomial(0, Fraction(7, 3), Fraction(-5, 2)) == 1
    assert norlund_polynomial(4, 1, 0) == Fraction(-1, 30)


def test_norlund_first_order_closed_form():
    # B_1^(alpha)(x) = x - alpha/2 straight from the generating function
    for alpha in (Fraction(-2), Fraction(3, 7), Fraction(5)):
        for x in (Fraction(0), Fraction(1, 3)):
            assert norlund_polynomial(1, alpha, x) == x - alpha / 2


def test_norlund_quick_check_value():
    # The Stirling relation S(3,2) = C(3,2) B_1^(-2)(0) = 3 forces B_1^(-2)(0) = 1.
    value = norlund_polynomial(1, -2, 0)
    assert value == 1
    assert comb(3, 2) * value == stirling2(3, 2) == 3
    # the alternative value 1/2 would give C(3,2)/2 = 3/2, not an integer count
    assert comb(3, 2) * Fraction(1, 2) != 3


def test_norlund_alpha_two_against_squared_series():
    # (t/(e^t-1))^2 = sum B_n^(2) t^n/n!, so B_n^(2)(0) = sum C(n,k) B_k B_{n-k}
    for n in range(12):
        expected = sum(comb(n, k) * ORACLE_B[k] * ORACLE_B[n - k] for k in range(n + 1))
        assert norlund_polynomial(n, 2, 0) == expected


@settings(max_examples=25, deadline=None)
@given(
    st.integers(min_value=0, max_value=20),
    st.fractions(min_value=-2, max_value=2, max_denominator=30),
)
def test_norlund_alpha_one_is_bernoulli(n, x):
    assert norlund_polynomial(n, 1, x) == bernoulli_polynomial(n)(x)


def test_norlund_coefficients_polynomial():
    p = norlund_coefficients(3, Fraction(1, 2))
    for x in (Fraction(0), Fraction(2, 5)):
        assert p(x) == norlund_polynomial(3, Fraction(1, 2), x)


@pytest.mark.parametrize("n,k,expected", [(3, 2, 3), (5, 2, 15), (7, 7, 1), (10, 3, 9330), (4, 6, 0)])
def test_stirling_examples(n, k, expected):
    assert stirling2(n, k) == expected


def test_stirling_triangle_and_norlund_agree_to_30():
    for n in range(31):
        for k in range(n + 1):
            assert stirling2(n, k) == stirling2_norlund(n, k) == brute_stirling(n, k)


def test_euler_maclaurin_square_exact():
    res = euler_maclaurin_sum(RationalPolynomial([0, 0, 1]), 10, 1)
    assert res.total == 385
    assert res.reference_sum == 385
    assert res.total == res.integral_term + res.endpoint_term + sum(res.correction_terms)


def test_euler_maclaurin_constant():
    res = euler_maclaurin_sum(constant_function(3.0), 5, 0)
    assert res.correction_terms == []
    assert res.total == pytest.approx(15.0, abs=1e-13)


def test_euler_maclaurin_harmonic():
    res = euler_maclaurin_sum(reciprocal_function(), 1000, 3, start=20)
    direct = math.fsum(1.0 / k for k in range(1, 1001))
    assert abs(res.total - direct) < 1e-12
    assert abs(res.reference_sum - direct) < 1e-15


@settings(max_examples=30, deadline=None)
@given(
    st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=9), min_size=1, max_size=8),
    st.integers(min_value=1, max_value=30),
)
def test_euler_maclaurin_polynomials_exact(coeffs, N):
    p = RationalPolynomial(coeffs)
    M = (p.degree + 1) // 2 + 1
    res = euler_maclaurin_sum(p, N, M)
    assert res.total == sum(p(Fraction(k)) for k in range(1, N + 1))


def test_euler_maclaurin_numeric_derivative_flagged():
    res = euler_maclaurin_sum(lambda x: x**3, 12, 2)
    assert res.exact_derivatives is False
    assert res.total == pytest.approx(sum(k**3 for k in range(1, 13)), rel=1e-7)
    analytic = euler_maclaurin_sum(power_function(3), 12, 2)
    assert analytic.exact_derivatives is True
    assert analytic.total == pytest.approx(6084.0, rel=1e-13)
