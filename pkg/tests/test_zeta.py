import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bernfred.combinatorics import bernoulli_polynomial
from bernfred.fredholm import build_nystrom, green_dirichlet_kernel, min_kernel, system_det
from bernfred.quadrature import loggamma
from bernfred.zeta import (
    BoundaryCondition,
    PoleError,
    det_ratio,
    det_zeta_laplacian,
    glaisher_constant,
    hurwitz_zeta,
    log_det_zeta_laplacian,
    log_sinc_series,
    riemann_zeta,
    zeta_derivative,
    zeta_even,
)

mpmath = pytest.importorskip("mpmath")


def reflected_zeta(s):
    """Oracle: zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s), with zeta(1-s) from the alternating eta series."""
    a = 1 - s
    eta = mpmath.nsum(lambda k: (-1) ** (k + 1) * k ** (-a), [1, mpmath.inf])
    tail = eta / (1 - 2 ** (1 - a))
    return complex(2**s * mpmath.pi ** (s - 1) * mpmath.sin(mpmath.pi * s / 2) * mpmath.gamma(1 - s) * tail)


def test_examples():
    assert abs(riemann_zeta(2).real - math.pi**2 / 6) < 1e-12
    assert abs(riemann_zeta(2).real - zeta_even(1)) < 1e-12
    assert abs(riemann_zeta(-1).real + 1 / 12) < 1e-15
    assert abs(riemann_zeta(0).real + 0.5) < 1e-15


def test_pole():
    with pytest.raises(PoleError):
        riemann_zeta(1)
    with pytest.raises(PoleError):
        hurwitz_zeta(1, 0.5)
    with pytest.raises(ValueError):
        hurwitz_zeta(2, 0.0)


@pytest.mark.parametrize("s", [-7.5, -2.5, -0.5, 0.5, 2.5, 3.0])
def test_reflection_oracle(s):
    ref = reflected_zeta(s) if s < 0.5 else complex(mpmath.zeta(s))
    assert abs(riemann_zeta(s).value - ref) < 1e-12 * max(1, abs(ref))


@pytest.mark.parametrize("s", [-29.5, -17.25, -3.1, 0.25, 1.5, 12.0, 29.0, 3 + 4j, 0.5 + 14.134725j, -2 + 3j])
def test_accuracy_up_to_thirty(s):
    ref = complex(mpmath.zeta(s))
    assert abs(riemann_zeta(s).value - ref) <= 1e-12 * max(1, abs(ref))


def test_hurwitz_reductions():
    assert abs(hurwitz_zeta(3, 1.0).value - riemann_zeta(3).value) < 1e-13
    assert abs(hurwitz_zeta(2, 0.5).real - math.pi**2 / 2) < 1e-11


def test_hurwitz_half_direct_sum():
    # 10^7-term direct sum plus the integral/endpoint tail as an independent oracle
    k = np.arange(10**7, dtype=float) + 0.5
    head = math.fsum(1.0 / k**2)
    end = 10**7 + 0.5
    tail = 1 / end + 0.5 / end**2 + 1 / (6 * end**3)
    assert abs(hurwitz_zeta(2, 0.5).real - (head + tail)) < 1e-11


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=8), st.floats(min_value=0.01, max_value=2.0))
def test_hurwitz_negative_integers(n, x):
    poly = bernoulli_polynomial(n + 1)
    expected = -float(poly(Fraction(x))) / (n + 1)
    assert abs(hurwitz_zeta(-n, x).real - expected) < 1e-11


def test_error_heuristic_is_last_term_and_shrinks():
    errs = [riemann_zeta(0.5, N=N, M=M).error_heuristic for N, M in ((5, 2), (10, 4), (20, 8))]
    assert errs[0] > errs[1] > errs[2]
    ev = riemann_zeta(0.5, N=5, M=2)
    # last correction: B_4/4! (s)_3 (N+1)^(-s-3)
    s = 0.5
    last = (1 / 30) / 24 * s * (s + 1) * (s + 2) * 6 ** (-s - 3)
    assert ev.error_heuristic == pytest.approx(last, rel=1e-12)


def test_derivatives():
    assert abs(zeta_derivative(0.0) + 0.5 * math.log(2 * math.pi)) < 1e-9
    assert abs(zeta_derivative(-1.0) + 0.1654211437) < 1e-8
    # differentiated series at s = 2: -sum log k / k^2
    k = np.arange(1, 10**6 + 1, dtype=float)
    head = -math.fsum(np.log(k) / k**2)
    n = 10**6
    tail = -(math.log(n) + 1) / n  # -int_n^inf log x / x^2 dx
    assert abs(zeta_derivative(2.0) - (head + tail)) < 1e-6


def test_derivative_against_complex_step():
    for s0 in (-2.5, 0.5, 3.0):
        h = 1e-20
        complex_step = riemann_zeta(complex(s0, h)).value.imag / h
        assert abs(zeta_derivative(s0) - complex_step) < 1e-9


def test_laplacian_determinants():
    dd = det_zeta_laplacian(BoundaryCondition.DD)
    assert abs(dd - 2.0) < 1e-9
    assert det_zeta_laplacian("NN") == dd
    assert abs(det_zeta_laplacian("DN") - 2.0) < 1e-9
    assert det_zeta_laplacian("ND") == det_zeta_laplacian("DN")


def test_dirichlet_determinant_is_not_two_pi():
    # zeta_L(s) = pi^(-2s) zeta(2s): zeta_L'(0) = -2 log(pi) zeta(0) + 2 zeta'(0) = log(pi) - log(2 pi)
    assert abs(log_det_zeta_laplacian("DD") - math.log(2)) < 1e-9
    assert abs(det_zeta_laplacian("DD") - 2 * math.pi) > 4


def test_mixed_determinant_high_precision_oracle():
    mpmath.mp.dps = 30
    try:
        zl = lambda s: mpmath.pi ** (-2 * s) * (2 ** (2 * s) - 1) * mpmath.zeta(2 * s)  # noqa: E731
        ref = float(mpmath.exp(-mpmath.diff(zl, 0)))
    finally:
        mpmath.mp.dps = 15
    assert abs(det_zeta_laplacian("DN") - ref) < 1e-9


def test_det_ratio_examples():
    assert det_ratio(0.0, "DD") == 1.0
    assert abs(det_ratio(math.pi**2, "DD")) < 1e-15
    n = np.arange(1, 10**6 + 1, dtype=float)
    product = float(np.exp(np.sum(np.log1p(1 / (n * math.pi) ** 2))))
    assert abs(det_ratio(-1.0, "DD") - product) < 1e-6
    assert abs(det_ratio(-1.0, "DD") - math.sinh(1.0)) < 1e-15
    assert abs(det_ratio(-4.0, "DN") - math.cosh(2.0)) < 1e-15


@given(st.floats(min_value=-2e-6, max_value=2e-6))
def test_det_ratio_continuous_at_zero(lam):
    assert abs(det_ratio(lam, "DD") - (1 - lam / 6)) < 1e-12
    assert abs(det_ratio(lam, "DN") - (1 - lam / 2)) < 1e-11


@pytest.mark.parametrize("lam", [1.0, 4.0, 9.0])
def test_fredholm_bridge(lam):
    dd = build_nystrom(green_dirichlet_kernel(), 128)
    mx = build_nystrom(min_kernel(), 128)
    assert abs(system_det(dd, lam, minus=True).value - det_ratio(lam, "DD")) < 1e-7
    assert abs(system_det(mx, lam, minus=True).value - det_ratio(lam, "DN")) < 1e-7


def test_zeta_even():
    assert abs(zeta_even(1) - math.pi**2 / 6) < 1e-15
    assert abs(zeta_even(2) - math.pi**4 / 90) < 1e-15
    assert abs(zeta_even(2) - math.fsum(1 / k**4 for k in range(1, 200001)) - 1 / (3 * 200000**3)) < 1e-15
    assert abs(zeta_even(10) - riemann_zeta(20).real) < 1e-13
    for m in range(1, 16):
        assert abs(zeta_even(m) - riemann_zeta(2 * m).real) <= 1e-12 * zeta_even(m)
    with pytest.raises(ValueError):
        zeta_even(51)


def test_log_sinc_series():
    series = log_sinc_series(20)
    assert abs(series.evaluate(1.0) - math.log(math.sin(1.0))) < 1e-10
    short = log_sinc_series(4)
    x = 0.5
    assert abs(short.evaluate(x) - math.log(math.sin(x) / x)) <= short.next_term_bound(x)
    assert series.sinc_sqrt_taylor[1] == Fraction(-1, 6)
    assert series.sinc_sqrt_taylor[2] == Fraction(1, 120)
    assert series.bernoulli_claim[1] == Fraction(-1, 12)
    assert 1 in series.mismatches
    with pytest.raises(ValueError):
        log_sinc_series(51)


def test_glaisher():
    rep = glaisher_constant()
    assert abs(rep.A - 1.2824271291) < 1e-9
    assert abs(rep.zeta_prime_minus_one + 0.1654211437) < 1e-9
    assert abs(rep.formula_residual + 0.261) < 1e-3
    # partial products prod_{k<=n} k^k / (n^(n^2/2+n/2+1/12) e^(-n^2/4)) tend to A
    n = 2000
    log_h = math.fsum(k * math.log(k) for k in range(1, n + 1))
    log_a = log_h - (n * n / 2 + n / 2 + 1 / 12) * math.log(n) + n * n / 4
    assert abs(math.exp(log_a) - rep.A) < 1e-7


def test_lanczos_consistent_with_zeta_functional_equation():
    s = -3.5
    rhs = 2**s * math.pi ** (s - 1) * math.sin(math.pi * s / 2) * np.exp(loggamma(1 - s)).real * riemann_zeta(1 - s).real
    assert abs(riemann_zeta(s).real - rhs) < 1e-13
