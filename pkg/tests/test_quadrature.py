import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bernfred.combinatorics import stirling2
from bernfred.quadrature import (
    CircularContour,
    ContourEvaluationError,
    analytic_stirling_kernel,
    contour_integral,
    gauss_legendre,
    loggamma,
    stirling_continuation,
)


def test_one_point_rule():
    r = gauss_legendre(1, 0.0, 1.0)
    assert r.nodes.tolist() == [0.5]
    assert r.weights.tolist() == [1.0]


def test_two_point_rule():
    r = gauss_legendre(2)
    assert np.allclose(r.nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)], atol=1e-15)
    assert np.allclose(r.weights, [1.0, 1.0], atol=1e-15)


def test_odd_monomial_vanishes():
    assert abs(gauss_legendre(3).integrate(lambda x: x**5)) < 1e-15


@pytest.mark.parametrize("n", [5, 17, 40, 101])
def test_rule_matches_numpy(n):
    x, w = np.polynomial.legendre.leggauss(n)
    r = gauss_legendre(n)
    assert np.max(np.abs(r.nodes - x)) < 1e-14
    assert np.max(np.abs(r.weights - w)) < 1e-14


@pytest.mark.parametrize("n", range(1, 21))
def test_monomial_exactness(n):
    a, b = -0.3, 1.7
    r = gauss_legendre(n, a, b)
    for k in range(2 * n):
        exact = (b ** (k + 1) - a ** (k + 1)) / (k + 1)
        assert abs(r.integrate(lambda x: x**k) - exact) <= 1e-13 * max(1.0, abs(exact))


@settings(deadline=None)
@given(
    st.integers(min_value=1, max_value=80),
    st.floats(min_value=-10, max_value=10),
    st.floats(min_value=0.01, max_value=20),
)
def test_rule_invariants(n, a, width):
    r = gauss_legendre(n, a, a + width)
    assert abs(r.weights.sum() - width) <= 1e-13 * width
    assert np.all(np.diff(r.nodes) > 0)
    assert r.nodes[0] > a and r.nodes[-1] < a + width
    assert np.all(r.weights > 0)


def test_rule_arguments_validated():
    with pytest.raises(ValueError):
        gauss_legendre(0)
    with pytest.raises(ValueError):
        gauss_legendre(3, 1.0, 1.0)


def test_contour_validation():
    with pytest.raises(ValueError):
        CircularContour(2 * math.pi, 64)
    with pytest.raises(ValueError):
        CircularContour(1.0, 63)
    with pytest.raises(ValueError):
        CircularContour(-1.0, 64)


def test_contour_examples():
    c = CircularContour(0.5, 64)
    assert abs(contour_integral(lambda z: 1 / z, c) - 1) < 1e-14
    assert abs(contour_integral(lambda z: np.exp(z) / z**2, c) - 1) < 1e-12
    assert abs(contour_integral(lambda z: z**3, c)) < 1e-14


@pytest.mark.parametrize("k", range(-5, 6))
def test_contour_monomials(k):
    c = CircularContour(0.8, 64)
    value = contour_integral(lambda z: z**k, c)
    assert abs(value - (1.0 if k == -1 else 0.0)) < 1e-12


def test_contour_reports_bad_node():
    c = CircularContour(1.0, 8)

    def f(z):
        out = np.ones_like(z)
        out[3] = np.nan
        return out

    with pytest.raises(ContourEvaluationError, match="node 3"):
        contour_integral(f, c)


def test_loggamma_against_factorials_and_reflection():
    for n in range(1, 25):
        assert abs(loggamma(n).real - math.lgamma(n)) < 1e-12 * max(1, math.lgamma(n))
    # Gamma(1/2) = sqrt(pi); Gamma(z) Gamma(1-z) = pi / sin(pi z)
    assert abs(np.exp(loggamma(0.5)) - math.sqrt(math.pi)) < 1e-14
    z = 0.3 + 0.7j
    lhs = np.exp(loggamma(z) + loggamma(1 - z))
    rhs = math.pi / np.sin(math.pi * z)
    assert abs(lhs - rhs) < 1e-13 * abs(rhs)


def test_loggamma_matches_mpmath():
    mpmath = pytest.importorskip("mpmath")
    for z in (0.1 + 3j, 7.5 - 2j, -3.3 + 0.2j, 15 + 15j):
        ref = complex(mpmath.gamma(z))
        got = np.exp(loggamma(z))
        assert abs(got - ref) <= 1e-13 * abs(ref)


def test_stirling_kernel_examples():
    assert abs(analytic_stirling_kernel(3, 2) - 3) < 1e-10
    assert abs(analytic_stirling_kernel(4, 4) - 1) < 1e-10


def test_stirling_kernel_table():
    for n in range(13):
        for k in range(n + 1):
            exact = stirling2(n, k)
            got = analytic_stirling_kernel(n, k)
            if exact:
                assert abs(got - exact) <= 1e-8 * exact
            else:
                assert abs(got) < 1e-8


def test_stirling_kernel_non_integer_s_self_consistent():
    v128 = analytic_stirling_kernel(2.5, 2, CircularContour(1.0, 128))
    v256 = analytic_stirling_kernel(2.5, 2, CircularContour(1.0, 256))
    assert abs(v256 - v128) < 1e-9 * abs(v256)
    # the finite-difference closed form continues S(s, t) to real s
    assert abs(v256 - stirling_continuation(2.5, 2)) < 1e-10


def test_stirling_kernel_complex_s():
    s = 1.7 + 0.6j
    value = analytic_stirling_kernel(s, 3)
    assert abs(value - stirling_continuation(s, 3)) < 1e-10 * abs(value)


def test_stirling_kernel_refinement_gain():
    coarse = analytic_stirling_kernel(8, 3, CircularContour(1.0, 8))
    mid = analytic_stirling_kernel(8, 3, CircularContour(1.0, 16))
    fine = analytic_stirling_kernel(8, 3, CircularContour(1.0, 32))
    assert abs(fine - mid) < 1e-3 * abs(mid - coarse)


def test_stirling_kernel_rejects_bad_t():
    with pytest.raises(ValueError, match="integer"):
        analytic_stirling_kernel(3, 1.5)
    with pytest.raises(ValueError):
        analytic_stirling_kernel(-2, 1)


def test_stirling_kernel_node_near_root_shifts():
    # radius ~ 2 pi / 1.0000001 puts a node almost on the root z = 2 pi i
    r = 2 * math.pi * (1 - 1e-14)
    contour = CircularContour(r, 4, offset=1.0)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        analytic_stirling_kernel(2, 1, contour)
    assert any("half a step" in str(w.message) for w in caught)
