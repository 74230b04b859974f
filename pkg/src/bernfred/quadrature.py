"""Quadrature rules, circle/Hankel contour integrals and the analytic Stirling kernel."""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Callable, Optional

import numpy as np

__all__ = [
    "QuadratureRule",
    "CircularContour",
    "ContourEvaluationError",
    "gauss_legendre",
    "contour_integral",
    "loggamma",
    "analytic_stirling_kernel",
    "stirling_continuation",
    "default_stirling_contour",
]


class ContourEvaluationError(ArithmeticError):
    pass


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    a: float
    b: float

    @property
    def domain(self) -> tuple[float, float]:
        return (self.a, self.b)

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]):
        return np.dot(self.weights, f(self.nodes))

    def __len__(self) -> int:
        return len(self.nodes)


@lru_cache(maxsize=64)
def _legendre_reference(n: int) -> tuple[np.ndarray, np.ndarray]:
    # Newton on P_n from Chebyshev-type initial guesses; all roots at once.
    k = np.arange(1, n + 1)
    x = np.cos(np.pi * (k - 0.25) / (n + 0.5))
    for _ in range(100):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for j in range(2, n + 1):
            p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
        dp = n * (x * p1 - p0) / (x * x - 1.0)
        dx = p1 / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    else:
        raise ArithmeticError(f"Gauss-Legendre Newton iteration did not converge for n={n}")
    # derivative at the converged roots
    p0 = np.ones_like(x)
    p1 = x.copy()
    for j in range(2, n + 1):
        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    x, w = x[order], w[order]
    # enforce exact symmetry
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def gauss_legendre(n: int, a: float = -1.0, b: float = 1.0) -> QuadratureRule:
    """n-point Gauss-Legendre rule on (a, b); exact for polynomials of degree <= 2n-1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not a < b:
        raise ValueError("need a < b")
    t, w = _legendre_reference(n)
    half = 0.5 * (b - a)
    return QuadratureRule(a + half * (t + 1.0), half * w, float(a), float(b))


@dataclass(frozen=True)
class CircularContour:
    """Circle ``|z| = radius`` sampled at ``node_count`` equispaced angles.

    ``offset`` rotates the node set (as a fraction of one angular step).
    """

    radius: float = 1.0
    node_count: int = 256
    offset: float = 0.0

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        if self.radius >= 2 * math.pi:
            raise ValueError("radius must stay below 2*pi (zeros of e^z - 1)")
        if self.node_count < 2 or self.node_count % 2:
            raise ValueError("node_count must be a positive even integer")

    def nodes(self) -> np.ndarray:
        theta = 2 * np.pi * (np.arange(self.node_count) + self.offset) / self.node_count
        return self.radius * np.exp(1j * theta)


def contour_integral(integrand: Callable[[np.ndarray], np.ndarray], contour: CircularContour) -> complex:
    """``(1/2 pi i) * closed integral`` over the circle by the trapezoid rule.

    Spectrally accurate for integrands analytic in an annulus around the circle.
    """
    z = contour.nodes()
    values = np.asarray(integrand(z), dtype=complex)
    bad = ~np.isfinite(values)
    if bad.any():
        idx = int(np.flatnonzero(bad)[0])
        raise ContourEvaluationError(f"non-finite integrand at node {idx}, z = {z[idx]!r}")
    # dz = i z dtheta, so (1/2 pi i) * sum f(z) i z (2 pi / N) = mean(f(z) z)
    return complex(np.sum(values * z) / contour.node_count)


# ---------------------------------------------------------------------------
# log-Gamma, Lanczos g=7 with 9 coefficients

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)


def loggamma(z: complex) -> complex:
    """log Gamma(z) for complex z (branch not normalized; exp() of it is Gamma)."""
    z = complex(z)
    if z.real < 0.5:
        # reflection
        return complex(math.log(math.pi)) - cmath.log(cmath.sin(math.pi * z)) - loggamma(1.0 - z)
    z -= 1.0
    x = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


# ---------------------------------------------------------------------------
# analytic Stirling kernel


def default_stirling_contour(n: int, t: int, node_count: int = 256) -> CircularContour:
    """Circle whose radius roughly minimizes max|(e^z-1)^t / z^(n+1)| on it.

    Radius 1 loses about log10(n!/t!) digits to cancellation for large n/t, so
    the radius follows the saddle point, clamped to [1, 6].
    """
    radii = np.linspace(1.0, 6.0, 501)
    cost = t * np.log(np.expm1(radii)) - (n + 1) * np.log(radii)
    return CircularContour(float(radii[np.argmin(cost)]), node_count)


def stirling_continuation(s: complex, t: int) -> complex:
    """Closed form ``(1/t!) sum_j (-1)^(t-j) C(t,j) j^s`` of the continued Stirling numbers."""
    if t < 0 or int(t) != t:
        raise ValueError("t must be a nonnegative integer")
    total = 0j
    for j in range(1, t + 1):
        total += (-1) ** (t - j) * comb(t, j) * cmath.exp(s * math.log(j))
    if t == 0:
        return 1.0 + 0j if s == 0 else 0j
    return total / math.factorial(t)


def _hankel_integral(s: complex, t: int, radius: float, node_count: int) -> complex:
    """(1/2 pi i) over a Hankel contour of ((e^z-1)^t - (-1)^t) z^(-s-1).

    The constant (-1)^t is subtracted so the ray integrands decay like e^{-x};
    for Re(s) > 0 it integrates to zero on its own, and the subtracted form is
    the analytic continuation elsewhere.
    """
    from_rays = node_count // 2
    on_circle = node_count - from_rays

    def g(z):
        return np.expm1(z) ** t - (-1.0) ** t

    # circle part: (1/2 pi) int_{-pi}^{pi} g(r e^{i th}) (r e^{i th})^{-s} dth
    circ = gauss_legendre(on_circle, -math.pi, math.pi)
    z = radius * np.exp(1j * circ.nodes)
    circle_part = np.sum(circ.weights * g(z) * np.exp(-s * (math.log(radius) + 1j * circ.nodes)))
    circle_part /= 2 * math.pi

    # rays above and below the cut combine to sin(pi(s+1))/pi * int_r^L g(-x) x^{-s-1} dx
    ray_length = 45.0
    panels = 3
    edges = radius + ray_length * (np.arange(panels + 1) / panels) ** 2
    ray_part = 0j
    per_panel = max(8, from_rays // panels)
    for lo, hi in zip(edges[:-1], edges[1:]):
        rule = gauss_legendre(per_panel, lo, hi)
        x = rule.nodes
        ray_part += np.sum(rule.weights * g(-x) * np.exp((-s - 1) * np.log(x)))
    ray_part *= cmath.sin(math.pi * (s + 1)) / math.pi
    return complex(circle_part + ray_part)


def analytic_stirling_kernel(
    s: complex, t: int, contour: Optional[CircularContour] = None
) -> complex:
    """``Gamma(s+1)/Gamma(t+1) * (1/2 pi i) oint (e^z - 1)^t / z^(s+1) dz``.

    For integer ``s >= 0`` the contour is a circle and the result is the
    Stirling number ``S(s, t)``.  For non-integer ``s`` the circle is replaced
    by a Hankel contour (principal branch of ``z^{-s-1}``, cut on the negative
    axis) of the same radius and node budget.  Only integer ``t`` is supported:
    for non-integer ``t`` the integrand has a branch point inside any small
    circle and the integral is not well defined without a branch prescription.
    """
    if isinstance(t, float) and t.is_integer():
        t = int(t)
    if not isinstance(t, (int, np.integer)) or t < 0:
        raise ValueError(f"unsupported t={t!r}: only nonnegative integer t is supported")
    t = int(t)
    s = complex(s)
    integer_s = s.imag == 0 and s.real.is_integer()
    if integer_s and s.real < 0:
        raise ValueError("Gamma(s+1) has a pole at negative integer s")

    if integer_s:
        n = int(s.real)
        if contour is None:
            contour = default_stirling_contour(n, t)
        z = contour.nodes()
        step_offset = contour.offset
        if np.any(np.abs(np.expm1(z)) < 1e-12):
            warnings.warn("contour node near a zero of e^z - 1; shifting nodes by half a step")
            contour = CircularContour(contour.radius, contour.node_count, step_offset + 0.5)
        integral = contour_integral(lambda z: np.expm1(z) ** t / z ** (n + 1), contour)
    else:
        if contour is None:
            contour = CircularContour(1.0, 256)
        integral = _hankel_integral(s, t, contour.radius, contour.node_count)

    ratio = cmath.exp(loggamma(s + 1) - loggamma(t + 1))
    return ratio * integral
