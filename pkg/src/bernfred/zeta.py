"""Riemann/Hurwitz zeta by Euler-Maclaurin continuation and 1-D spectral determinants.

The Euler-Maclaurin tail reuses the exact Bernoulli table:

    zeta(s, x) = sum_{k<N} (k+x)^{-s} + (N+x)^{1-s}/(s-1) + (N+x)^{-s}/2
                 + sum_{m=1}^{M} B_{2m}/(2m)! (s)_{2m-1} (N+x)^{-s-2m+1}

where ``(s)_{j} = s (s+1) ... (s+j-1)``.  It is valid for ``Re s > 1 - 2M``.
"""

from __future__ import annotations

import cmath
import decimal
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Optional, Union

from .combinatorics import bernoulli_number

__all__ = [
    "ZetaEvaluation",
    "PoleError",
    "BoundaryCondition",
    "riemann_zeta",
    "hurwitz_zeta",
    "zeta_derivative",
    "det_zeta_laplacian",
    "log_det_zeta_laplacian",
    "det_ratio",
    "zeta_even",
    "LogSincSeries",
    "log_sinc_series",
    "GlaisherReport",
    "glaisher_constant",
]

Number = Union[int, float, complex]


class PoleError(ZeroDivisionError):
    """Evaluation at s = 1."""


@dataclass(frozen=True)
class ZetaEvaluation:
    s: complex
    value: complex
    N_terms: int
    M_corrections: int
    error_heuristic: float

    @property
    def real(self) -> float:
        return self.value.real


_coeff_cache: dict[int, float] = {}


def _em_coefficient(m: int) -> float:
    c = _coeff_cache.get(m)
    if c is None:
        c = float(bernoulli_number(2 * m) / factorial(2 * m))
        _coeff_cache[m] = c
    return c


def _em_zeta(s: complex, x: float, N: int, M: int) -> ZetaEvaluation:
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    terms = [cmath.exp(-s * math.log(k + x)) for k in range(N)]
    direct = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
    base = N + x
    log_base = math.log(base)
    value = direct + cmath.exp((1 - s) * log_base) / (s - 1) + 0.5 * cmath.exp(-s * log_base)
    rising = s  # (s)_{2m-1}
    power = cmath.exp((-s - 1) * log_base)  # base^{-s-2m+1} at m = 1
    last = 0.0
    for m in range(1, M + 1):
        term = _em_coefficient(m) * rising * power
        value += term
        last = abs(term)
        rising *= (s + 2 * m - 1) * (s + 2 * m)
        power /= base * base
    return ZetaEvaluation(s, value, N, M, last)


def _rising_abs(s: complex, j: int) -> float:
    out = 1.0
    for i in range(j):
        out *= abs(s + i)
    return out


def _choose_head(s: complex, x: float, M: int, default: int = 20) -> int:
    """Direct-sum length for ``Re s < 0``.

    There the head terms grow like ``k^{-Re s}`` and cancel against the tail,
    costing roughly ``(N+x)^{1-Re s}`` ulps, so a shorter head is used when the
    first omitted correction still stays small.  At non-positive integers the
    correction series terminates and ``N = 0`` is exact.
    """
    sigma = s.real
    if sigma >= 0:
        return default
    eps = 2.2e-16
    nxt = abs(_em_coefficient(M + 1)) * _rising_abs(s, 2 * M + 1)
    best, best_cost = default, math.inf
    for n in range(default + 1):
        base = n + x
        cost = eps * max(base, 1.0) ** (1.0 - sigma) + nxt * base ** (-sigma - 2 * M - 1)
        if cost < best_cost:
            best, best_cost = n, cost
    return best


def _em_zeta_decimal(s: float, x: float, M: int) -> ZetaEvaluation:
    """Same formula in decimal arithmetic, for real ``s < 0``.

    The head terms grow like ``k^{-s}`` and cancel to a much smaller result,
    so float-64 loses ``(1 - s) log10(N + x)`` digits.  Here the working
    precision absorbs that loss, the head is long enough for the correction
    series to decrease (``2 pi (N + x) > |s| + 2M``), and corrections are
    added until they fall below the target.
    """
    N = 20 + int(math.ceil(-s))
    digits = 30 + int((1.0 - s) * math.log10(N + x + 1.0))
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        D = decimal.Decimal
        ds, dx = D(repr(s)), D(x)
        direct = sum((-ds * (k + dx).ln()).exp() for k in range(N))
        base = N + dx
        log_base = base.ln()
        value = direct + ((1 - ds) * log_base).exp() / (ds - 1) + ((-ds) * log_base).exp() / 2
        rising = ds
        power = ((-ds - 1) * log_base).exp()
        tiny = D(10) ** (-22)
        last = D(0)
        used = 0
        for m in range(1, max(M, 90) + 1):
            b = bernoulli_number(2 * m) / factorial(2 * m)
            term = D(b.numerator) / D(b.denominator) * rising * power
            value += term
            last = abs(term)
            used = m
            if m >= M and last < tiny * max(abs(value), D(1)):
                break
            rising *= (ds + 2 * m - 1) * (ds + 2 * m)
            power /= base * base
        return ZetaEvaluation(complex(s), complex(float(value), 0.0), N, used, float(last))


def riemann_zeta(s: Number, N: Optional[int] = None, M: int = 15) -> ZetaEvaluation:
    """Riemann zeta via Euler-Maclaurin continuation (no reflection formula).

    ``N`` defaults to 20 direct terms.  For ``Re s < 0`` the head is shortened
    (complex s, where integers need no head at all) or the sum switches to
    extended-precision decimal arithmetic (real non-integer s).
    """
    return hurwitz_zeta(s, 1.0, N, M)


def hurwitz_zeta(s: Number, x: float, N: Optional[int] = None, M: int = 15) -> ZetaEvaluation:
    """Hurwitz zeta ``sum_{k>=0} (k + x)^{-s}`` for ``x > 0``."""
    if not x > 0:
        raise ValueError("Hurwitz zeta needs x > 0")
    s = complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    if N is None:
        if s.imag == 0 and s.real < 0 and not s.real.is_integer():
            return _em_zeta_decimal(s.real, float(x), M)
        N = _choose_head(s, float(x), M)
    return _em_zeta(s, float(x), N, M)


def zeta_derivative(s0: float, h: float = 1e-3, x: float = 1.0) -> float:
    """``d/ds zeta(s, x)`` at real ``s0`` by Richardson-extrapolated central differences.

    Steps ``h`` and ``h/2``; the O(h^2) terms cancel, leaving O(h^4).
    """
    if s0 == 1:
        raise PoleError("zeta has a pole at s = 1")

    def z(s):
        return hurwitz_zeta(s, x).value.real

    d1 = (z(s0 + h) - z(s0 - h)) / (2 * h)
    d2 = (z(s0 + h / 2) - z(s0 - h / 2)) / h
    return (4 * d2 - d1) / 3


class BoundaryCondition(str, Enum):
    DD = "DD"
    NN = "NN"
    DN = "DN"
    ND = "ND"


def _bc(bc) -> BoundaryCondition:
    return bc if isinstance(bc, BoundaryCondition) else BoundaryCondition(str(bc).upper())


def log_det_zeta_laplacian(bc) -> float:
    """``-zeta_L'(0)`` for ``-d^2/dx^2`` on (0, 1), reduced to Riemann/Hurwitz values.

    DD and NN: ``zeta_L(s) = pi^{-2s} zeta(2s)``, so
    ``zeta_L'(0) = -2 log(pi) zeta(0) + 2 zeta'(0)``.

    DN and ND: ``zeta_L(s) = pi^{-2s} zeta(2s, 1/2)``, so
    ``zeta_L'(0) = -2 log(pi) zeta(0, 1/2) + 2 zeta'(0, 1/2)``.

    NN follows the eigenvalue list (n pi)^2, n >= 1, with no zero mode.
    """
    bc = _bc(bc)
    x = 1.0 if bc in (BoundaryCondition.DD, BoundaryCondition.NN) else 0.5
    z0 = hurwitz_zeta(0.0, x).value.real
    dz0 = zeta_derivative(0.0, x=x)
    derivative = -2.0 * math.log(math.pi) * z0 + 2.0 * dz0
    return -derivative


def det_zeta_laplacian(bc) -> float:
    """``Det_zeta L = exp(-zeta_L'(0))`` for the four boundary conditions."""
    return math.exp(log_det_zeta_laplacian(bc))


def det_ratio(lam: float, bc) -> float:
    """``Det(L - lam) / Det L``: ``sin(sqrt lam)/sqrt lam`` (DD, NN) or ``cos(sqrt lam)`` (DN, ND).

    Continued to ``lam < 0`` through sinh/cosh; the removable point at 0 uses
    the Taylor series for ``|lam| < 1e-6``.
    """
    bc = _bc(bc)
    lam = float(lam)
    if bc in (BoundaryCondition.DD, BoundaryCondition.NN):
        if abs(lam) < 1e-6:
            return 1.0 - lam / 6.0 + lam * lam / 120.0
        if lam > 0:
            r = math.sqrt(lam)
            return math.sin(r) / r
        r = math.sqrt(-lam)
        return math.sinh(r) / r
    if lam >= 0:
        return math.cos(math.sqrt(lam))
    return math.cosh(math.sqrt(-lam))


def zeta_even(m: int) -> float:
    """``zeta(2m) = (-1)^{m+1} B_{2m} (2 pi)^{2m} / (2 (2m)!)`` from the exact Bernoulli number."""
    if not 1 <= m <= 50:
        raise ValueError("m must lie in 1..50")
    ratio = Fraction((-1) ** (m + 1)) * bernoulli_number(2 * m) / (2 * factorial(2 * m))
    return float(ratio) * (2 * math.pi) ** (2 * m)


@dataclass(frozen=True)
class LogSincSeries:
    """Coefficients of ``log(sin x / x) = sum_m log_coefficients[m-1] x^{2m}``.

    ``sinc_sqrt_taylor[m]`` is the ``lam^m`` coefficient of ``sin(sqrt lam)/sqrt lam``;
    ``bernoulli_claim[m]`` is ``(-1)^m B_{2m}/(2m)!`` for comparison.
    """

    log_coefficients: list
    sinc_sqrt_taylor: list
    bernoulli_claim: list

    def evaluate(self, x: float) -> float:
        return math.fsum(c * x ** (2 * (m + 1)) for m, c in enumerate(self.log_coefficients))

    def next_term_bound(self, x: float) -> float:
        m = len(self.log_coefficients) + 1
        # zeta(2m) <= zeta(2) bounds every further coefficient ratio
        return riemann_zeta(2 * m).real / (m * math.pi ** (2 * m)) * x ** (2 * m) / (1 - (x / math.pi) ** 2)

    @property
    def mismatches(self) -> list[int]:
        return [m for m in range(1, len(self.sinc_sqrt_taylor)) if self.sinc_sqrt_taylor[m] != self.bernoulli_claim[m]]


def log_sinc_series(M: int) -> LogSincSeries:
    """``c_m = -zeta(2m) / (m pi^{2m})`` for m = 1..M, plus the sinc Taylor comparison."""
    if not 1 <= M <= 50:
        raise ValueError("M must lie in 1..50")
    logs = [-zeta_even(m) / (m * math.pi ** (2 * m)) for m in range(1, M + 1)]
    taylor = [Fraction((-1) ** m, factorial(2 * m + 1)) for m in range(M + 1)]
    claim = [Fraction(1)] + [(-1) ** m * bernoulli_number(2 * m) / factorial(2 * m) for m in range(1, M + 1)]
    return LogSincSeries(logs, taylor, claim)


@dataclass(frozen=True)
class GlaisherReport:
    A: float
    zeta_prime_minus_one: float
    displayed_A: float
    displayed_A_residual: float
    formula_residual: float


DISPLAYED_GLAISHER = 1.2824271291


def glaisher_constant() -> GlaisherReport:
    """``A = exp(1/12 - zeta'(-1))`` and the residual of ``zeta'(-1) = -(1/12) log 2 pi + log A``."""
    dz = zeta_derivative(-1.0)
    A = math.exp(1.0 / 12.0 - dz)
    formula = dz + math.log(2 * math.pi) / 12.0 - math.log(A)
    return GlaisherReport(A, dz, DISPLAYED_GLAISHER, A - DISPLAYED_GLAISHER, formula)
