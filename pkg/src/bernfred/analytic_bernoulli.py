"""The analytic Bernoulli function ``B(s; x) = -s zeta(1 - s, x)``.

At integer ``s = n >= 1`` it reduces to the Bernoulli polynomial ``B_n(x)``.
For ``s > 1`` and ``0 < x < 1`` it also has the Fourier form

    B(s; x) = -Gamma(s+1) sum_{n != 0} exp(2 pi i n x) / (2 pi i n)^s

with ``(2 pi i n)^s = exp(s (log(2 pi |n|) + i pi/2 sign n))``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .quadrature import loggamma
from .zeta import hurwitz_zeta

__all__ = ["AnalyticBernoulliValue", "ConvergenceError", "analytic_bernoulli", "fourier_bernoulli"]


class ConvergenceError(ValueError):
    """Fourier series requested outside absolute convergence."""


@dataclass(frozen=True)
class AnalyticBernoulliValue:
    s: complex
    x: float
    value: complex
    route: str
    tail_bound: Optional[float] = None

    @property
    def real(self) -> float:
        return self.value.real


def analytic_bernoulli(s, x: float) -> AnalyticBernoulliValue:
    """Hurwitz route; ``|s| < 1e-6`` returns the limit value 1."""
    if not x > 0:
        raise ValueError("x must be positive")
    s = complex(s)
    if abs(s) < 1e-6:
        return AnalyticBernoulliValue(s, float(x), 1.0 + 0j, "hurwitz")
    value = -s * hurwitz_zeta(1.0 - s, x).value
    if s.imag == 0:
        value = complex(value.real, 0.0)
    return AnalyticBernoulliValue(s, float(x), value, "hurwitz")


def fourier_bernoulli(s: float, x: float, N: int) -> AnalyticBernoulliValue:
    """Symmetric partial Fourier sum over ``0 < |n| <= N``.

    ``tail_bound`` is ``2 Gamma(s+1) sum_{n>N} (2 pi n)^{-s}``, the sum of the
    absolute values of the dropped terms.
    """
    s = float(s)
    if not s > 1:
        raise ConvergenceError("the Fourier series converges absolutely only for s > 1")
    if not 0 < x < 1:
        raise ValueError("x must lie in (0, 1)")
    if N < 10:
        raise ValueError("N must be >= 10")
    n = np.arange(1, N + 1, dtype=float)
    mag = np.exp(-s * np.log(2 * math.pi * n))
    rot = cmath.exp(-0.5j * math.pi * s)
    # n and -n terms are complex conjugates
    terms = mag * np.exp(2j * math.pi * n * x) * rot
    total = 2.0 * math.fsum(np.real(terms)[::-1])
    gamma = math.exp(loggamma(s + 1).real)
    value = -gamma * total
    tail_sum = (2 * math.pi) ** (-s) * hurwitz_zeta(s, N + 1.0).value.real
    return AnalyticBernoulliValue(complex(s), float(x), complex(value, 0.0), "fourier", 2.0 * gamma * tail_sum)
