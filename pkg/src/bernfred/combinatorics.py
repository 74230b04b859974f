"""Exact rational combinatorics: Bernoulli, Norlund and Stirling numbers.

Everything here works over :class:`fractions.Fraction`; floats only appear in
:func:`euler_maclaurin_sum` when the summand is an ordinary Python callable.

Bernoulli convention: ``B_1 = -1/2``, the value produced by the generating
function ``t e^{xt} / (e^t - 1)``.  Some references use ``+1/2`` instead.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Optional, Sequence, Union

from .quadrature import gauss_legendre

__all__ = [
    "BERNOULLI_CAP",
    "CapExceededError",
    "RationalPolynomial",
    "EulerMaclaurinResult",
    "bernoulli_number",
    "bernoulli_polynomial",
    "norlund_polynomial",
    "norlund_coefficients",
    "stirling2",
    "stirling2_norlund",
    "euler_maclaurin_sum",
    "SmoothFunction",
    "power_function",
    "reciprocal_function",
    "constant_function",
]

BERNOULLI_CAP = 200

RationalLike = Union[int, Fraction]


class CapExceededError(ValueError):
    """Requested index is above the configured table cap."""


def _check_cap(n: int, cap: Optional[int]) -> None:
    if n < 0:
        raise ValueError(f"index must be nonnegative, got {n}")
    limit = BERNOULLI_CAP if cap is None else cap
    if n > limit:
        raise CapExceededError(f"index {n} exceeds cap {limit}")


class RationalPolynomial:
    """Dense polynomial with Fraction coefficients, ``coefficients[k]`` multiplies x**k."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Sequence[RationalLike]):
        coeffs = [Fraction(c) for c in coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            coeffs = [Fraction(0)]
        self.coefficients = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        # Horner; stays exact for Fraction/int input
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + (c if isinstance(x, (int, Fraction)) else float(c))
        return acc

    def derivative(self, order: int = 1) -> "RationalPolynomial":
        coeffs = list(self.coefficients)
        for _ in range(order):
            coeffs = [k * coeffs[k] for k in range(1, len(coeffs))] or [Fraction(0)]
        return RationalPolynomial(coeffs)

    def antiderivative(self) -> "RationalPolynomial":
        return RationalPolynomial([0] + [c / (k + 1) for k, c in enumerate(self.coefficients)])

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return RationalPolynomial(
            [(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)]
        )

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + RationalPolynomial([-c for c in other.coefficients])

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPolynomial):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients):
            if c == 0 and self.degree > 0:
                continue
            terms.append(f"{c}" if k == 0 else f"{c}*x^{k}")
        return "RationalPolynomial(" + " + ".join(terms) + ")"


# ---------------------------------------------------------------------------
# Bernoulli numbers

_bernoulli_table: list[Fraction] = []
_bernoulli_lock = threading.Lock()


def _akiyama_tanigawa(n: int) -> list[Fraction]:
    a = [Fraction(0)] * (n + 1)
    result = []
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        result.append(a[0])
    return result


def _fill_bernoulli(n: int) -> None:
    with _bernoulli_lock:
        if len(_bernoulli_table) > n:
            return
        values = _akiyama_tanigawa(n)
        if n >= 1:
            values[1] = -values[1]  # the triangle yields B_1 = +1/2
        _bernoulli_table.extend(values[len(_bernoulli_table):])


def bernoulli_number(n: int, cap: Optional[int] = None) -> Fraction:
    """Exact Bernoulli number ``B_n`` with ``B_1 = -1/2``.

    Values are memoized in an append-only table guarded by a lock.
    """
    _check_cap(n, cap)
    if len(_bernoulli_table) <= n:
        _fill_bernoulli(max(n, 2 * len(_bernoulli_table)))
    return _bernoulli_table[n]


def bernoulli_polynomial(n: int, cap: Optional[int] = None) -> RationalPolynomial:
    """``B_n(x) = sum_k C(n, k) B_{n-k} x^k``."""
    _check_cap(n, cap)
    return RationalPolynomial([comb(n, k) * bernoulli_number(n - k, cap) for k in range(n + 1)])


# ---------------------------------------------------------------------------
# Norlund polynomials via exp(alpha * log(t / (e^t - 1)))

_log_series: list[Fraction] = [Fraction(0)]
_log_lock = threading.Lock()


def _log_generating_series(order: int) -> list[Fraction]:
    """Coefficients of ``log((e^t - 1)/t)`` up to ``t**order``.

    Built from ``(e^t - 1)/t = sum t^k/(k+1)!`` so the Bernoulli table is not
    an input here.
    """
    with _log_lock:
        if len(_log_series) <= order:
            g = [Fraction(1, factorial(k + 1)) for k in range(order + 1)]
            logs = [Fraction(0)] * (order + 1)
            for k in range(1, order + 1):
                acc = k * g[k]
                for j in range(1, k):
                    acc -= j * logs[j] * g[k - j]
                logs[k] = acc / k
            _log_series[:] = logs
        return _log_series[: order + 1]


def _norlund_zero_series(n: int, alpha: Fraction) -> list[Fraction]:
    """Coefficients ``c_k`` of ``(t/(e^t-1))**alpha = sum c_k t^k``, k <= n."""
    logs = _log_generating_series(n)
    scaled = [-alpha * c for c in logs]
    e = [Fraction(0)] * (n + 1)
    e[0] = Fraction(1)
    for k in range(1, n + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            if scaled[j]:
                acc += j * scaled[j] * e[k - j]
        e[k] = acc / k
    return e


def norlund_coefficients(n: int, alpha: RationalLike, cap: Optional[int] = None) -> RationalPolynomial:
    """Generalized Bernoulli polynomial ``B_n^{(alpha)}(x)`` as an exact polynomial in x."""
    _check_cap(n, cap)
    alpha = Fraction(alpha)
    c = _norlund_zero_series(n, alpha)
    # coefficient of x^j t^n/n! in (series) * e^{xt}
    return RationalPolynomial(
        [factorial(n) * c[n - j] / factorial(j) for j in range(n + 1)]
    )


def norlund_polynomial(
    n: int, alpha: RationalLike, x: RationalLike, cap: Optional[int] = None
) -> Fraction:
    """Exact value ``B_n^{(alpha)}(x)``, the t^n/n! coefficient of ``(t/(e^t-1))^alpha e^{xt}``.

    Negative ``alpha`` is supported directly, e.g. ``B_1^{(-2)}(0) = 1/2``.
    """
    return norlund_coefficients(n, alpha, cap)(Fraction(x))


# ---------------------------------------------------------------------------
# Stirling numbers of the second kind

_stirling_rows: list[list[int]] = [[1]]
_stirling_lock = threading.Lock()


def stirling2(n: int, k: int, cap: Optional[int] = None) -> int:
    """``S(n, k)`` from ``S(n,k) = k S(n-1,k) + S(n-1,k-1)``.

    Returns 0 when ``k > n`` (or ``k < 0``) rather than raising.
    """
    _check_cap(n, cap)
    if k < 0 or k > n:
        return 0
    if len(_stirling_rows) <= n:
        with _stirling_lock:
            while len(_stirling_rows) <= n:
                prev = _stirling_rows[-1]
                m = len(prev)
                row = [0] * (m + 1)
                for j in range(1, m + 1):
                    row[j] = j * (prev[j] if j < m else 0) + prev[j - 1]
                _stirling_rows.append(row)
    return _stirling_rows[n][k]


def stirling2_norlund(n: int, k: int, cap: Optional[int] = None) -> int:
    """``S(n, k) = C(n, k) B_{n-k}^{(-k)}(0)``, computed independently of the recurrence."""
    _check_cap(n, cap)
    if k < 0 or k > n:
        return 0
    value = comb(n, k) * factorial(n - k) * _norlund_zero_series(n - k, Fraction(-k))[n - k]
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral Stirling value {value} for ({n}, {k})")
    return int(value)


# ---------------------------------------------------------------------------
# Euler-Maclaurin summation


@dataclass(frozen=True)
class SmoothFunction:
    """A summand together with its derivatives.

    ``derivative(order, x)`` returns the ``order``-th derivative.  When it is
    None, central differences are used and results are flagged inexact.
    """

    func: Callable[[float], float]
    derivative: Optional[Callable[[int, float], float]] = None

    def __call__(self, x):
        return self.func(x)


def power_function(p: int) -> SmoothFunction:
    """x**p for a nonnegative integer p, with exact derivatives."""

    def deriv(order: int, x: float) -> float:
        if order > p:
            return 0.0
        return math.perm(p, order) * x ** (p - order)

    return SmoothFunction(lambda x: x**p, deriv)


def reciprocal_function() -> SmoothFunction:
    """1/x with analytic derivatives ``(-1)^k k! / x^{k+1}``."""

    def deriv(order: int, x: float) -> float:
        return (-1) ** order * math.factorial(order) / x ** (order + 1)

    return SmoothFunction(lambda x: 1.0 / x, deriv)


def constant_function(c: float) -> SmoothFunction:
    return SmoothFunction(lambda x: c, lambda order, x: 0.0)


@dataclass
class EulerMaclaurinResult:
    """Decomposition of the corrected sum.

    ``endpoint_term`` also carries any directly summed head terms
    ``f(1) + ... + f(start - 1)`` when ``start > 1``.
    """

    integral_term: object
    endpoint_term: object
    correction_terms: list = field(default_factory=list)
    total: object = 0
    reference_sum: object = 0
    exact_derivatives: bool = True
    start: int = 0

    @property
    def error(self):
        return self.total - self.reference_sum


def _central_difference(f: Callable[[float], float], order: int, x: float, h: float) -> float:
    total = 0.0
    for j in range(order + 1):
        total += (-1) ** j * comb(order, j) * f(x + (order / 2 - j) * h)
    return total / h**order


def _gl_integral(f: Callable[[float], float], a: float, b: float, nodes: int) -> float:
    if a == b:
        return 0.0
    # geometric panels keep functions like 1/x well resolved over long ranges
    edges = [a]
    left = max(a, 1.0)
    if a < left:
        edges.append(min(left, b))
    while edges[-1] < b:
        edges.append(min(b, 2.0 * edges[-1]))
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi <= lo:
            continue
        rule = gauss_legendre(nodes, lo, hi)
        total += math.fsum(w * f(x) for x, w in zip(rule.nodes, rule.weights))
    return total


def euler_maclaurin_sum(
    f,
    N: int,
    M: int,
    start: int = 0,
    fd_step: float = 1e-4,
    quad_nodes: int = 32,
    cap: Optional[int] = None,
) -> EulerMaclaurinResult:
    """Approximate ``sum_{k=1}^{N} f(k)`` by an integral plus Bernoulli corrections.

    With ``start = 0`` the expansion is taken over ``[0, N]``:

        sum_{k=1}^{N} f(k) = int_0^N f + (f(N) - f(0))/2
                             + sum_{m=1}^{M} B_{2m}/(2m)! (f^{(2m-1)}(N) - f^{(2m-1)}(0))

    With ``start = a >= 1`` the terms ``f(1..a-1)`` are summed directly and the
    expansion runs over ``[a, N]`` with endpoint term ``(f(a) + f(N))/2``; use
    this for summands singular at 0.

    ``f`` may be a :class:`RationalPolynomial` (everything exact, Fractions
    returned), a :class:`SmoothFunction`, or a bare callable (derivatives by
    central differences with step ``fd_step``, flagged inexact).
    """
    if N < 1:
        raise ValueError("N must be a positive integer")
    if M < 0:
        raise ValueError("M must be nonnegative")
    if not 0 <= start <= N:
        raise ValueError("start must lie in [0, N]")
    _check_cap(2 * M, cap)

    a = start
    if isinstance(f, RationalPolynomial):
        anti = f.antiderivative()
        integral = anti(Fraction(N)) - anti(Fraction(a))
        head = sum((f(Fraction(k)) for k in range(1, a)), Fraction(0))
        endpoint = head + (f(Fraction(N)) + f(Fraction(a))) / 2
        if a == 0:
            endpoint -= f(Fraction(0))
        corrections = []
        for m in range(1, M + 1):
            d = f.derivative(2 * m - 1)
            corrections.append(
                bernoulli_number(2 * m, cap) / factorial(2 * m) * (d(Fraction(N)) - d(Fraction(a)))
            )
        total = integral + endpoint + sum(corrections, Fraction(0))
        reference = sum((f(Fraction(k)) for k in range(1, N + 1)), Fraction(0))
        return EulerMaclaurinResult(integral, endpoint, corrections, total, reference, True, a)

    func = f.func if isinstance(f, SmoothFunction) else f
    deriv = f.derivative if isinstance(f, SmoothFunction) else None
    exact = deriv is not None
    if deriv is None:
        def deriv(order: int, x: float) -> float:
            return _central_difference(func, order, x, fd_step)

    fa = func(float(a))
    if not math.isfinite(fa):
        raise ValueError(f"f({a}) is not finite; pass start >= 1")
    integral = _gl_integral(func, float(a), float(N), quad_nodes)
    head = math.fsum(func(float(k)) for k in range(1, a))
    endpoint = head + 0.5 * (func(float(N)) + fa)
    if a == 0:
        endpoint -= fa
    corrections = []
    for m in range(1, M + 1):
        coeff = float(bernoulli_number(2 * m, cap) / factorial(2 * m))
        corrections.append(coeff * (deriv(2 * m - 1, float(N)) - deriv(2 * m - 1, float(a))))
    total = integral + endpoint + math.fsum(corrections)
    reference = math.fsum(func(float(k)) for k in range(1, N + 1))
    return EulerMaclaurinResult(integral, endpoint, corrections, total, reference, exact, a)
