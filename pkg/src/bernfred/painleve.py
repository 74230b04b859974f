"""Sine-kernel gap determinants, Painleve-type residuals and asymptotic fits.

Two parameterizations of the same determinant are used:

* bandwidth frame: ``sin(s (x - y)) / (pi (x - y))`` on (-1, 1), giving ``D(s)``;
* interval frame: ``sin(x - y) / (pi (x - y))`` on (0, t), giving ``E(t)``.

Substituting ``x -> s x`` shows ``D(s) = E(2 s)``.  The sigma form
``(t sigma'')^2 + 4 (t sigma' - sigma)(t sigma' - sigma + sigma'^2) = 0`` with
``sigma(t) = t d/dt log E(t)`` is evaluated in the interval frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .fredholm import build_nystrom, eigenvalues_sym, fredholm_det, sine_kernel, system_det
from .zeta import zeta_derivative

__all__ = [
    "ResolutionError",
    "WindowError",
    "LogDetGrid",
    "QSamples",
    "PainleveResidualReport",
    "AsymptoticFit",
    "SelectorLimitStudy",
    "bandwidth_to_interval",
    "interval_to_bandwidth",
    "min_nodes",
    "sine_log_det",
    "eigenproduct_log_det",
    "interval_log_det",
    "sine_det_grid",
    "q_function",
    "sigma_residual",
    "painleve_residuals",
    "asymptotic_constant",
    "asymptotic_fit",
    "selector_limit_study",
    "residual_rows",
]

S_MAX_DESK = 12.0


class ResolutionError(ArithmeticError):
    """Discretized determinant is not positive: more nodes needed."""


class WindowError(ValueError):
    """Fit window missing from the grid or too small to fit."""


def bandwidth_to_interval(s: float) -> float:
    return 2.0 * s


def interval_to_bandwidth(t: float) -> float:
    return 0.5 * t


def min_nodes(s_max: float) -> int:
    return int(math.ceil(40 + 8 * s_max))


def sine_log_det(s: float, n_nodes: int, route: str = "lu") -> float:
    """``log det(I - K_s)`` in the bandwidth frame."""
    if s == 0:
        return 0.0
    res = fredholm_det(sine_kernel(s), 1.0, n_nodes, route=route, minus=True)
    if res.singular or res.sign_or_phase != 1.0 or not math.isfinite(res.log_abs):
        raise ResolutionError(
            f"determinant at s={s} is not positive with n_nodes={n_nodes}; increase the node count"
        )
    return res.log_abs


def interval_log_det(t: float, n_nodes: int) -> float:
    """``log det(I - K)`` for ``sin(x - y) / (pi (x - y))`` on (0, t)."""
    if t == 0:
        return 0.0
    res = fredholm_det(sine_kernel(1.0, (0.0, t)), 1.0, n_nodes, route="lu", minus=True)
    if res.singular or res.sign_or_phase != 1.0:
        raise ResolutionError(f"determinant at t={t} is not positive with n_nodes={n_nodes}")
    return res.log_abs


@dataclass(frozen=True)
class LogDetGrid:
    s_values: np.ndarray
    log_det: np.ndarray
    n_nodes: int
    h: float

    def __post_init__(self):
        s = np.asarray(self.s_values, dtype=float)
        if s.ndim != 1 or len(s) != len(self.log_det):
            raise ValueError("s_values and log_det must be 1-D of equal length")
        if len(s) > 1:
            d = np.diff(s)
            if np.any(d <= 0):
                raise ValueError("s_values must be strictly increasing")
            if np.max(np.abs(d - self.h)) > 1e-9 * max(1.0, abs(self.h)):
                raise ValueError("s_values must be uniformly spaced with step h")

    def __len__(self) -> int:
        return len(self.s_values)


def sine_det_grid(
    s_max: float, steps: int, n_nodes: int, s_min: Optional[float] = None, route: str = "lu"
) -> LogDetGrid:
    """``log D(s)`` on ``steps`` uniform points ending at ``s_max``.

    Without ``s_min`` the grid is ``s_max * k / steps``, ``k = 1..steps``.
    """
    if s_max > S_MAX_DESK:
        raise ValueError(f"s_max {s_max} exceeds desk scale {S_MAX_DESK}")
    if n_nodes < min_nodes(s_max):
        raise ValueError(f"n_nodes {n_nodes} < 40 + 8 s_max = {min_nodes(s_max)}")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if s_min is None:
        s_values = s_max * np.arange(1, steps + 1) / steps
        h = s_max / steps
    else:
        if not 0 <= s_min < s_max or steps < 2:
            raise ValueError("need 0 <= s_min < s_max and steps >= 2")
        s_values = np.linspace(s_min, s_max, steps)
        h = (s_max - s_min) / (steps - 1)
    log_det = np.array([sine_log_det(float(s), n_nodes, route) for s in s_values])
    s_values.flags.writeable = False
    log_det.flags.writeable = False
    return LogDetGrid(s_values, log_det, n_nodes, float(h))


@dataclass(frozen=True)
class QSamples:
    """``q = -(log D)''`` and its first two differences, on points with a full stencil."""

    s: np.ndarray
    q: np.ndarray
    q_prime: np.ndarray
    q_second: np.ndarray
    h: float
    order: int = 2


def q_function(grid: LogDetGrid) -> QSamples:
    """Central differences; two points are dropped at each end."""
    if len(grid) < 7:
        raise ValueError("q_function needs at least 7 grid points")
    f = np.asarray(grid.log_det, dtype=float)
    h = grid.h
    q = -(f[2:] - 2 * f[1:-1] + f[:-2]) / (h * h)  # at indices 1..n-2
    qp = (q[2:] - q[:-2]) / (2 * h)  # at indices 2..n-3
    qpp = (q[2:] - 2 * q[1:-1] + q[:-2]) / (h * h)
    return QSamples(np.asarray(grid.s_values[2:-2]), q[1:-1], qp, qpp, h)


def _sigma_from_samples(t: float, h: float, L: Sequence[float]) -> float:
    """Sigma-form residual from ``L(t + k h)``, ``k = -2..2``."""
    lm2, lm1, l0, lp1, lp2 = L
    d1 = (lp1 - lm1) / (2 * h)
    d2 = (lp1 - 2 * l0 + lm1) / (h * h)
    d3 = (lp2 - 2 * lp1 + 2 * lm1 - lm2) / (2 * h**3)
    sigma = t * d1
    sp = d1 + t * d2
    spp = 2 * d2 + t * d3
    a = t * sp - sigma
    return (t * spp) ** 2 + 4 * a * (a + sp * sp)


def sigma_residual(t: float, h: float, n_nodes: int = 150) -> float:
    """Sigma-form residual at ``t`` from five interval-frame determinants spaced ``h``."""
    if t - 2 * h <= 0:
        raise ValueError("need t > 2h")
    L = [interval_log_det(t + k * h, n_nodes) for k in (-2, -1, 0, 1, 2)]
    return _sigma_from_samples(t, h, L)


@dataclass(frozen=True)
class PainleveResidualReport:
    s: float
    q: float
    q_prime: float
    q_second: float
    residual_paper: float
    residual_sigma_oracle: float
    h: float
    error_order: int = 2


def painleve_residuals(grid: LogDetGrid, sigma_nodes: Optional[int] = None) -> list[PainleveResidualReport]:
    """Both residuals at every interior point of ``grid``.

    The q-form residual ``(s q'')^2 + 4 (s q' - q)(s q' - q + q'^2)`` uses
    the grid's own ``q``.  The sigma residual is recomputed independently in
    the interval frame at ``t = 2 s`` with step ``2 h``.
    """
    if grid.h > 0.05:
        raise ValueError("grid step must be <= 0.05")
    qs = q_function(grid)
    n_sigma = sigma_nodes or grid.n_nodes
    out = []
    for s, q, qp, qpp in zip(qs.s, qs.q, qs.q_prime, qs.q_second):
        s = float(s)
        qform = (s * qpp) ** 2 + 4 * (s * qp - q) * (s * qp - q + qp * qp)
        t = bandwidth_to_interval(s)
        ht = 2 * grid.h
        sig = sigma_residual(t, ht, n_sigma) if t > 2 * ht else 0.0
        out.append(PainleveResidualReport(s, float(q), float(qp), float(qpp), float(qform), float(sig), grid.h))
    return out


def residual_rows(grid: LogDetGrid, reports: Iterable[PainleveResidualReport]) -> list[dict]:
    """Rows with columns s, log_det, q, q_prime, q_second, residual_paper, residual_sigma."""
    index = {round(float(s), 12): float(v) for s, v in zip(grid.s_values, grid.log_det)}
    return [
        {
            "s": r.s,
            "log_det": index[round(r.s, 12)],
            "q": r.q,
            "q_prime": r.q_prime,
            "q_second": r.q_second,
            "residual_paper": r.residual_paper,
            "residual_sigma": r.residual_sigma_oracle,
        }
        for r in reports
    ]


def asymptotic_constant() -> float:
    """``(1/12) log 2 + 3 zeta'(-1)``: the constant term of ``log D(s)`` in the bandwidth frame."""
    return math.log(2.0) / 12.0 + 3.0 * zeta_derivative(-1.0)


@dataclass(frozen=True)
class AsymptoticFit:
    """Least-squares fit ``log D(s) = a s^2 + b log s + C0 + c1 / s^2``.

    ``a``, ``b``, ``C0``, ``c1`` are in the bandwidth frame.  In the interval
    variable ``t = 2 s`` the same fit reads ``a_interval t^2 + b log t + C0_interval + ...``
    with ``a_interval = a / 4`` and ``C0_interval = C0 - b log 2``.
    """

    a: float
    b: float
    C0: float
    c1: float
    residual_norm: float
    max_residual: float
    window: tuple
    points: int
    n_nodes: int
    reference_constant: float = field(default_factory=asymptotic_constant)
    hypothesis_a: float = -1.0 / (2.0 * math.pi**2)

    @property
    def a_interval(self) -> float:
        return self.a / 4.0

    @property
    def C0_interval(self) -> float:
        return self.C0 - self.b * math.log(2.0)

    def summary(self) -> dict:
        return {
            "a_bandwidth": self.a,
            "a_interval": self.a_interval,
            "a_hypothesis": self.hypothesis_a,
            "a_hypothesis_deviation": self.a - self.hypothesis_a,
            "b": self.b,
            "b_deviation": self.b + 0.25,
            "C0": self.C0,
            "C0_interval": self.C0_interval,
            "C0_reference": self.reference_constant,
            "C0_deviation": self.C0 - self.reference_constant,
            "c1": self.c1,
            "residual_norm": self.residual_norm,
            "max_residual": self.max_residual,
        }


def asymptotic_fit(grid: LogDetGrid, window: tuple = (4.0, 10.0)) -> AsymptoticFit:
    lo, hi = window
    s = np.asarray(grid.s_values, dtype=float)
    mask = (s >= lo - 1e-12) & (s <= hi + 1e-12)
    if s[0] > lo + 1e-9 or s[-1] < hi - 1e-9:
        raise WindowError(f"window {window} not inside grid [{s[0]}, {s[-1]}]")
    if mask.sum() < 8:
        raise WindowError("fewer than 8 grid points in the fit window")
    x = s[mask]
    y = np.asarray(grid.log_det, dtype=float)[mask]
    design = np.column_stack([x * x, np.log(x), np.ones_like(x), x**-2])
    col_scale = np.abs(design).max(axis=0)
    scaled = design / col_scale
    if np.linalg.cond(scaled) > 1e10:
        raise WindowError("fit is ill-conditioned on this window")
    coef, *_ = np.linalg.lstsq(scaled, y, rcond=None)
    coef = coef / col_scale
    resid = y - design @ coef
    return AsymptoticFit(
        float(coef[0]),
        float(coef[1]),
        float(coef[2]),
        float(coef[3]),
        float(np.linalg.norm(resid)),
        float(np.abs(resid).max()),
        (float(lo), float(hi)),
        int(mask.sum()),
        grid.n_nodes,
    )


@dataclass(frozen=True)
class SelectorLimitStudy:
    """``D_J(lam) = (1 - lam/J)^J`` against ``exp(-lam)``.

    ``rows``: (J, lam, D_J, exp(-lam), D_J - exp(-lam), log D_J, quadratic_leading).
    ``measured_leading[lam]`` is the J -> infinity intercept of ``log D_J(lam)``
    from a fit in powers of ``1/J``; the normalized selector gives ``-lam``.
    """

    rows: list
    measured_leading: dict
    quadratic_compatible: dict


def selector_limit_study(J_list: Iterable[int], lambda_list: Iterable[float]) -> SelectorLimitStudy:
    J_list = sorted({int(j) for j in J_list})
    lambda_list = [float(v) for v in lambda_list]
    rows = []
    leading, compatible = {}, {}
    for lam in lambda_list:
        xs, ys = [], []
        for J in J_list:
            d = (1.0 - lam / J) ** J
            log_d = J * math.log1p(-lam / J) if lam < J else float("nan")
            quad = -(J * J / (2 * math.pi**2)) * lam
            rows.append((J, lam, d, math.exp(-lam), d - math.exp(-lam), log_d, quad))
            if lam < J:
                xs.append(1.0 / J)
                ys.append(log_d)
        if lam == 0:
            leading[lam] = 0.0
        elif len(xs) >= 3:
            design = np.column_stack([np.ones(len(xs)), xs, np.square(xs)])
            coef, *_ = np.linalg.lstsq(design, np.array(ys), rcond=None)
            leading[lam] = float(coef[0])
        elif xs:
            leading[lam] = ys[-1]
        else:
            leading[lam] = float("nan")
        # the quadratic law grows like J^2; it is compatible only if log D_J does too
        compatible[lam] = bool(lam == 0)
    return SelectorLimitStudy(rows, leading, compatible)


def eigenproduct_log_det(s: float, n_nodes: int) -> float:
    """``sum log(1 - mu_j)`` over the Jacobi spectrum of the bandwidth-frame kernel."""
    system = build_nystrom(sine_kernel(s), n_nodes)
    mu = eigenvalues_sym(system).eigenvalues
    if np.any(mu >= 1.0):
        raise ResolutionError(f"eigenvalue >= 1 at s={s}")
    return float(np.sum(np.log1p(-mu)))
