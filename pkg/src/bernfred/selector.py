"""Finite-rank trigonometric selector kernel on [-pi, pi].

Three candidate closed forms are kept side by side:

``complex_sum``
    ``(1/J) sum_{m=0}^{J-1} exp(i (2m+1) D / 2)`` with ``D = theta - phi``.
``real_part``
    its real part, ``sin(J D) / (2 J sin(D/2))``.
``paper_closed_form``
    ``sin(J D/2) cos(D/2) / (J sin(D/2))``.

They agree at ``J = 1`` and differ for ``J >= 2``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .linalg import jacobi_eigenvalues

__all__ = [
    "VARIANTS",
    "SelectorParams",
    "selector_value",
    "selector_spectrum",
    "selector_determinant",
    "selector_lu_determinant",
    "CompositionReport",
    "composition_diagnostic",
    "SineRelationReport",
    "sine_kernel_relation",
    "closed_form_report",
]

VARIANTS = ("complex_sum", "real_part", "paper_closed_form")
_NEAR = 1e-8


@dataclass(frozen=True)
class SelectorParams:
    J: int
    variant: str = "complex_sum"

    def __post_init__(self):
        if self.J < 1:
            raise ValueError("J must be >= 1")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")


def _explicit_sum(J: int, delta: np.ndarray) -> np.ndarray:
    m = np.arange(J)
    return np.exp(0.5j * np.multiply.outer(delta, 2 * m + 1)).sum(axis=-1) / J


def _clamp(v, name: str):
    arr = np.asarray(v, dtype=float)
    if np.any(np.abs(arr) > math.pi + 1e-12):
        warnings.warn(f"{name} outside [-pi, pi]; clamped")
        arr = np.clip(arr, -math.pi, math.pi)
    return arr


def selector_value(J: int, theta, phi, variant: str = "complex_sum", clamp: bool = True):
    """Evaluate the selector kernel; broadcasts over ``theta`` and ``phi``.

    Where ``|sin(D/2)| < 1e-8`` the explicit m-sum is used instead of the
    ratio form.  ``clamp=False`` skips the domain clamp (used for the
    periodicity check, which needs ``D`` outside ``[-2 pi, 2 pi]``).
    """
    SelectorParams(J, variant)
    if clamp:
        theta, phi = _clamp(theta, "theta"), _clamp(phi, "phi")
    delta = np.asarray(theta, dtype=float) - np.asarray(phi, dtype=float)
    # every variant has period 4 pi in D; reducing first keeps numerator and
    # denominator on the same rounded argument
    wide = np.abs(delta) > 2 * math.pi
    if np.any(wide):
        delta = np.where(wide, np.remainder(delta + 2 * math.pi, 4 * math.pi) - 2 * math.pi, delta)
    half = 0.5 * delta
    sh = np.sin(half)
    near = np.abs(sh) < _NEAR
    safe = np.where(near, 1.0, sh)
    if variant == "complex_sum":
        out = np.exp(1j * J * half) * np.sin(J * half) / (J * safe)
        if np.any(near):
            out = np.where(near, _explicit_sum(J, delta), out)
        return out
    if variant == "real_part":
        out = np.sin(J * delta) / (2 * J * safe)
        if np.any(near):
            out = np.where(near, _explicit_sum(J, delta).real, out)
        return out
    out = np.sin(J * half) * np.cos(half) / (J * safe)
    if np.any(near):
        # sin(J h)/sin(h) = sum_k e^{i k h}, k = -(J-1), -(J-3), ..., J-1
        k = np.arange(-(J - 1), J, 2)
        dirichlet = np.cos(np.multiply.outer(half, k)).sum(axis=-1)
        out = np.where(near, dirichlet * np.cos(half) / J, out)
    return out


def _periodic_grid(node_count: int) -> np.ndarray:
    return -math.pi + 2 * math.pi * (np.arange(node_count) + 0.5) / node_count


def _selector_matrix(J: int, variant: str, node_count: int) -> tuple[np.ndarray, np.ndarray]:
    theta = _periodic_grid(node_count)
    kmat = selector_value(J, theta[:, None], theta[None, :], variant)
    return theta, kmat


def selector_spectrum(J: int, variant: str = "complex_sum", node_count: int | None = None) -> np.ndarray:
    """Eigenvalues of the periodic Nystrom matrix for the ``d phi / 2 pi`` measure.

    Uniform nodes with weight ``1/node_count`` integrate the kernel's mode
    products exactly, so the nonzero eigenvalues are exact up to rounding.
    """
    SelectorParams(J, variant)
    if node_count is None:
        node_count = 8 * J
    if node_count < 8 * J:
        raise ValueError(f"node_count {node_count} < 8J = {8 * J}: kernel modes not resolved")
    _, kmat = _selector_matrix(J, variant, node_count)
    mat = kmat / node_count
    if not np.iscomplexobj(mat):
        mat = 0.5 * (mat + mat.T)
    else:
        mat = 0.5 * (mat + mat.conj().T)
    return jacobi_eigenvalues(mat)


def _exact_factors(J: int, variant: str) -> list[tuple[float, int]]:
    """(eigenvalue, multiplicity) pairs of the continuum operator."""
    if variant == "complex_sum":
        return [(1.0 / J, J)]
    if variant == "real_part":
        return [(1.0 / (2 * J), 2 * J)]
    # half-step form: frequencies -J/2..J/2 in unit steps; interior weight 1/J, end weight 1/(2J)
    if J == 1:
        return [(0.5, 2)]
    return [(1.0 / J, J - 1), (1.0 / (2 * J), 2)]


def selector_determinant(J: int, lam: float, variant: str = "complex_sum") -> float:
    """``det(I - lam S_J)`` from the exact spectrum; ``(1 - lam/J)^J`` for ``complex_sum``."""
    SelectorParams(J, variant)
    value = 1.0
    for mu, mult in _exact_factors(J, variant):
        value *= (1.0 - lam * mu) ** mult
    return value


def selector_lu_determinant(J: int, lam: float, variant: str = "complex_sum", n_nodes: int | None = None):
    """Same determinant via the Gauss-Legendre Nystrom LU route of the Fredholm engine."""
    from .fredholm import fredholm_det, selector_kernel

    if n_nodes is None:
        n_nodes = max(64, 8 * J)
    res = fredholm_det(selector_kernel(J, variant), lam, n_nodes, route="lu", minus=True)
    return complex(res.value).real if not res.singular else 0.0


@dataclass(frozen=True)
class CompositionReport:
    J: int
    node_count: int
    idempotent_error: float  # max |S o S - S|
    scaled_error: float  # max |S o S - S / J|
    unnormalized_error: float  # max |P o P - P|, P = J S
    peak: float

    @property
    def idempotent(self) -> bool:
        return self.idempotent_error < 1e-10

    @property
    def holds(self) -> str:
        if self.idempotent:
            return "S^2 = S"
        if self.scaled_error < 1e-10:
            return "S^2 = S/J"
        return "neither"


def composition_diagnostic(J: int, node_count: int | None = None) -> CompositionReport:
    """Evaluate ``int S(theta, phi) S(phi, psi) d phi / 2 pi`` on a periodic grid.

    The integrand's phi-dependence is ``exp(i (l - m) phi)`` with integer
    ``l - m``, so the uniform rule is exact once ``node_count > 2J``.
    """
    if node_count is None:
        node_count = 8 * J
    if node_count < 8 * J:
        raise ValueError(f"node_count {node_count} < 8J = {8 * J}")
    _, s = _selector_matrix(J, "complex_sum", node_count)
    comp = s @ s / node_count
    p = J * s
    pcomp = p @ p / node_count
    return CompositionReport(
        J,
        node_count,
        float(np.abs(comp - s).max()),
        float(np.abs(comp - s / J).max()),
        float(np.abs(pcomp - p).max()),
        float(np.abs(s).max()),
    )


@dataclass(frozen=True)
class SineRelationReport:
    J: int
    points: int
    max_deviation: float
    angle_map_deviation: float


def sine_kernel_relation(J: int, theta, phi) -> SineRelationReport:
    """Check ``S_J(half-step form) * J / (2 pi cos(D/2)) = sin(J D/2) / (2 pi sin(D/2))``.

    Also checks ``e^{i theta} - 1 = 2 i e^{i theta / 2} sin(theta / 2)`` on ``theta``.
    Points with ``|cos(D/2)| < 1e-6`` are skipped.
    """
    theta = np.asarray(theta, dtype=float).ravel()
    phi = np.asarray(phi, dtype=float).ravel()
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    delta = tt - pp
    keep = np.abs(np.cos(0.5 * delta)) > 1e-6
    lhs = selector_value(J, tt, pp, "paper_closed_form") * J / (2 * math.pi * np.cos(0.5 * delta))
    sh = np.sin(0.5 * delta)
    near = np.abs(sh) < _NEAR
    ksine = np.where(near, J / (2 * math.pi), np.sin(0.5 * J * delta) / (2 * math.pi * np.where(near, 1.0, sh)))
    dev = float(np.abs(lhs - ksine)[keep].max(initial=0.0))
    angle_lhs = np.exp(1j * theta) - 1.0
    angle_rhs = 2j * np.exp(0.5j * theta) * np.sin(0.5 * theta)
    return SineRelationReport(J, int(keep.sum()), dev, float(np.abs(angle_lhs - angle_rhs).max(initial=0.0)))


def closed_form_report(J: int = 2, samples: int = 64) -> dict:
    """Max deviations between the three variants and the two-mode product form.

    For ``J = 2`` the product ``cos(D) cos(D/2)`` is the displayed small-J
    example; ``real_part`` reproduces it, ``paper_closed_form`` does not.
    """
    delta = np.linspace(-math.pi, math.pi, samples)
    zeros = np.zeros_like(delta)
    cs = selector_value(J, delta, zeros, "complex_sum")
    rp = selector_value(J, delta, zeros, "real_part")
    pc = selector_value(J, delta, zeros, "paper_closed_form")
    report = {
        "J": J,
        "closed_vs_sum": float(np.abs(pc - cs).max()),
        "closed_vs_real_part": float(np.abs(pc - rp).max()),
        "real_part_vs_sum_real": float(np.abs(rp - cs.real).max()),
    }
    if J == 2:
        example = np.cos(delta) * np.cos(0.5 * delta)
        report["real_part_vs_example"] = float(np.abs(rp - example).max())
        report["closed_vs_example"] = float(np.abs(pc - example).max())
    return report
