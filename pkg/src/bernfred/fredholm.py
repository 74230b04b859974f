"""Nystrom discretization of integral operators and Fredholm determinants.

Three routes evaluate ``det(I + c T)`` (``c = lam`` or ``-lam``):

* ``lu``: pivoted LU of the discretized ``I + c A``;
* ``eigenproduct``: ``prod(1 + c mu_j)`` over the Jacobi spectrum;
* ``trace_series``: ``exp(sum_k (-1)^(k+1) c^k Tr(A^k) / k)``.

Smooth kernels use the symmetrized Gauss-Legendre Nystrom matrix
``sqrt(w_i) K(x_i, x_j) sqrt(w_j)``.  Kernels with a derivative jump on the
diagonal (``min(x, y)`` and the Dirichlet Green function) only converge like
``n**-2`` that way, so for them each row is integrated exactly against the
Lagrange basis on either side of the diagonal (product integration), and the
operator trace terms the finite matrix cannot see are restored through
``Tr T - Tr A`` and ``Tr T^2 - Tr A^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from .linalg import jacobi_eigenvalues, lu_logdet
from .quadrature import QuadratureRule, gauss_legendre

__all__ = [
    "KernelSpec",
    "NystromSystem",
    "Spectrum",
    "FredholmResult",
    "ResolventResult",
    "DivergenceError",
    "KernelEvaluationError",
    "min_kernel",
    "green_dirichlet_kernel",
    "sine_kernel",
    "selector_kernel",
    "rank_one_kernel",
    "projector_kernel",
    "custom_kernel",
    "build_nystrom",
    "eigenvalues_sym",
    "fredholm_det",
    "system_det",
    "resolvent_solve",
    "ROUTES",
]

ROUTES = ("lu", "eigenproduct", "trace_series")


class DivergenceError(ArithmeticError):
    """The trace series is outside its guaranteed convergence region."""


class KernelEvaluationError(ArithmeticError):
    pass


@dataclass(frozen=True)
class KernelSpec:
    """An integral kernel ``K(x, y)`` on ``domain`` with bookkeeping flags.

    ``func`` must broadcast over ``x[:, None]`` and ``y[None, :]``.
    """

    kind: str
    domain: Tuple[float, float]
    func: Callable[[np.ndarray, np.ndarray], np.ndarray] = field(repr=False, compare=False)
    symmetric: bool = True
    diagonal_kink: bool = False
    is_complex: bool = False
    params: dict = field(default_factory=dict, compare=False)

    def __call__(self, x, y):
        return self.func(x, y)


def min_kernel() -> KernelSpec:
    """``min(x, y)`` on (0, 1): Green function of -d^2/dx^2 with u(0)=0, u'(1)=0."""
    return KernelSpec("min_xy", (0.0, 1.0), lambda x, y: np.minimum(x, y), diagonal_kink=True)


def green_dirichlet_kernel() -> KernelSpec:
    """``min(x, y) (1 - max(x, y))`` on (0, 1): Dirichlet-Dirichlet Green function."""
    return KernelSpec(
        "green_dirichlet_dirichlet",
        (0.0, 1.0),
        lambda x, y: np.minimum(x, y) * (1.0 - np.maximum(x, y)),
        diagonal_kink=True,
    )


def _sine_values(s: float, x, y):
    d = np.asarray(x - y, dtype=float)
    near = np.abs(d) < 1e-8
    safe = np.where(near, 1.0, d)
    out = np.sin(s * safe) / (np.pi * safe)
    if near.any():
        sd2 = (s * d) ** 2
        taylor = (s / np.pi) * (1.0 - sd2 / 6.0 + sd2 * sd2 / 120.0)
        out = np.where(near, taylor, out)
    return out


def sine_kernel(s: float, domain: Tuple[float, float] = (-1.0, 1.0)) -> KernelSpec:
    """``sin(s (x - y)) / (pi (x - y))`` with diagonal value ``s / pi``."""
    if not s >= 0:
        raise ValueError("bandwidth s must be nonnegative")
    return KernelSpec(
        "sine", (float(domain[0]), float(domain[1])), lambda x, y: _sine_values(s, x, y), params={"s": s}
    )


def selector_kernel(J: int, variant: str = "complex_sum") -> KernelSpec:
    """Selector kernel on (-pi, pi) with the ``d phi / 2 pi`` measure folded into it."""
    from .selector import selector_value

    def func(x, y):
        return selector_value(J, x, y, variant) / (2 * np.pi)

    return KernelSpec(
        "selector",
        (-math.pi, math.pi),
        func,
        symmetric=True,
        is_complex=variant == "complex_sum",
        params={"J": J, "variant": variant},
    )


def rank_one_kernel(
    u: Callable[[np.ndarray], np.ndarray],
    v: Callable[[np.ndarray], np.ndarray],
    alpha: float = 1.0,
    domain: Tuple[float, float] = (0.0, 1.0),
) -> KernelSpec:
    """``alpha u(x) v(y)``, i.e. ``T f = alpha <f, v> u``."""
    return KernelSpec(
        "rank_one",
        (float(domain[0]), float(domain[1])),
        lambda x, y: alpha * u(x) * v(y),
        symmetric=u is v,
        params={"alpha": alpha},
    )


def projector_kernel(rank: int) -> KernelSpec:
    """Orthogonal projector onto ``sqrt(2) sin(k pi x)``, k = 1..rank, on (0, 1)."""

    def func(x, y):
        total = 0.0
        for k in range(1, rank + 1):
            total = total + 2.0 * np.sin(k * np.pi * x) * np.sin(k * np.pi * y)
        return total

    return KernelSpec("projector", (0.0, 1.0), func, params={"rank": rank})


def custom_kernel(
    func: Callable[[np.ndarray, np.ndarray], np.ndarray],
    domain: Tuple[float, float],
    symmetric: bool = True,
    diagonal_kink: bool = False,
    is_complex: bool = False,
) -> KernelSpec:
    return KernelSpec("custom", (float(domain[0]), float(domain[1])), func, symmetric, diagonal_kink, is_complex)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NystromSystem:
    """Quadrature rule plus the symmetrized kernel matrix.

    ``tail_traces`` holds ``(Tr T - Tr A, Tr T^2 - Tr A^2)``; it is zero for
    plain Nystrom systems.
    """

    kernel: KernelSpec
    rule: QuadratureRule
    matrix: np.ndarray = field(repr=False)
    tail_traces: Tuple[float, float] = (0.0, 0.0)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray

    def __iter__(self):
        return iter(self.eigenvalues)

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def __getitem__(self, idx):
        return self.eigenvalues[idx]


@dataclass(frozen=True)
class FredholmResult:
    value: complex
    log_abs: float
    sign_or_phase: complex
    route: str
    truncation_error_estimate: Optional[float] = None
    singular: bool = False


def _evaluate(kernel: KernelSpec, x, y):
    vals = np.asarray(kernel(x, y))
    if not np.all(np.isfinite(vals)):
        shape = np.broadcast(x, y).shape
        i, j = np.argwhere(~np.isfinite(np.broadcast_to(vals, shape)))[0]
        xv = np.broadcast_to(x, shape)[i, j]
        yv = np.broadcast_to(y, shape)[i, j]
        raise KernelEvaluationError(f"kernel {kernel.kind} is not finite at x={xv!r}, y={yv!r} (index {i}, {j})")
    return vals


def _barycentric_matrix(t: np.ndarray, nodes: np.ndarray, weights: np.ndarray) -> np.ndarray:
    d = t[:, None] - nodes[None, :]
    hit = d == 0.0
    d[hit] = 1.0
    q = weights[None, :] / d
    basis = q / q.sum(axis=1, keepdims=True)
    rows, cols = np.nonzero(hit)
    basis[rows, :] = 0.0
    basis[rows, cols] = 1.0
    return basis


def _split_traces(kernel: KernelSpec, m: int) -> Tuple[float, float]:
    """``Tr T`` and ``Tr T^2`` with the inner integral split at the diagonal."""
    a, b = kernel.domain
    outer = gauss_legendre(m, a, b)
    ref = gauss_legendre(m)
    diag = np.array([kernel(np.array(x), np.array(x)) for x in outer.nodes], dtype=float)
    tr1 = float(np.dot(outer.weights, diag))
    tr2 = 0.0
    for x, w in zip(outer.nodes, outer.weights):
        for lo, hi in ((a, x), (x, b)):
            y = lo + 0.5 * (hi - lo) * (ref.nodes + 1.0)
            wy = 0.5 * (hi - lo) * ref.weights
            k1 = _evaluate(kernel, np.full_like(y, x), y)
            k2 = _evaluate(kernel, y, np.full_like(y, x))
            tr2 += w * float(np.sum(wy * k1 * k2))
    return tr1, tr2


def _product_integration(kernel: KernelSpec, n: int) -> Tuple[QuadratureRule, np.ndarray, Tuple[float, float]]:
    a, b = kernel.domain
    rule = gauss_legendre(n, a, b)
    ref = gauss_legendre(n)
    t = ref.nodes
    bary = (-1.0) ** np.arange(n) * np.sqrt((1.0 - t * t) * ref.weights)
    half = 0.5 * (b - a)
    mat = np.empty((n, n))
    for i, xi in enumerate(rule.nodes):
        pts, wts = [], []
        for lo, hi in ((a, xi), (xi, b)):
            pts.append(lo + 0.5 * (hi - lo) * (t + 1.0))
            wts.append(0.5 * (hi - lo) * ref.weights)
        y = np.concatenate(pts)
        wy = np.concatenate(wts)
        basis = _barycentric_matrix((y - a) / half - 1.0, t, bary)
        mat[i] = (wy * _evaluate(kernel, np.full_like(y, xi), y)) @ basis
    sw = np.sqrt(rule.weights)
    mat = sw[:, None] * mat / sw[None, :]
    if kernel.symmetric:
        mat = 0.5 * (mat + mat.T)
    tr1, tr2 = _split_traces(kernel, max(n, 64))
    tails = (tr1 - float(np.trace(mat)), tr2 - float(np.sum(mat * mat.T)))
    return rule, mat, tails


def build_nystrom(kernel: KernelSpec, n_nodes: int) -> NystromSystem:
    """Discretize ``kernel`` on an ``n_nodes``-point Gauss-Legendre rule."""
    if n_nodes < 4:
        raise ValueError("n_nodes must be >= 4")
    if kernel.diagonal_kink:
        rule, mat, tails = _product_integration(kernel, n_nodes)
    else:
        a, b = kernel.domain
        rule = gauss_legendre(n_nodes, a, b)
        x = rule.nodes
        k = _evaluate(kernel, x[:, None], x[None, :])
        sw = np.sqrt(rule.weights)
        mat = sw[:, None] * k * sw[None, :]
        if kernel.symmetric:
            mat = 0.5 * (mat + mat.conj().T)
        tails = (0.0, 0.0)
    mat = np.array(mat, dtype=complex if np.iscomplexobj(mat) else float)
    mat.flags.writeable = False
    return NystromSystem(kernel, rule, mat, tails)


def eigenvalues_sym(system: NystromSystem) -> Spectrum:
    """Jacobi spectrum of a symmetric/Hermitian system, descending by magnitude."""
    if not system.kernel.symmetric:
        raise ValueError("eigenvalues_sym needs a symmetric kernel")
    return Spectrum(jacobi_eigenvalues(system.matrix))


def _tail_log(system: NystromSystem, c: float) -> float:
    d1, d2 = system.tail_traces
    return c * d1 - 0.5 * c * c * d2


def _result(log_abs, phase, route, estimate=None, singular=False) -> FredholmResult:
    if singular:
        return FredholmResult(0.0, -math.inf, phase, route, estimate, True)
    value = phase * math.exp(log_abs) if log_abs < 709 else phase * math.inf
    return FredholmResult(value, log_abs, phase, route, estimate, False)


def _series_terms(norm: float, c: float, max_terms: int) -> Tuple[int, float]:
    r = abs(c) * norm
    for n_terms in range(1, max_terms + 1):
        bound = norm * norm * c * c * r ** (n_terms - 1) / ((n_terms + 1) * (1.0 - r))
        if bound < 1e-17:
            return n_terms, bound
    return max_terms, bound


def system_det(
    system: NystromSystem,
    lam: float,
    route: str = "lu",
    minus: bool = False,
    n_terms: Optional[int] = None,
) -> FredholmResult:
    """``det(I + lam T)`` (or ``det(I - lam T)`` with ``minus``) on a built system."""
    if route not in ROUTES:
        raise ValueError(f"unknown route {route!r}; expected one of {ROUTES}")
    c = -lam if minus else lam
    a = system.matrix
    n = a.shape[0]
    complex_case = np.iscomplexobj(a)
    if lam == 0:
        return FredholmResult(1.0, 0.0, 1.0, route, 0.0 if route == "trace_series" else None)
    tail = _tail_log(system, c)

    if route == "lu":
        ld = lu_logdet(np.eye(n) + c * a)
        if ld.singular:
            return _result(-math.inf, ld.phase, route, singular=True)
        return _result(ld.log_abs + tail, ld.phase, route)

    if route == "eigenproduct":
        mu = eigenvalues_sym(system).eigenvalues
        factors = 1.0 + c * mu
        if np.any(factors == 0.0):
            return _result(-math.inf, 0.0, route, singular=True)
        log_abs = float(np.sum(np.log(np.abs(factors)))) + tail
        sign = -1.0 if np.count_nonzero(factors < 0) % 2 else 1.0
        return _result(log_abs, complex(sign) if complex_case else sign, route)

    norm = float(np.linalg.norm(a))
    if abs(c) * norm >= 0.9:
        raise DivergenceError(
            f"|lam| * ||A||_F = {abs(c) * norm:.3g} >= 0.9; trace series not guaranteed to converge"
        )
    if n_terms is None:
        n_terms, estimate = _series_terms(norm, c, 60)
    else:
        if n_terms > 60:
            raise ValueError("n_terms must be <= 60")
        r = abs(c) * norm
        estimate = norm * norm * c * c * r ** (n_terms - 1) / ((n_terms + 1) * (1.0 - r))
    exponent = 0.0 + 0j
    power = np.array(a)
    for k in range(1, n_terms + 1):
        if k > 1:
            power = power @ a
        exponent += (-1) ** (k + 1) * c**k * np.trace(power) / k
    exponent += tail
    if complex_case:
        phase = complex(np.exp(1j * exponent.imag))
    else:
        phase = 1.0
    return _result(float(exponent.real), phase, route, float(estimate))


def fredholm_det(
    kernel,
    lam: float,
    n_nodes: int = 64,
    route: str = "lu",
    minus: bool = False,
    n_terms: Optional[int] = None,
) -> FredholmResult:
    """Fredholm determinant of ``I + lam T`` (``I - lam T`` when ``minus``).

    ``kernel`` is a :class:`KernelSpec` or an already built :class:`NystromSystem`.
    """
    system = kernel if isinstance(kernel, NystromSystem) else build_nystrom(kernel, n_nodes)
    return system_det(system, lam, route, minus, n_terms)


@dataclass(frozen=True)
class ResolventResult:
    nodes: np.ndarray
    solution: Optional[np.ndarray]
    solvable: bool
    singular: bool
    residual: float
    det_ratio: float
    null_vector: Optional[np.ndarray] = None


def resolvent_solve(
    kernel: KernelSpec,
    lam: float,
    g: Callable[[np.ndarray], np.ndarray],
    n_nodes: int = 64,
    singular_tol: float = 1e-10,
    orth_tol: float = 1e-8,
) -> ResolventResult:
    """Solve ``(I - lam K) f = g`` at the quadrature nodes.

    Near-singularity is judged by ``|det(I - lam A)|`` relative to Hadamard's
    bound (product of row norms).  When singular, a solution exists only if
    ``g`` is orthogonal to the null vector; otherwise ``solvable`` is False and
    ``residual`` reports the normalized overlap.
    """
    system = build_nystrom(kernel, n_nodes)
    sw = np.sqrt(system.rule.weights)
    n = system.size
    op = np.eye(n) - lam * system.matrix
    rhs = sw * np.asarray(g(system.rule.nodes), dtype=op.dtype)
    ld = lu_logdet(op)
    hadamard = float(np.sum(np.log(np.linalg.norm(op, axis=1))))
    ratio = 0.0 if ld.singular else math.exp(ld.log_abs - hadamard)
    if ratio >= singular_tol:
        u = np.linalg.solve(op, rhs)
        resid = float(np.linalg.norm(op @ u - rhs) / max(np.linalg.norm(rhs), 1e-300))
        return ResolventResult(system.rule.nodes, u / sw, True, False, resid, ratio)
    _, svals, vh = np.linalg.svd(op)
    null = vh[-1].conj()
    overlap = abs(np.vdot(null, rhs)) / max(np.linalg.norm(rhs), 1e-300)
    if overlap <= orth_tol:
        u, *_ = np.linalg.lstsq(op, rhs, rcond=singular_tol)
        return ResolventResult(system.rule.nodes, u / sw, True, True, float(overlap), ratio, null / sw)
    return ResolventResult(system.rule.nodes, None, False, True, float(overlap), ratio, null / sw)
