"""Dense kernels: cyclic Jacobi eigenvalues and pivoted LU log-determinants."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["jacobi_eigenvalues", "lu_logdet", "LogDet", "NumericalError"]


class NumericalError(ArithmeticError):
    pass


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Tournament schedule: n-1 rounds of n/2 disjoint (p, q) pairs, n even."""
    players = list(range(n))
    rounds = []
    for _ in range(n - 1):
        p = np.array([min(players[i], players[n - 1 - i]) for i in range(n // 2)])
        q = np.array([max(players[i], players[n - 1 - i]) for i in range(n // 2)])
        rounds.append((p, q))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _off_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def _jacobi_real(a: np.ndarray, tol: float, max_sweeps: int) -> np.ndarray:
    n = a.shape[0]
    if n == 1:
        return a.diagonal().copy()
    pad = n % 2
    if pad:
        a = np.pad(a, ((0, 1), (0, 1)))
    m = a.shape[0]
    schedule = _round_robin(m)
    off0 = _off_norm(a)
    floor = 4 * np.finfo(float).eps * np.linalg.norm(a)
    target = max(tol * off0, floor)
    for _ in range(max_sweeps):
        off = _off_norm(a)
        if off <= target:
            break
        for p, q in schedule:
            apq = a[p, q]
            active = apq != 0.0
            if not active.any():
                continue
            app, aqq = a[p, p], a[q, q]
            safe = np.where(active, apq, 1.0)
            tau = (aqq - app) / (2.0 * safe)
            big = np.abs(tau) > 1e150
            tau_c = np.where(big, 1.0, tau)
            t = np.sign(tau_c) / (np.abs(tau_c) + np.sqrt(1.0 + tau_c * tau_c))
            t = np.where(big, 0.5 / np.where(big, tau, 1.0), t)
            t[tau == 0.0] = 1.0
            t[~active] = 0.0
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            rows_p, rows_q = a[p, :], a[q, :]
            a[p, :] = c[:, None] * rows_p - s[:, None] * rows_q
            a[q, :] = s[:, None] * rows_p + c[:, None] * rows_q
            cols_p, cols_q = a[:, p], a[:, q]
            a[:, p] = cols_p * c - cols_q * s
            a[:, q] = cols_p * s + cols_q * c
            a[p, q] = 0.0
            a[q, p] = 0.0
    else:
        raise NumericalError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    vals = a.diagonal().copy()
    if pad:
        # the padded zero row/column stays decoupled; drop one zero eigenvalue
        vals = np.delete(vals, n)
    return vals


def jacobi_eigenvalues(matrix: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric or complex Hermitian matrix, descending by magnitude.

    Uses the parallel (round-robin) ordering of the cyclic Jacobi method, so
    each round applies n/2 disjoint rotations as one vectorized update.
    Complex Hermitian ``H = A + iB`` is handled through the real symmetric
    embedding ``[[A, -B], [B, A]]``, whose spectrum is that of ``H`` doubled.
    """
    h = np.asarray(matrix)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("square matrix required")
    scale = max(np.abs(h).max(initial=0.0), 1.0)
    if np.abs(h - h.conj().T).max(initial=0.0) > 1e-10 * scale:
        raise ValueError("matrix is not symmetric/Hermitian")
    if np.iscomplexobj(h) and np.abs(h.imag).max(initial=0.0) > 0:
        n = h.shape[0]
        emb = np.block([[h.real, -h.imag], [h.imag, h.real]])
        emb = 0.5 * (emb + emb.T)
        vals = np.sort(_jacobi_real(emb, tol, max_sweeps))
        vals = 0.5 * (vals[0::2] + vals[1::2])
        assert len(vals) == n
    else:
        a = np.array(h.real, dtype=float)
        vals = _jacobi_real(0.5 * (a + a.T), tol, max_sweeps)
    order = np.lexsort((-vals, -np.abs(vals)))
    return vals[order]


@dataclass(frozen=True)
class LogDet:
    """``det = phase * exp(log_abs)``; ``singular`` when a zero pivot was hit."""

    log_abs: float
    phase: complex
    singular: bool = False

    @property
    def value(self):
        if self.singular:
            return 0.0
        v = self.phase * np.exp(self.log_abs)
        return v.real if isinstance(self.phase, float) else v


def lu_logdet(matrix: np.ndarray) -> LogDet:
    """Partial-pivot LU, accumulating log|pivot| and the sign/phase separately."""
    a = np.array(matrix, dtype=complex if np.iscomplexobj(matrix) else float)
    n = a.shape[0]
    log_abs = 0.0
    phase = 1.0 + 0j if np.iscomplexobj(a) else 1.0
    for k in range(n):
        piv = k + int(np.argmax(np.abs(a[k:, k])))
        if a[piv, k] == 0:
            return LogDet(-np.inf, 0.0 * phase, True)
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            phase = -phase
        pivot = a[k, k]
        log_abs += np.log(abs(pivot))
        phase = phase * (pivot / abs(pivot))
        if k + 1 < n:
            col = a[k + 1 :, k] / pivot
            a[k + 1 :, k + 1 :] -= np.outer(col, a[k, k + 1 :])
    if isinstance(phase, complex) or np.iscomplexobj(phase):
        phase = complex(phase)
    else:
        phase = float(phase)
    return LogDet(float(log_abs), phase, False)
