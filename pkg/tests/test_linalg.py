import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bernfred.linalg import NumericalError, jacobi_eigenvalues, lu_logdet


def random_symmetric(rng, n):
    a = rng.standard_normal((n, n))
    return 0.5 * (a + a.T)


@pytest.mark.parametrize("n", [1, 2, 3, 7, 32, 65])
def test_jacobi_matches_numpy(n):
    a = random_symmetric(np.random.default_rng(n), n)
    got = np.sort(jacobi_eigenvalues(a))
    ref = np.linalg.eigvalsh(a)
    assert np.max(np.abs(got - ref)) < 1e-12 * max(1, np.abs(ref).max())


def test_jacobi_orders_by_magnitude():
    vals = jacobi_eigenvalues(np.diag([0.1, -3.0, 2.0, 0.0]))
    assert vals.tolist() == [-3.0, 2.0, 0.1, 0.0]


def test_jacobi_hermitian():
    rng = np.random.default_rng(5)
    a = rng.standard_normal((9, 9)) + 1j * rng.standard_normal((9, 9))
    h = 0.5 * (a + a.conj().T)
    got = np.sort(jacobi_eigenvalues(h))
    assert np.max(np.abs(got - np.linalg.eigvalsh(h))) < 1e-12


def test_jacobi_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        jacobi_eigenvalues(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_jacobi_sweep_limit():
    a = random_symmetric(np.random.default_rng(1), 20)
    with pytest.raises(NumericalError):
        jacobi_eigenvalues(a, max_sweeps=1)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=2, max_value=24), st.integers(min_value=0, max_value=10_000))
def test_jacobi_trace_and_norm_preserved(n, seed):
    a = random_symmetric(np.random.default_rng(seed), n)
    vals = jacobi_eigenvalues(a)
    assert abs(vals.sum() - np.trace(a)) < 1e-10 * max(1, np.abs(a).sum())
    assert abs(np.sum(vals**2) - np.sum(a * a)) < 1e-10 * np.sum(a * a)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=30), st.integers(min_value=0, max_value=10_000))
def test_lu_logdet_matches_slogdet(n, seed):
    a = np.random.default_rng(seed).standard_normal((n, n))
    ld = lu_logdet(a)
    sign, logabs = np.linalg.slogdet(a)
    assert ld.phase == sign
    assert abs(ld.log_abs - logabs) < 1e-10 * max(1, abs(logabs))


def test_lu_complex_phase():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    ld = lu_logdet(a)
    assert abs(ld.value - np.linalg.det(a)) < 1e-12 * abs(np.linalg.det(a))


def test_lu_singular_and_large():
    assert lu_logdet(np.zeros((3, 3))).singular
    assert lu_logdet(np.zeros((3, 3))).value == 0.0
    big = np.diag(np.full(400, 1e3))
    ld = lu_logdet(big)
    assert np.isclose(ld.log_abs, 400 * np.log(1e3))
    assert ld.phase == 1.0
