import math

import numpy as np
import pytest

from bernfred.painleve import (
    LogDetGrid,
    ResolutionError,
    WindowError,
    _sigma_from_samples,
    asymptotic_constant,
    asymptotic_fit,
    bandwidth_to_interval,
    eigenproduct_log_det,
    interval_log_det,
    interval_to_bandwidth,
    min_nodes,
    painleve_residuals,
    q_function,
    residual_rows,
    selector_limit_study,
    sigma_residual,
    sine_det_grid,
    sine_log_det,
)


def test_frames_round_trip():
    for s in (0.0, 0.3, 7.5):
        assert interval_to_bandwidth(bandwidth_to_interval(s)) == s
    assert min_nodes(10) == 120


def test_log_det_zero_and_small_s():
    assert sine_log_det(0.0, 40) == 0.0
    # three-term series in r = s / pi
    s = 0.01
    r = s / math.pi
    series = -2 * r - 2 * r * r - (8 / 3) * r**3
    assert abs(sine_log_det(s, 40) - series) < 1e-9


def test_frames_agree():
    for s in (0.5, 1.7, 3.0):
        assert abs(sine_log_det(s, 80) - interval_log_det(2 * s, 80)) < 1e-12


def test_routes_agree():
    for s in (0.4, 2.0, 5.0):
        lu = sine_log_det(s, 90)
        assert abs(eigenproduct_log_det(s, 90) - lu) < 1e-10 * max(1, abs(lu))


def test_monotone_decreasing():
    vals = [sine_log_det(s, 100) for s in np.linspace(0.1, 6, 12)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_known_gap_probability():
    # E(0; t=2) for the sine process; reference from an independent 200-node eigen product
    ref = eigenproduct_log_det(1.0, 200)
    assert abs(sine_log_det(1.0, 60) - ref) < 1e-12


def test_resolution_error_on_nonpositive_determinant(monkeypatch):
    from bernfred import painleve
    from bernfred.fredholm import FredholmResult

    fake = FredholmResult(-0.1, math.log(0.1), -1.0, "lu", None, False)
    monkeypatch.setattr(painleve, "fredholm_det", lambda *a, **k: fake)
    with pytest.raises(ResolutionError, match="increase"):
        sine_log_det(3.0, 60)


def test_grid_validation():
    with pytest.raises(ValueError):
        sine_det_grid(13.0, 10, 200)
    with pytest.raises(ValueError):
        sine_det_grid(2.0, 10, 40)
    with pytest.raises(ValueError):
        LogDetGrid(np.array([0.1, 0.2, 0.35]), np.zeros(3), 40, 0.1)


def test_q_function_on_quadratic():
    s = np.linspace(1.0, 2.0, 11)
    grid = LogDetGrid(s, -3.0 * s**2 + s, 40, 0.1)
    qs = q_function(grid)
    assert len(qs.s) == len(s) - 4
    assert np.allclose(qs.q, 6.0, atol=1e-9)
    assert np.allclose(qs.q_prime, 0.0, atol=1e-7)
    with pytest.raises(ValueError):
        q_function(LogDetGrid(s[:6], s[:6], 40, 0.1))


def test_sigma_form_on_exact_solution():
    # small-t expansion of log det through t^3; the residual should vanish to that order
    t, h = 0.05, 0.002
    L = [-(u / math.pi) - (u / math.pi) ** 2 / 2 - (u / math.pi) ** 3 / 3 for u in (t + k * h for k in (-2, -1, 0, 1, 2))]
    assert abs(_sigma_from_samples(t, h, L)) < 1e-6


@pytest.mark.parametrize("t", [1.0, 2.5, 4.0])
def test_sigma_residual_small(t):
    assert abs(sigma_residual(t, 0.02, 150)) < 5e-5


def test_sigma_residual_second_order():
    r1 = abs(sigma_residual(2.0, 0.04, 150))
    r2 = abs(sigma_residual(2.0, 0.02, 150))
    assert 3.0 < r1 / r2 < 5.0


def test_painleve_residuals_and_rows():
    grid = sine_det_grid(1.2, 8, 60, s_min=1.0)
    reports = painleve_residuals(grid, sigma_nodes=100)
    assert len(reports) == 4
    assert all(abs(r.residual_sigma_oracle) < 1e-3 for r in reports)
    rows = residual_rows(grid, reports)
    assert list(rows[0]) == ["s", "log_det", "q", "q_prime", "q_second", "residual_paper", "residual_sigma"]
    with pytest.raises(ValueError):
        painleve_residuals(LogDetGrid(np.arange(8) * 0.1, np.zeros(8), 60, 0.1))


def test_asymptotic_constant_value():
    assert abs(asymptotic_constant() - (math.log(2) / 12 - 3 * 0.16542114370045092)) < 1e-9


@pytest.mark.slow
def test_asymptotic_fit():
    grid = sine_det_grid(10.0, 61, 300, s_min=4.0)
    fit = asymptotic_fit(grid)
    assert abs(fit.a + 0.5) < 1e-4
    assert abs(fit.a_interval + 0.125) < 2.5e-5
    assert abs(fit.b + 0.25) < 0.02
    assert abs(fit.C0 - fit.reference_constant) < 5e-3
    assert abs(fit.a - fit.hypothesis_a) > 0.4
    assert fit.summary()["C0_reference"] == fit.reference_constant


def test_fit_window_errors():
    grid = LogDetGrid(np.linspace(1.0, 3.0, 9), np.zeros(9), 60, 0.25)
    with pytest.raises(WindowError):
        asymptotic_fit(grid, (4.0, 10.0))
    with pytest.raises(WindowError):
        asymptotic_fit(grid, (1.0, 2.0))


def test_selector_limit_study():
    study = selector_limit_study([10, 100, 1000, 10000], [0.0, 1.0, 2.0])
    assert study.measured_leading[0.0] == 0.0
    assert abs(study.measured_leading[1.0] + 1.0) < 1e-5
    assert abs(study.measured_leading[2.0] + 2.0) < 1e-5
    assert not study.quadratic_compatible[1.0]
    row = next(r for r in study.rows if r[0] == 1000 and r[1] == 1.0)
    assert abs(row[2] - math.exp(-1)) < 2e-4
    assert abs(row[6] + 1000**2 / (2 * math.pi**2)) < 1e-6
