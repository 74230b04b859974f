"""Verification suites: each check compares a computed value with an oracle.

A check passes when ``|measured - expected| <= tolerance * max(1, |expected|)``.
Checks whose expected value is ``"reported-only"`` always pass.  The status
``discrepancy_documented`` is used only for the five known inconsistencies
in the source formulas (ids ``*.discrepancy.a`` through ``*.discrepancy.e``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

import numpy as np

from . import combinatorics as comb
from . import fredholm as fh
from . import painleve as pv
from . import quadrature as qd
from . import selector as sel
from . import zeta as zt
from .analytic_bernoulli import analytic_bernoulli, fourier_bernoulli

__all__ = [
    "SUITES",
    "REPORTED_ONLY",
    "SuiteConfig",
    "VerificationReport",
    "run_suite",
    "exit_code",
]

REPORTED_ONLY = "reported-only"
STATUSES = ("pass", "fail", "discrepancy_documented")
PROVENANCES = ("paper", "trivial", "derived")

Value = Union[int, float, complex, Fraction, str]


@dataclass(frozen=True)
class SuiteConfig:
    nodes: Optional[int] = None
    grid_step: float = 0.02
    s_max: float = 10.0
    tolerance: Optional[float] = None


@dataclass(frozen=True)
class VerificationReport:
    check_id: str
    status: str
    measured: Value
    expected: Value
    tolerance: float
    provenance: str
    note: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"bad provenance {self.provenance!r}")


def _within(measured, expected, tol: float) -> bool:
    if isinstance(measured, (int, Fraction)) and isinstance(expected, (int, Fraction)) and tol == 0:
        return measured == expected
    m, e = complex(measured), complex(expected)
    if not (cmath.isfinite(m) and cmath.isfinite(e)):
        return False
    return abs(m - e) <= tol * max(1.0, abs(e))


class _Collector:
    def __init__(self, config: SuiteConfig):
        self.config = config
        self.reports: list[VerificationReport] = []

    def check(self, check_id, measured, expected, tol, provenance, note=""):
        if self.config.tolerance is not None and tol > 0:
            tol = self.config.tolerance
        if isinstance(expected, str):
            status = "pass"
        else:
            status = "pass" if _within(measured, expected, tol) else "fail"
        self.reports.append(VerificationReport(check_id, status, measured, expected, tol, provenance, note))

    def discrepancy(self, check_id, measured, expected, note):
        self.reports.append(
            VerificationReport(check_id, "discrepancy_documented", measured, expected, 0.0, "paper", note)
        )

    def nodes(self, default: int) -> int:
        return self.config.nodes or default


# ---------------------------------------------------------------------------


def _combinatorics(c: _Collector) -> None:
    c.check("comb.bernoulli.B0", comb.bernoulli_number(0), Fraction(1), 0, "trivial")
    c.check("comb.bernoulli.B3", comb.bernoulli_number(3), Fraction(0), 0, "derived")
    c.check("comb.bernoulli.B12", comb.bernoulli_number(12), Fraction(-691, 2730), 0, "derived")
    b4 = comb.bernoulli_polynomial(4)
    c.check("comb.bernoulli_poly.B4_difference", b4(Fraction(1)) - b4(Fraction(0)), Fraction(0), 0, "derived")
    c.check("comb.bernoulli_poly.B2_at_0", comb.bernoulli_polynomial(2)(Fraction(0)), Fraction(1, 6), 0, "trivial")
    c.check(
        "comb.norlund.B1_alpha_minus2",
        comb.norlund_polynomial(1, -2, 0),
        Fraction(1),
        0,
        "derived",
        "x - alpha/2 at alpha=-2; the displayed 1/2 contradicts S(3,2) = C(3,2) B_1^(-2)(0) = 3",
    )
    c.check("comb.norlund.B4_alpha_1", comb.norlund_polynomial(4, 1, 0), Fraction(-1, 30), 0, "derived")
    c.check("comb.stirling.S_3_2.recurrence", comb.stirling2(3, 2), 3, 0, "paper")
    c.check("comb.stirling.S_3_2.norlund", comb.stirling2_norlund(3, 2), Fraction(3), 0, "paper")
    c.check("comb.stirling.S_3_2.contour", qd.analytic_stirling_kernel(3, 2), 3.0, 1e-8, "paper")
    c.check("comb.stirling.S_5_2", comb.stirling2(5, 2), 15, 0, "derived")
    mismatches = sum(
        1 for n in range(31) for k in range(n + 1) if comb.stirling2(n, k) != comb.stirling2_norlund(n, k)
    )
    c.check("comb.stirling.triangle_vs_norlund_n30", mismatches, 0, 0, "derived", "count of disagreeing (n,k)")
    em = comb.euler_maclaurin_sum(comb.RationalPolynomial([0, 0, 1]), 10, 1)
    c.check("comb.euler_maclaurin.x2_N10", em.total, Fraction(385), 0, "derived")
    em = comb.euler_maclaurin_sum(comb.constant_function(2.5), 5, 0)
    c.check("comb.euler_maclaurin.constant_N5", em.total, 12.5, 1e-14, "trivial")
    em = comb.euler_maclaurin_sum(comb.reciprocal_function(), 1000, 3, start=20)
    harmonic = math.fsum(1.0 / k for k in range(1, 1001))
    c.check("comb.euler_maclaurin.harmonic_N1000", em.total, harmonic, 1e-12, "derived")


def _kernels(c: _Collector) -> None:
    rule = qd.gauss_legendre(2)
    c.check("quad.gauss_legendre.n2_node", float(rule.nodes[1]), 1 / math.sqrt(3), 1e-15, "derived")
    c.check("quad.gauss_legendre.x5_n3", qd.gauss_legendre(3).integrate(lambda x: x**5), 0.0, 1e-15, "trivial")
    small = qd.CircularContour(0.5, 64)
    c.check("quad.contour.inverse_z", qd.contour_integral(lambda z: 1 / z, small), 1.0, 1e-14, "trivial")
    c.check("quad.contour.exp_over_z2", qd.contour_integral(lambda z: np.exp(z) / z**2, small), 1.0, 1e-12, "derived")
    c.check("quad.stirling_kernel.S_4_4", qd.analytic_stirling_kernel(4, 4), 1.0, 1e-10, "trivial")
    worst = max(
        abs(qd.analytic_stirling_kernel(n, k) - comb.stirling2(n, k)) / comb.stirling2(n, k)
        for n in range(13)
        for k in range(n + 1)
        if comb.stirling2(n, k)
    )
    c.check("quad.stirling_kernel.table_n12", worst, 0.0, 1e-8, "derived", "max relative deviation")
    v128 = qd.analytic_stirling_kernel(2.5, 2, qd.CircularContour(1.0, 128))
    v256 = qd.analytic_stirling_kernel(2.5, 2, qd.CircularContour(1.0, 256))
    c.check("quad.stirling_kernel.s2_5_refinement", abs(v256 - v128) / abs(v256), 0.0, 1e-9, "derived")

    c.check("sel.value.J1_real", complex(sel.selector_value(1, 0.7, -0.2)).real, math.cos(0.45), 1e-15, "paper")
    c.check("sel.value.J2_quarter_turn", complex(sel.selector_value(2, math.pi / 2, 0.0)), 1j / math.sqrt(2), 1e-15, "derived")
    spec2 = sel.selector_spectrum(2)
    c.check("sel.spectrum.J2_top", float(spec2[1]), 0.5, 1e-12, "derived")
    spec3 = sel.selector_spectrum(3, "real_part")
    c.check("sel.spectrum.J3_real_part_sixth", float(spec3[5]), 1 / 6, 1e-12, "derived")
    worst_trace = 0.0
    for J in range(1, 65):
        for variant in sel.VARIANTS:
            diag = complex(sel.selector_value(J, 0.0, 0.0, variant)).real
            worst_trace = max(worst_trace, abs(diag - 1.0))
    c.check("sel.trace.J_le_64", worst_trace, 0.0, 1e-12, "paper", "max |Tr S_J - 1| over J <= 64, all variants")
    c.check("sel.det.J2_lam1", sel.selector_determinant(2, 1.0), 0.25, 1e-15, "derived")
    worst_det = 0.0
    for J in range(1, 17):
        for lam in (-4.0, -1.5, 0.5, 1.0, 2.5, 4.0):
            exact = sel.selector_determinant(J, lam)
            worst_det = max(worst_det, abs(sel.selector_lu_determinant(J, lam) - exact) / max(1.0, abs(exact)))
    c.check("sel.det.lu_vs_closed_J16", worst_det, 0.0, 1e-9, "derived")
    c.check("sel.det.J1000_lam1", sel.selector_determinant(1000, 1.0), math.exp(-1.0), 2e-4, "derived")
    comp = sel.composition_diagnostic(3)
    c.check("sel.composition.J3_scaled", comp.scaled_error, 0.0, 1e-10, "derived", "max |S o S - S/J|")
    c.check("sel.composition.J3_unnormalized", comp.unnormalized_error, 0.0, 1e-10, "derived", "max |P o P - P|")
    grid = np.linspace(-3.0, 3.0, 10)
    rel = sel.sine_kernel_relation(5, grid, grid + 0.05)
    c.check("sel.sine_relation.J5", rel.max_deviation, 0.0, 1e-12, "derived")
    c.discrepancy(
        "sel.discrepancy.a_idempotence",
        comp.idempotent_error,
        0.0,
        "S_J o S_J = S_J/J, not S_J; measured max |S o S - S| at J=3",
    )
    report = sel.closed_form_report(2)
    c.discrepancy(
        "sel.discrepancy.b_closed_form",
        report["closed_vs_example"],
        0.0,
        "boxed closed form vs J=2 example; real_part deviation "
        f"{report['real_part_vs_example']:.3g}, closed vs sum {report['closed_vs_sum']:.3g}",
    )


def _fredholm(c: _Collector) -> None:
    sys64 = fh.build_nystrom(fh.min_kernel(), c.nodes(64))
    c.check("fred.trace.min_xy", float(np.trace(sys64.matrix)) + sys64.tail_traces[0], 0.5, 1e-12, "derived")
    sine_pi = fh.build_nystrom(fh.sine_kernel(math.pi), c.nodes(64))
    c.check("fred.trace.sine_pi", float(np.trace(sine_pi.matrix)), 2.0, 1e-10, "derived")

    spectrum = fh.eigenvalues_sym(fh.build_nystrom(fh.min_kernel(), c.nodes(200))).eigenvalues
    for k in range(1, 6):
        exact = 1.0 / ((k - 0.5) ** 2 * math.pi**2)
        c.check(f"fred.eigen.min_xy.k{k}", float(spectrum[k - 1]), exact, 1e-7 * exact, "paper")

    for name, kernel in (("min_xy", fh.min_kernel()), ("sine_s1", fh.sine_kernel(1.0))):
        system = fh.build_nystrom(kernel, c.nodes(64))
        for lam in (0.3, 0.7):
            vals = [fh.system_det(system, lam, route, minus=True).value for route in fh.ROUTES]
            spread = (max(vals) - min(vals)) / abs(vals[0])
            c.check(f"fred.routes.{name}.lam{lam}", spread, 0.0, 1e-8, "derived", "relative spread of 3 routes")

    n128 = c.nodes(128)
    min_sys = fh.build_nystrom(fh.min_kernel(), n128)
    dd_sys = fh.build_nystrom(fh.green_dirichlet_kernel(), n128)
    for lam in (1.0, 4.0, 9.0):
        r = math.sqrt(lam)
        c.check(f"fred.closed_form.min_xy.lam{lam:g}", fh.system_det(min_sys, lam, minus=True).value, math.cos(r), 1e-7, "paper")
        c.check(f"fred.closed_form.dirichlet.lam{lam:g}", fh.system_det(dd_sys, lam, minus=True).value, math.sin(r) / r, 1e-7, "paper")
        c.check(
            f"fred.bridge.DN.lam{lam:g}",
            fh.system_det(min_sys, lam, minus=True).value,
            zt.det_ratio(lam, "DN"),
            1e-7,
            "derived",
        )

    u = lambda x: np.cos(x)  # noqa: E731
    v = lambda x: x + 1.0  # noqa: E731
    inner = math.fsum([math.sin(1.0) + math.cos(1.0) - 1.0, math.sin(1.0)])
    c.check("fred.rank_one.lam0_5", fh.fredholm_det(fh.rank_one_kernel(u, v, 2.0), 0.5, 32).value, 1 + 0.5 * 2.0 * inner, 1e-12, "paper")
    c.check("fred.projector.rank2", fh.fredholm_det(fh.projector_kernel(2), 0.5, 32, minus=True).value, 0.25, 1e-12, "paper")
    c.check("fred.lambda0", fh.system_det(min_sys, 0.0, "lu").value, 1.0, 0, "trivial")
    res = fh.resolvent_solve(fh.min_kernel(), math.pi**2 / 4, lambda x: np.ones_like(x), c.nodes(64))
    c.check("fred.resolvent.singular_flag", int(res.singular), 1, 0, "derived")


def _zeta(c: _Collector) -> None:
    c.check("zeta.riemann.s2", zt.riemann_zeta(2).real, math.pi**2 / 6, 1e-12, "derived")
    c.check("zeta.riemann.s_minus1", zt.riemann_zeta(-1).real, -1 / 12, 1e-12, "paper")
    c.check("zeta.riemann.s0", zt.riemann_zeta(0).real, -0.5, 1e-12, "derived")
    c.check("zeta.hurwitz.s2_half", zt.hurwitz_zeta(2, 0.5).real, math.pi**2 / 2, 1e-11, "derived")
    b3 = comb.bernoulli_polynomial(3)(Fraction(3, 10))
    c.check("zeta.hurwitz.s_minus2_x0_3", zt.hurwitz_zeta(-2, 0.3).real, float(-b3 / 3), 1e-12, "derived")
    c.check("zeta.derivative.s0", zt.zeta_derivative(0.0), -0.5 * math.log(2 * math.pi), 1e-9, "paper")
    c.check("zeta.derivative.s_minus1", zt.zeta_derivative(-1.0), -0.1654211437, 1e-8, "derived")
    dd = zt.det_zeta_laplacian("DD")
    c.check("zeta.det.DD_vs_2pi", dd, 2 * math.pi, 1e-9, "paper", "zeta_L'(0) = -log 2 gives det 2")
    c.check("zeta.det.DD", dd, 2.0, 1e-9, "derived")
    c.check("zeta.det.NN_equals_DD", zt.det_zeta_laplacian("NN"), dd, 1e-15, "trivial")
    c.check("zeta.det.DN", zt.det_zeta_laplacian("DN"), 2.0, 1e-9, "derived")
    c.check("zeta.det_ratio.DD_lam0", zt.det_ratio(0.0, "DD"), 1.0, 0, "trivial")
    c.check("zeta.det_ratio.DD_pi2", zt.det_ratio(math.pi**2, "DD"), 0.0, 1e-15, "derived")
    c.check("zeta.det_ratio.DD_minus1", zt.det_ratio(-1.0, "DD"), math.sinh(1.0), 1e-15, "derived")
    worst = max(abs(zt.zeta_even(m) - zt.riemann_zeta(2 * m).real) / zt.zeta_even(m) for m in range(1, 16))
    c.check("zeta.even.m_le_15", worst, 0.0, 1e-12, "paper", "max relative deviation from riemann_zeta(2m)")
    series = zt.log_sinc_series(20)
    c.check("zeta.log_sinc.x1_M20", series.evaluate(1.0), math.log(math.sin(1.0)), 1e-10, "derived")
    c.check("zeta.log_sinc.taylor_m1", series.sinc_sqrt_taylor[1], Fraction(-1, 6), 0, "paper")
    glaisher = zt.glaisher_constant()
    c.check("zeta.glaisher.A", glaisher.A, 1.2824271291, 1e-9, "paper")
    c.discrepancy(
        "zeta.discrepancy.c_sinc_bernoulli",
        abs(float(series.bernoulli_claim[1])),
        abs(float(series.sinc_sqrt_taylor[1])),
        "claimed |coefficient| B_2/2! = 1/12; Taylor coefficient of sin(sqrt l)/sqrt l is -1/6",
    )
    c.discrepancy(
        "zeta.discrepancy.d_glaisher_formula",
        glaisher.formula_residual,
        0.0,
        "residual of zeta'(-1) = -(1/12) log 2 pi + log A with the displayed A",
    )

    c.check("abern.s1_x0_7", analytic_bernoulli(1, 0.7).real, 0.2, 1e-12, "derived")
    c.check("abern.s_to_0", analytic_bernoulli(1e-9, 0.4).real, 1.0, 0, "trivial")
    rng = np.random.default_rng(20240607)
    xs = rng.uniform(0.0, 1.0, 10)
    worst = 0.0
    for n in range(1, 11):
        poly = comb.bernoulli_polynomial(n)
        for x in xs:
            worst = max(worst, abs(analytic_bernoulli(n, float(x)).real - float(poly(Fraction(float(x))))))
    c.check("abern.integer_coincidence_n10", worst, 0.0, 1e-10, "derived")
    four = fourier_bernoulli(2.0, 0.25, 10_000)
    gap = abs(four.real - analytic_bernoulli(2, 0.25).real)
    c.check("abern.fourier_vs_hurwitz", gap, 0.0, four.tail_bound, "derived", "tolerance is the reported tail bound")
    c.check("abern.fourier_s3_mid", fourier_bernoulli(3.0, 0.5, 100).real, 0.0, 1e-15, "trivial")


def _painleve(c: _Collector) -> None:
    cfg = c.config
    small = pv.sine_log_det(0.01, 64)
    r = 0.01 / math.pi
    c.check("pv.small_s.series", small, -2 * r - 2 * r * r - 8 * r**3 / 3, 1e-9, "derived", "-Tr K - Tr K^2/2 - Tr K^3/3")
    grid8 = pv.sine_det_grid(8.0, 50, c.nodes(pv.min_nodes(8.0)))
    c.check("pv.monotone.s8_50pts", int(np.all(np.diff(grid8.log_det) < 0)), 1, 0, "derived")
    worst = max(
        abs(pv.sine_log_det(s, c.nodes(120), "lu") - pv.eigenproduct_log_det(s, c.nodes(120)))
        for s in (1.0, 3.0, 6.0)
    )
    c.check("pv.lu_vs_eigenproduct", worst, 0.0, 1e-9, "derived")

    h = cfg.grid_step
    n_sigma = c.nodes(150)
    for t in (1.0, 2.0, 3.0, 4.0):
        r_h = pv.sigma_residual(t, h, n_sigma)
        r_half = pv.sigma_residual(t, h / 2, n_sigma)
        c.check(f"pv.sigma.t{t:g}.residual", r_h, 0.0, 1e-3, "derived", f"h={h:g}")
        c.check(f"pv.sigma.t{t:g}.halving_ratio", r_h / r_half, 4.0, 0.1, "derived")

    qgrid = pv.sine_det_grid(6.0, 120, c.nodes(pv.min_nodes(6.0)))
    qs = pv.q_function(qgrid)
    mask = (qs.s >= 0.5) & (qs.s <= 6.0)
    c.check("pv.q_positive.s0_5_to_6", int(np.all(qs.q[mask] > 0)), 1, 0, "derived")
    at_one = pv.painleve_residuals(pv.sine_det_grid(1.2, 24, c.nodes(60), s_min=0.8))
    mid = min(at_one, key=lambda r: abs(r.s - 1.0))
    c.check(f"pv.q_residual.s{mid.s:.2f}", mid.residual_paper, REPORTED_ONLY, 0.0, "paper", "no threshold")

    s_max = cfg.s_max
    fit_grid = pv.sine_det_grid(s_max, int(round((s_max - 4.0) / 0.1)) + 1, c.nodes(300), s_min=4.0)
    fit = pv.asymptotic_fit(fit_grid, (4.0, s_max))
    c.check("pv.fit.b", fit.b, -0.25, 0.02, "paper")
    c.check("pv.fit.C0", fit.C0, pv.asymptotic_constant(), 0.02, "derived", "bandwidth frame")
    c.check("pv.fit.a_interval", fit.a_interval, -0.125, 1e-3, "derived", "quadratic coefficient in t = 2s")
    c.check("pv.fit.a_hypothesis", fit.a, REPORTED_ONLY, 0.0, "paper", f"hypothesis value {fit.hypothesis_a:.6g}")
    c.check("pv.fit.residual_norm", fit.residual_norm, 0.0, 1e-3, "derived")

    study = pv.selector_limit_study([10, 100, 1000, 10000], [1.0])
    row = [r for r in study.rows if r[0] == 1000][0]
    c.check("pv.selector_limit.J1000", row[2], math.exp(-1.0), 2e-4, "derived")
    c.discrepancy(
        "pv.discrepancy.e_selector_leading",
        study.measured_leading[1.0],
        row[6],
        "measured J -> infinity limit of log D_J(1) vs displayed -(J^2/2 pi^2) at J=1000",
    )


SUITES: dict[str, Callable[[_Collector], None]] = {
    "combinatorics": _combinatorics,
    "kernels": _kernels,
    "fredholm": _fredholm,
    "zeta": _zeta,
    "painleve": _painleve,
}


def run_suite(name: str, config: Optional[SuiteConfig] = None) -> tuple[list[VerificationReport], int]:
    """Run one suite (or ``all``); reports come back sorted by check_id."""
    config = config or SuiteConfig()
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES) + ['all']}")
    collector = _Collector(config)
    for suite in names:
        SUITES[suite](collector)
    reports = sorted(collector.reports, key=lambda r: r.check_id)
    return reports, exit_code(reports)


def exit_code(reports) -> int:
    return 1 if any(r.status == "fail" for r in reports) else 0
