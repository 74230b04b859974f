"""Bernoulli/Stirling combinatorics, zeta regularization and Fredholm determinants."""

from .analytic_bernoulli import analytic_bernoulli, fourier_bernoulli
from .combinatorics import (
    RationalPolynomial,
    bernoulli_number,
    bernoulli_polynomial,
    euler_maclaurin_sum,
    norlund_polynomial,
    stirling2,
    stirling2_norlund,
)
from .fredholm import (
    build_nystrom,
    eigenvalues_sym,
    fredholm_det,
    green_dirichlet_kernel,
    min_kernel,
    resolvent_solve,
    sine_kernel,
)
from .linalg import jacobi_eigenvalues, lu_logdet
from .quadrature import analytic_stirling_kernel, contour_integral, gauss_legendre
from .selector import selector_determinant, selector_spectrum, selector_value
from .verify import run_suite
from .zeta import det_ratio, det_zeta_laplacian, hurwitz_zeta, riemann_zeta, zeta_derivative, zeta_even

__version__ = "0.1.0"
