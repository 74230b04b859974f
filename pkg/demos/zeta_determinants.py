"""Zeta-regularized determinants of -d^2/dx^2 on [0, 1].

For Dirichlet conditions the eigenvalues are (n pi)^2, so the spectral zeta
function is pi^(-2s) zeta(2s) and its derivative at 0 is -log 2.  The
regularized determinant is therefore 2, and the relative determinant
det(L - lam) / det(L) is sin(sqrt(lam)) / sqrt(lam).
"""

from bernfred.zeta import det_ratio, det_zeta_laplacian, glaisher_constant, riemann_zeta, zeta_derivative

print(f"zeta(-1)  = {riemann_zeta(-1).real:+.15f}")
print(f"zeta'(0)  = {zeta_derivative(0.0):+.12f}")
print(f"zeta'(-1) = {zeta_derivative(-1.0):+.12f}")
for bc in ("DD", "NN", "DN"):
    print(f"det_zeta({bc}) = {det_zeta_laplacian(bc):.12f}")
for lam in (-1.0, 1.0, 9.0):
    print(f"ratio DD at lam={lam:+.0f}: {det_ratio(lam, 'DD'):+.12f}")
g = glaisher_constant()
print(f"Glaisher A = {g.A:.12f}")
