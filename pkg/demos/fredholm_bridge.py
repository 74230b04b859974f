"""Discretized Fredholm determinants against their closed forms.

The Green's function of -d^2/dx^2 on [0, 1] has a kink on the diagonal, so
the Nystrom matrix converges algebraically rather than exponentially.  This
script prints the error table as the node count doubles.
"""

import math

from bernfred.fredholm import fredholm_det, green_dirichlet_kernel, min_kernel

LAM = 4.0
exact = {"min_xy": math.cos(2.0), "green_dd": math.sin(2.0) / 2.0}
kernels = {"min_xy": min_kernel(), "green_dd": green_dirichlet_kernel()}

print(f"det(I - {LAM} K) versus closed form")
print(f"{'n':>5} {'min_xy error':>14} {'green_dd error':>15}")
for n in (8, 16, 32, 64, 128):
    errs = [abs(fredholm_det(kernels[k], LAM, n, minus=True).value - exact[k]) for k in kernels]
    print(f"{n:>5} {errs[0]:>14.3e} {errs[1]:>15.3e}")
