"""Gap probability of the sine process and its large-gap asymptotics.

log D(s) is computed on a grid, the sigma-form residual is checked at a few
points, and the fit log D = a s^2 + b log s + C0 + c1/s^2 is compared with
the known constants a = -1/2, b = -1/4, C0 = log(2)/12 + 3 zeta'(-1).
"""

import math

from bernfred.painleve import asymptotic_fit, sigma_residual, sine_det_grid, sine_log_det

for s in (0.5, 1.0, 2.0, 4.0):
    ld = sine_log_det(s, 120)
    print(f"s={s:4.1f}  D(s)={math.exp(ld):.6e}")

print("\nsigma-form residual, step h and h/2:")
for t in (1.0, 2.5, 4.0):
    r1, r2 = sigma_residual(t, 0.04), sigma_residual(t, 0.02)
    print(f"t={t:3.1f}  {r1:+.2e}  {r2:+.2e}  ratio {r1 / r2:.2f}")

fit = asymptotic_fit(sine_det_grid(10.0, 61, 300, s_min=4.0))
print("\nfit on s in [4, 10]:")
for key, value in fit.summary().items():
    print(f"  {key:24s} {value:+.6f}")
