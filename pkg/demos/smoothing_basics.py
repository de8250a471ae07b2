"""A first tour of the Taylor-type smoothing means A_{rho,r}.

The operator acts on Fourier coefficients through a multiplier
lambda_{k,r}(rho): low modes (k < r) pass through untouched, high modes
are damped by a truncated-binomial weight.  Order r = 1 recovers the
classical Poisson mean c_k -> rho^|k| c_k.
"""

import math

import numpy as np

from tapmeans import (
    FourierSeries,
    lambda_profile,
    make_cosine,
    make_geometric,
    poisson_kernel_values,
    poisson_mean,
    series_norm,
    synthesize,
    taylor_abel_poisson,
    taylor_form_values,
)

# -- the multiplier itself -------------------------------------------------

rho = 0.9
print(f"multiplier profiles at rho = {rho}")
print(f"{'k':>4} " + " ".join(f"{f'r={r}':>10}" for r in (1, 2, 3)))
for k in (0, 1, 2, 3, 5, 10, 20, 50):
    row = [lambda_profile(k, r, rho)[k] for r in (1, 2, 3)]
    print(f"{k:>4} " + " ".join(f"{v:>10.6f}" for v in row))
print()

# Higher order keeps more of the high frequencies: for fixed k the
# profile increases with r, and for k < r it is exactly 1.

# -- order 1 is the Poisson mean -------------------------------------------

f = make_geometric(0.5).series
a1 = taylor_abel_poisson(f, rho, 1)
pm = poisson_mean(f, rho)
gap = np.max(np.abs(a1.coeffs - pm.coeffs))
print(f"order-1 smoothing vs Poisson mean, coefficient gap: {gap:.2e}")

# The Poisson kernel behind that mean: positive, mass 1, peak
# (1+rho)/(1-rho) at t = 0.

kern = poisson_kernel_values(0.5, 256)
print(f"kernel at rho=0.5: peak {kern.samples.real.max():.6f} (exact 3),"
      f" mean {kern.samples.real.mean():.6f} (exact 1)")
print()

# -- the radial Taylor form -------------------------------------------------

# The same operator can be written without the multiplier: sum the first
# r terms of the Taylor expansion in rho of the Poisson mean.  Both
# routes agree to roundoff.

npts = 512
direct = synthesize(taylor_abel_poisson(f, rho, 3), npts)
taylor = taylor_form_values(f, rho, 3, npts)
print("multiplier route vs radial Taylor route (order 3):"
      f" max gap {np.max(np.abs(direct.samples - taylor.samples)):.2e}")
print()

# -- saturation: the rate wall ----------------------------------------------

# No matter how smooth f is, the error of A_{rho,r} cannot decay faster
# than (1-rho)^r.  On f = cos(rx) the sup error is exactly (1-rho)^r.

print("sup error on cos(rx) against the saturation envelope (1-rho)^r")
print(f"{'rho':>6} {'r':>2} {'error':>12} {'(1-rho)^r':>12}")
for r in (1, 2, 3):
    g = make_cosine(r).series
    for rho in (0.9, 0.99, 0.999):
        smoothed = taylor_abel_poisson(g, rho, r)
        diff = FourierSeries(g.coeffs - smoothed.coeffs, real_valued=True)
        err = series_norm(diff, math.inf)
        print(f"{rho:>6} {r:>2} {err:>12.3e} {(1 - rho) ** r:>12.3e}")
