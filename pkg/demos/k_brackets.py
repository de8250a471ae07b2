"""Bracketing the K-functional K_n(delta, f)_p from both sides.

K_n measures smoothness at scale delta as an infimum over all splittings
f = (f - h) + h.  The infimum is not computable directly, so the package
returns a certified interval: a lower bound from the radial derivative
of the Poisson mean and an upper bound from explicit competitor h.
"""

import math

from tapmeans import k_bracket, k_upper_minimize, make_mode, make_weierstrass
from tapmeans.operators import falling_factorial

# On a single mode e^{ikx} the infimum has a closed form,
# min(1, delta^n * k!/(k-n)!), so the bracket can be judged exactly.

print("single mode e^{i4x}, n = 1, p = 2")
print(f"{'delta':>7} {'lower':>10} {'exact':>10} {'upper':>10} {'witness':>16}")
for delta in (0.4, 0.2, 0.1, 0.05, 0.02):
    f = make_mode(4).series
    br = k_bracket(f, delta, 1, 2.0)
    exact = min(1.0, delta * float(falling_factorial(4, 1)))
    print(f"{delta:>7} {br.lower:>10.5f} {exact:>10.5f} {br.upper:>10.5f}"
          f" {br.upper_witness['source']:>16}")
print()

# The direct minimization upper bound usually lands on the exact value.
val, witness = k_upper_minimize(make_mode(4).series, 0.1, 1, 2.0)
print(f"minimizer found {val:.6f} via {witness['method']}")
print()

# On a rough function the two ends of the bracket track the same
# delta^alpha trend; the interval is what honest uncertainty looks like.
rough = make_weierstrass(0.5, 8).series
print("lacunary function, n = 1, p = inf")
print(f"{'delta':>7} {'lower':>12} {'upper':>12} {'upper/delta^0.5':>16}")
for delta in (0.25, 0.1, 0.04, 0.016):
    br = k_bracket(rough, delta, 1, math.inf)
    print(f"{delta:>7} {br.lower:>12.5f} {br.upper:>12.5f}"
          f" {br.upper / delta ** 0.5:>16.4f}")
print()

# For delta > 1/2 the lower-bound construction is out of range; the
# bracket says so instead of guessing.
br = k_bracket(rough, 0.7, 1, 2.0)
print(f"delta = 0.7: lower available: {br.lower_available}, upper {br.upper:.5f}")
