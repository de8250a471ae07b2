"""Which moduli of continuity the rate machinery accepts, and why.

The rate-implies-smoothness drivers require omega to satisfy two integral
growth conditions (called Z and Z_n here).  These checkers probe the
defining ratios on dyadic grids and report sup and limit values.
"""

from tapmeans import (
    ModulusFunction,
    check_almost_decreasing,
    check_doubling,
    check_zygmund,
    check_zygmund_n,
    rate_envelope,
)

candidates = [
    ModulusFunction.power(0.5),
    ModulusFunction.power(0.99),
    ModulusFunction.power(1.0),
    ModulusFunction.power_log(0.5, -1.0),
    ModulusFunction.power_log(0.0, -1.0),
]

for w in candidates:
    print(w.describe())
    for rep in (
        check_zygmund(w),
        check_zygmund_n(w, 1),
        check_doubling(w),
        check_almost_decreasing(w, 1),
    ):
        print(f"  {rep}")
    print()

# t^1 fails Z_1: the tail integral picks up a logarithm, so t^n can
# never serve as an order-n modulus.  The pure-log modulus 1/ln(e/t)
# fails Z in the other direction: its head integral diverges.  For
# t^alpha with alpha < 1 the ratios are the textbook constants
# 1/alpha and 1/(1-alpha).

# The log-corrected modulus above is a borderline call: its Z ratio
# does converge, but only like 1/ln(1/t), too slowly for the default
# 30 dyadic probes to certify.  Deeper probes settle it.
w = ModulusFunction.power_log(0.5, -1.0)
print("log-corrected modulus at higher probe depth")
print(f"  {check_zygmund(w, depth=60)}")
print()

# The combined envelope (1-rho)^(r-n) * omega(1-rho) that the direct
# estimate predicts:
w = ModulusFunction.power(0.5)
print("predicted error envelope for r=2, n=1, omega=t^0.5")
for rho in (0.9, 0.99, 0.999):
    print(f"  rho={rho}: {rate_envelope(w, 2, 1, rho):.6e}")

# A tabulated modulus works the same way; values between knots are
# interpolated log-linearly.  The table must pin down the origin.
import numpy as np

ts = np.concatenate([[0.0], np.geomspace(1e-6, 1.0, 40)])
tab = ModulusFunction.from_table(ts, ts**0.3)
print()
print(tab.describe())
print(f"  {check_zygmund(tab)}")
