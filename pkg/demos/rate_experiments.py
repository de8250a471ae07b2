"""Rate experiments: direct, saturation, and comparison runs.

Each driver sweeps the smoothing parameter over a grid of rho values,
fits a log-log slope to the error curve, and checks it against the rate
the smoothness class predicts.
"""

import math

from tapmeans import (
    ExperimentConfig,
    run_comparison_experiment,
    run_direct_experiment,
    run_identity_suite,
    run_saturation_experiment,
)


def show(report):
    for line in report.summary_lines():
        print(line)
    print()


# Sanity first: the structural identities on the default catalog.
show(run_identity_suite(ExperimentConfig(function="all")))

# A lacunary series with Hoelder exponent 0.5, lifted once so it has one
# radial derivative.  With r = 2 and n = 1 the predicted error decay is
# (1-rho)^(r-n) * omega(1-rho) = (1-rho)^1.5.
cfg = ExperimentConfig(
    function="smoothed:m=1,base=weierstrass:alpha=0.5,J=10",
    r=2, n=1,
    omega={"kind": "power", "alpha": 0.5},
)
show(run_direct_experiment(cfg))

# Same function, sup norm instead of L2.
show(run_direct_experiment(ExperimentConfig(
    function="smoothed:m=1,base=weierstrass:alpha=0.5,J=10",
    r=2, n=1, p="inf",
    omega={"kind": "power", "alpha": 0.5},
)))

# An analytic function instead: the error hits the saturation wall
# (1-rho)^r and stays there.
for r in (1, 2, 3):
    show(run_saturation_experiment(
        ExperimentConfig(function="geometric:q=0.5", r=r, n=1)
    ))

# Two classical transforms approximate the Poisson mean at the same
# order r, one measured against (1-rho), one against (-ln rho).
show(run_comparison_experiment(
    ExperimentConfig(function="geometric:q=0.5", r=2, p=math.inf)
))
