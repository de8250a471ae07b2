"""Taylor-type smoothing means for periodic functions.

Fourier-side operators built from the Poisson kernel, approximation-rate
experiments, K-functional brackets, and modulus-of-continuity condition
checks, with a small catalog of test functions and a CLI.
"""

from .catalog import (
    CatalogEntry,
    catalog_entry,
    geometric_poisson_values,
    make_cosine,
    make_geometric,
    make_mode,
    make_random_real_poly,
    make_smoothed,
    make_trig_poly,
    make_weierstrass,
    standard_catalog,
)
from .fourier import (
    FourierSeries,
    GridSignal,
    analyze,
    coefficient_l2,
    conjugate,
    default_grid_size,
    derivative,
    from_modes,
    grid,
    lp_norm,
    series_norm,
    synthesize,
)
from .kfunctional import (
    KBracket,
    k_bracket,
    k_lower_bound,
    k_upper_minimize,
    k_upper_smoothing,
)
from .moduli import (
    ConditionReport,
    ModulusFunction,
    check_almost_decreasing,
    check_doubling,
    check_zygmund,
    check_zygmund_n,
    rate_envelope,
)
from .operators import (
    butzer_sunouchi,
    holomorphic_split,
    integral_representation_residual,
    lambda_complement,
    lambda_multiplier,
    lambda_profile,
    leis_transform,
    poisson_kernel_values,
    poisson_mean,
    poisson_radial_norm,
    poisson_rho_partial,
    radial_derivative,
    smoothing_bound_constant,
    taylor_abel_poisson,
    taylor_form_values,
)
from .experiments import (
    ConfigError,
    ExperimentConfig,
    fit_rate,
    geometric_rho_grid,
    run_comparison_experiment,
    run_direct_experiment,
    run_identity_suite,
    run_inverse_experiment,
    run_kfun_experiment,
    run_moduli_check,
    run_saturation_experiment,
)

__version__ = "0.1.0"

__all__ = [
    "CatalogEntry",
    "ConditionReport",
    "ConfigError",
    "ExperimentConfig",
    "FourierSeries",
    "GridSignal",
    "KBracket",
    "ModulusFunction",
    "analyze",
    "butzer_sunouchi",
    "catalog_entry",
    "check_almost_decreasing",
    "check_doubling",
    "check_zygmund",
    "check_zygmund_n",
    "coefficient_l2",
    "conjugate",
    "default_grid_size",
    "derivative",
    "fit_rate",
    "from_modes",
    "geometric_poisson_values",
    "geometric_rho_grid",
    "grid",
    "holomorphic_split",
    "integral_representation_residual",
    "k_bracket",
    "k_lower_bound",
    "k_upper_minimize",
    "k_upper_smoothing",
    "lambda_complement",
    "lambda_multiplier",
    "lambda_profile",
    "leis_transform",
    "lp_norm",
    "make_cosine",
    "make_geometric",
    "make_mode",
    "make_random_real_poly",
    "make_smoothed",
    "make_trig_poly",
    "make_weierstrass",
    "poisson_kernel_values",
    "poisson_mean",
    "poisson_radial_norm",
    "poisson_rho_partial",
    "radial_derivative",
    "rate_envelope",
    "run_comparison_experiment",
    "run_direct_experiment",
    "run_identity_suite",
    "run_inverse_experiment",
    "run_kfun_experiment",
    "run_moduli_check",
    "run_saturation_experiment",
    "series_norm",
    "smoothing_bound_constant",
    "standard_catalog",
    "synthesize",
    "taylor_abel_poisson",
    "taylor_form_values",
]
