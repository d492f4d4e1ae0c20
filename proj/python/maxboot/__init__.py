"""Bootstrap critical values for max statistics of high-dimensional
sample means: empirical bootstrap, Gaussian / Rademacher / third-order /
Beta-based multiplier bootstraps, a Monte Carlo rejection-probability
harness, and diagnostics for the underlying probabilistic constructions.
"""

from ._core import (
    __version__,
    covariance_estimate,
    critical_value,
    decide,
    empirical_quantile,
    estimate_rejection,
    exact_conditional_draws,
    exchangeable_tail_check,
    gamma_quantile,
    gen_ar1_gaussian_rows,
    gen_design,
    lindeberg_draw,
    lindeberg_epsilon_law,
    max_abs_statistic,
    max_statistic,
    regularized_gamma_p,
    sample_weights,
    std_normal_cdf,
    std_normal_quantile,
    third_order_params,
    weibull_quantile,
)

__all__ = [
    "__version__",
    "covariance_estimate",
    "critical_value",
    "decide",
    "empirical_quantile",
    "estimate_rejection",
    "exact_conditional_draws",
    "exchangeable_tail_check",
    "gamma_quantile",
    "gen_ar1_gaussian_rows",
    "gen_design",
    "lindeberg_draw",
    "lindeberg_epsilon_law",
    "max_abs_statistic",
    "max_statistic",
    "regularized_gamma_p",
    "sample_weights",
    "std_normal_cdf",
    "std_normal_quantile",
    "third_order_params",
    "weibull_quantile",
]
