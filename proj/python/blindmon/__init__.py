"""Blinded and unblinded continuous variance monitoring for two-arm normal trials."""

from ._core import (
    DEFAULT_REPLICATIONS,
    DEFAULT_SEED,
    ConfigError,
    InsufficientDataError,
    PairAccumulator,
    __version__,
    asymptotic_targets,
    central_chisq_cdf,
    compute_v,
    invariance_harness,
    mean_bound,
    n_req,
    noncentral_chisq_cdf,
    normal_cdf,
    normal_quantile,
    run_on_stream,
    run_scenario,
    run_table,
    second_moment_bound,
    table_csv,
    tail_bound_chisq,
    tail_bound_sum,
    verify,
)

__all__ = [
    "DEFAULT_REPLICATIONS",
    "DEFAULT_SEED",
    "ConfigError",
    "InsufficientDataError",
    "PairAccumulator",
    "__version__",
    "asymptotic_targets",
    "central_chisq_cdf",
    "compute_v",
    "invariance_harness",
    "mean_bound",
    "n_req",
    "noncentral_chisq_cdf",
    "normal_cdf",
    "normal_quantile",
    "run_on_stream",
    "run_scenario",
    "run_table",
    "second_moment_bound",
    "table_csv",
    "tail_bound_chisq",
    "tail_bound_sum",
    "verify",
]
