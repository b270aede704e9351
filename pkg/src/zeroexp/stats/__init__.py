"""Empirical return/hitting statistics, explicit bounds, mixing averages and complexity."""

from .bounds import BoundReport, bound_report, divergence_diagnostic, mu_lower_bound
from .complexity import complexity, complexity_bound, complexity_oracle, language_oracle
from .experiment import ExperimentRow, ReturnExperiment, increasing_order_ns, run_return_experiment
from .mixing import correlation_average, correlation_profile
from .returns import (
    DEFAULT_GRID,
    EmpiricalCdf,
    exp1_cdf,
    hitting_cdf,
    ks_to_exponential,
    occurrences,
    return_cdf,
    return_gaps,
)
