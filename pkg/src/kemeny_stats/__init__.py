"""Kemeny rank correlation: distance kernel, estimators, Wald tests and harnesses."""

from .errors import (
    CostGuardError,
    DataError,
    DegenerateInputError,
    DimensionError,
    DomainError,
    KemenyError,
    PerfectCorrelationError,
)
from .kernel import (
    concordance,
    cross_concentration,
    frobenius_sd,
    kappa_scores,
    kemeny_distance,
    kemeny_distance_reference,
    kemeny_variance,
    rank_vector,
)
from .estimators import (
    METHODS,
    CorrelationEstimate,
    all_estimates,
    kendall_tau_b,
    pearson_r,
    rho_kappa,
    sin_transform,
    spearman_rho,
    tau_kappa,
)
from .distributions import (
    BetaBinomialParams,
    SummaryStats,
    beta_binomial_cdf,
    beta_binomial_pmf,
    kolmogorov_sf,
    ks_test,
    normal_cdf,
    student_t_cdf,
    summarize,
)
from .inference import (
    EQUATION_LITERAL,
    EXAMPLE_CONSISTENT,
    CorrectionPolicy,
    TestResult,
    continuity_correction,
    one_sample_rho_test,
    one_sample_tau_test,
    pearson_t_test,
    population_distance_variance,
    rho_t_test,
    tau_wald_test,
)
from .oracle import (
    enumerate_population,
    exact_distance_distribution,
    verify_metric_axioms,
    verify_variance_formula,
)
from .simulation import SimulationConfig, bootstrap_correlations, run_simulation, sample_dgp
from .data import Dataset, embedded_sleep, parse_csv

__version__ = "0.1.0"
