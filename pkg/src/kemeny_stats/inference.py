"""Studentised Wald tests for the Kemeny correlation estimators.

Two readings of the tau test are available through :class:`CorrectionPolicy`:

``example_consistent``
    ``z = c(n) * d / sqrt(V_n / s_p^2)`` with ``s_p^2`` the cross
    concentration, referred to the standard normal.  This is the form that
    reproduces the published Sleep-data numbers and is the default.
``equation_literal``
    ``t = -d / sqrt(V_n / s_p^2)`` with ``s_p^2`` normalised by the marginal
    Kemeny standard deviations, referred to Student t.  When continuity is
    applied the statistic is divided by ``c(n)``.

Non-positive pooled concentrations leave the standard error undefined and
raise :class:`DegenerateInputError`; the rho tests are the alternative for
samples with zero or negative association.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional

import numpy as np

from . import estimators, kernel
from .distributions import normal_cdf, student_t_cdf, two_sided_p
from .errors import DegenerateInputError, DimensionError, DomainError, PerfectCorrelationError

__all__ = [
    "CorrectionPolicy",
    "EXAMPLE_CONSISTENT",
    "EQUATION_LITERAL",
    "TestResult",
    "continuity_correction",
    "population_distance_variance",
    "population_distance_variance_exact",
    "adjusted_population_variance",
    "pooled_concentration",
    "tau_wald_test",
    "one_sample_tau_test",
    "rho_t_test",
    "pearson_t_test",
    "one_sample_rho_test",
    "correlation_t",
    "identity_reference",
]

Variant = Literal["example_consistent", "equation_literal"]
VARIANTS: tuple[Variant, ...] = ("example_consistent", "equation_literal")

_RATIO = 7.0 / 11.0


@dataclass(frozen=True)
class CorrectionPolicy:
    variant: Variant = "example_consistent"
    apply_continuity: bool = True

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise DomainError(f"unknown variant {self.variant!r}; expected one of {VARIANTS}")


EXAMPLE_CONSISTENT = CorrectionPolicy("example_consistent", apply_continuity=True)
# the two-sample equation carries no continuity factor
EQUATION_LITERAL = CorrectionPolicy("equation_literal", apply_continuity=False)


@dataclass(frozen=True)
class TestResult:
    """Outcome of one test.  ``p_value`` is two-sided."""

    __test__ = False  # keep pytest from collecting this class

    method: str
    statistic: float
    distribution: Literal["normal", "student_t", "beta_binomial"]
    p_value: float
    estimate: float
    n: int
    df: Optional[float] = None
    correction_c: float = 1.0
    variant: Optional[str] = None
    extras: dict = field(default_factory=dict, compare=False)

    def as_dict(self) -> dict:
        return {
            "method": self.method,
            "estimate": self.estimate,
            "statistic": self.statistic,
            "df": self.df,
            "p_value": self.p_value,
            "n": self.n,
            "correction_c": self.correction_c,
            "variant": self.variant,
            "distribution": self.distribution,
        }


def continuity_correction(n: int) -> float:
    """Piecewise continuity factor: (7/11)^(1/2), ^(1/4) or ^(1/8) by sample size."""
    if n < 2:
        raise DomainError(f"continuity correction needs n >= 2, got {n}")
    if n <= 75:
        return math.sqrt(_RATIO)
    if n < 750:
        return _RATIO**0.25
    return _RATIO**0.125


def population_distance_variance_exact(n: int) -> Fraction:
    """``(n-1)^2 (n+4) (2n-1) / (18 n)`` as an exact fraction."""
    if n < 2:
        raise DomainError(f"population variance needs n >= 2, got {n}")
    return Fraction((n - 1) ** 2 * (n + 4) * (2 * n - 1), 18 * n)


def population_distance_variance(n: int) -> float:
    return float(population_distance_variance_exact(n))


def adjusted_population_variance(n: int, s_p_sq: float) -> float:
    """Population distance variance inflated by the pooled concentration, ``V_n / s_p^2``."""
    if not s_p_sq > 0:
        raise DegenerateInputError(f"pooled concentration must be positive, got {s_p_sq}")
    return population_distance_variance(n) / s_p_sq


def _check_pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = kernel.as_sample(x, "x")
    y = kernel.as_sample(y, "y")
    if x.size != y.size:
        raise DimensionError(f"length mismatch: {x.size} != {y.size}")
    for name, v in (("x", x), ("y", y)):
        if kernel.is_constant(v):
            raise DegenerateInputError(f"{name} is constant")
    return x, y


def pooled_concentration(x, y, variant: Variant = "example_consistent",
                         one_sample: bool = False) -> float:
    """Squared pooled concentration ``s_p^2`` between two samples.

    ``example_consistent`` uses the cross concentration itself.
    ``equation_literal`` divides it by ``sqrt(s2(x) * s2(y))`` for two samples,
    or by ``2 * s2(x)`` in the one-sample form (``y`` being the fixed reference).
    """
    if variant not in VARIANTS:
        raise DomainError(f"unknown variant {variant!r}")
    x, y = _check_pair(x, y)
    cross = kernel.cross_concentration(x, y)
    if variant == "example_consistent":
        s_p_sq = cross
    elif one_sample:
        s_p_sq = cross / (2.0 * kernel.kemeny_variance(x))
    else:
        s_p_sq = cross / math.sqrt(kernel.kemeny_variance(x) * kernel.kemeny_variance(y))
    if not s_p_sq > 0:
        raise DegenerateInputError(
            f"pooled concentration {s_p_sq:.6g} is not positive; "
            "use the rho test for zero or negative association"
        )
    return s_p_sq


def _tau_test(x, y, policy: CorrectionPolicy, one_sample: bool, method: str) -> TestResult:
    x, y = _check_pair(x, y)
    n = x.size
    d = kernel.kemeny_distance(x, y)
    s_p_sq = pooled_concentration(x, y, policy.variant, one_sample=one_sample)
    se = math.sqrt(adjusted_population_variance(n, s_p_sq))
    c = continuity_correction(n) if policy.apply_continuity else 1.0
    tau = kernel.cross_concentration(x, y)
    extras = {"distance": d, "s_p_sq": s_p_sq, "population_variance": population_distance_variance(n)}

    if policy.variant == "example_consistent":
        z = c * d / se
        return TestResult(method, z, "normal", two_sided_p(normal_cdf(z)), tau, n,
                          df=None, correction_c=c, variant=policy.variant, extras=extras)
    df = float(n - 1 if one_sample else n - 2)
    t = -d / se / c
    return TestResult(method, t, "student_t", two_sided_p(student_t_cdf(t, df)), tau, n,
                      df=df, correction_c=c, variant=policy.variant, extras=extras)


def tau_wald_test(x, y, policy: CorrectionPolicy = EXAMPLE_CONSISTENT) -> TestResult:
    """Two-sample Wald test on the Kemeny distance between ``x`` and ``y``."""
    return _tau_test(x, y, policy, one_sample=False, method="two_sample_tau")


def identity_reference(n: int) -> np.ndarray:
    return np.arange(1, n + 1, dtype=np.float64)


def one_sample_tau_test(x, mu=None, policy: CorrectionPolicy = EXAMPLE_CONSISTENT) -> TestResult:
    """Wald test of ``x`` against a fixed reference ordering ``mu`` (default ``1..n``).

    The example-consistent form is the two-sample test with ``mu`` in place of
    ``y``; the equation-literal form uses the one-sample pooled concentration
    and ``n - 1`` degrees of freedom.
    """
    x = kernel.as_sample(x)
    mu = identity_reference(x.size) if mu is None else mu
    return _tau_test(x, mu, policy, one_sample=True, method="one_sample_tau")


def correlation_t(r: float, scale_df: float) -> float:
    """Classical transform ``r * sqrt(df / (1 - r^2))``."""
    if abs(r) >= 1.0 - 1e-12:
        raise PerfectCorrelationError(f"t-transform undefined for r = {r}")
    return r * math.sqrt(scale_df / (1.0 - r * r))


def _correlation_test(method: str, r: float, n: int, df: float) -> TestResult:
    if n < 3:
        raise DomainError(f"correlation t-test needs n >= 3, got {n}")
    t = correlation_t(r, n - 2)
    return TestResult(method, t, "student_t", two_sided_p(student_t_cdf(t, df)), r, n, df=df)


def rho_t_test(x, y) -> TestResult:
    """t-test of rho_kappa with ``n - 2`` degrees of freedom."""
    x, y = _check_pair(x, y)
    r = estimators.rho_kappa(x, y).value
    return _correlation_test("two_sample_rho", r, x.size, float(x.size - 2))


def pearson_t_test(x, y) -> TestResult:
    """The same t-transform applied to Pearson's r on the raw scores."""
    x, y = _check_pair(x, y)
    r = estimators.pearson_r(x, y).value
    return _correlation_test("pearson", r, x.size, float(x.size - 2))


def one_sample_rho_test(x, mu=None) -> TestResult:
    """rho_kappa of ``x`` against a fixed reference, referred to ``t_{n-1}``.

    The statistic is the standard correlation transform ``r sqrt((n-2)/(1-r^2))``;
    only the reference distribution changes relative to :func:`rho_t_test`.
    """
    x = kernel.as_sample(x)
    mu = identity_reference(x.size) if mu is None else mu
    x, mu = _check_pair(x, mu)
    r = estimators.rho_kappa(x, mu).value
    return _correlation_test("one_sample_rho", r, x.size, float(x.size - 1))
