"""Reference distributions, goodness of fit and descriptive summaries."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import special

from .errors import DomainError

__all__ = [
    "normal_cdf",
    "student_t_cdf",
    "two_sided_p",
    "BetaBinomialParams",
    "beta_binomial_pmf",
    "beta_binomial_cdf",
    "kolmogorov_sf",
    "ks_statistic",
    "ks_pvalue",
    "ks_test",
    "SummaryStats",
    "summarize",
    "MAD_SCALE",
]

MAD_SCALE = 1.4826


def _scalar_or_array(values: np.ndarray, like):
    return float(values) if np.ndim(like) == 0 else values


def normal_cdf(z):
    """Standard normal CDF, ``0.5 * erfc(-z / sqrt(2))``; accepts scalars or arrays."""
    z_arr = np.asarray(z, dtype=np.float64)
    return _scalar_or_array(0.5 * special.erfc(-z_arr / math.sqrt(2.0)), z)


def student_t_cdf(t, nu):
    """Student t CDF with ``nu`` degrees of freedom via the regularized incomplete beta.

    Near the centre the complementary form ``I_{t^2/(nu+t^2)}(1/2, nu/2)``
    is used so that small ``|t|`` keeps full absolute accuracy.
    """
    nu = float(nu)
    if not nu > 0:
        raise DomainError(f"degrees of freedom must be positive, got {nu}")
    t_arr = np.asarray(t, dtype=np.float64)
    t2 = t_arr * t_arr
    with np.errstate(invalid="ignore", divide="ignore"):
        central = t2 < nu
        x_tail = np.where(central, 1.0, nu / (nu + t2))
        x_mid = np.where(central, t2 / (nu + t2), 0.0)
        tail = 0.5 * special.betainc(0.5 * nu, 0.5, x_tail)
        mid = 0.5 * special.betainc(0.5, 0.5 * nu, x_mid)
    out = np.where(
        central,
        0.5 + np.sign(t_arr) * mid,
        np.where(t_arr < 0, tail, 1.0 - tail),
    )
    return _scalar_or_array(out, t)


def two_sided_p(cdf_value: float) -> float:
    """Two-sided p-value ``2 * min(F, 1 - F)`` for a symmetric reference."""
    return min(1.0, 2.0 * min(cdf_value, 1.0 - cdf_value))


@dataclass(frozen=True)
class BetaBinomialParams:
    trials: int
    alpha: float
    beta: float

    def __post_init__(self):
        if int(self.trials) != self.trials or self.trials < 1:
            raise DomainError(f"trials must be a positive integer, got {self.trials}")
        if not (self.alpha > 0 and self.beta > 0):
            raise DomainError("alpha and beta must be positive")


def _log_beta(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def beta_binomial_pmf(k: int, params: BetaBinomialParams) -> float:
    """``C(N, k) B(k + alpha, N - k + beta) / B(alpha, beta)``, evaluated in log space."""
    n = int(params.trials)
    if int(k) != k or not 0 <= k <= n:
        raise DomainError(f"k must be an integer in [0, {n}], got {k}")
    k = int(k)
    log_choose = math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
    log_p = (
        log_choose
        + _log_beta(k + params.alpha, n - k + params.beta)
        - _log_beta(params.alpha, params.beta)
    )
    return math.exp(log_p)


def beta_binomial_cdf(k: int, params: BetaBinomialParams) -> float:
    n = int(params.trials)
    if int(k) != k or not 0 <= k <= n:
        raise DomainError(f"k must be an integer in [0, {n}], got {k}")
    total = math.fsum(beta_binomial_pmf(j, params) for j in range(int(k) + 1))
    return min(total, 1.0)


def kolmogorov_sf(lam: float, terms: int = 12) -> float:
    """Survival function of the Kolmogorov distribution.

    Uses the alternating series ``2 sum (-1)^(k-1) exp(-2 k^2 lam^2)`` for
    ``lam >= 1.18`` and the theta-function form below it, where the alternating
    series converges slowly.  Both are truncated at ``terms`` (at least 10).
    """
    if terms < 10:
        raise DomainError("at least 10 series terms are required")
    if lam <= 0:
        return 1.0
    if lam < 1.18:
        c = math.pi * math.pi / (8.0 * lam * lam)
        s = math.fsum(math.exp(-((2 * k - 1) ** 2) * c) for k in range(1, terms + 1))
        p = 1.0 - math.sqrt(2.0 * math.pi) / lam * s
    else:
        s = math.fsum(
            (-1) ** (k - 1) * math.exp(-2.0 * k * k * lam * lam) for k in range(1, terms + 1)
        )
        p = 2.0 * s
    return min(1.0, max(0.0, p))


def ks_statistic(sample, cdf) -> float:
    """One-sample Kolmogorov-Smirnov distance between ``sample`` and ``cdf``.

    ``cdf`` may be vectorised; scalar-only callables are applied elementwise.
    """
    xs = np.sort(np.asarray(sample, dtype=np.float64))
    n = xs.size
    if n == 0:
        raise DomainError("KS statistic of an empty sample")
    try:
        f = np.asarray(cdf(xs), dtype=np.float64)
    except TypeError:
        f = None
    if f is None or f.shape != xs.shape:
        f = np.array([cdf(v) for v in xs], dtype=np.float64)
    i = np.arange(1, n + 1)
    d_plus = np.max(i / n - f)
    d_minus = np.max(f - (i - 1) / n)
    return float(max(d_plus, d_minus, 0.0))


def ks_pvalue(D: float, n: int) -> float:
    """Asymptotic p-value of a KS distance ``D`` from ``n`` observations."""
    if n < 1:
        raise DomainError("n must be positive")
    return kolmogorov_sf(math.sqrt(n) * D)


def ks_test(sample, cdf) -> tuple[float, float]:
    """Return ``(D, p)`` for a one-sample KS test."""
    d = ks_statistic(sample, cdf)
    return d, ks_pvalue(d, len(sample))


@dataclass(frozen=True)
class SummaryStats:
    """Column set used by every results table.

    ``sd`` uses denominator n - 1, ``mad`` is scaled by 1.4826, ``skew`` and
    ``kurtosis`` (excess) are plain moment estimators.  A constant input has
    skew and kurtosis reported as 0 with ``degenerate`` set.
    """

    n: int
    mean: float
    sd: float
    median: float
    mad: float
    min: float
    max: float
    range: float
    skew: float
    kurtosis: float
    degenerate: bool = False

    def as_dict(self) -> dict:
        return asdict(self)


def summarize(values) -> SummaryStats:
    v = np.asarray(values, dtype=np.float64).ravel()
    n = v.size
    if n == 0:
        raise DomainError("cannot summarise an empty sequence")
    # sort first so that the reductions do not depend on input order
    v = np.sort(v)
    mean = float(math.fsum(v) / n)
    dev = v - mean
    m2 = float(np.mean(dev**2))
    sd = math.sqrt(float(math.fsum(dev**2)) / (n - 1)) if n > 1 else math.nan
    median = float(np.median(v))
    mad = MAD_SCALE * float(np.median(np.abs(v - median)))
    lo, hi = float(v[0]), float(v[-1])
    degenerate = lo == hi
    if degenerate:
        skew = kurt = 0.0
        sd = 0.0
    else:
        skew = float(np.mean(dev**3)) / m2**1.5
        kurt = float(np.mean(dev**4)) / m2**2 - 3.0
    return SummaryStats(
        n=n, mean=mean, sd=sd, median=median, mad=mad, min=lo, max=hi,
        range=hi - lo, skew=skew, kurtosis=kurt, degenerate=degenerate,
    )
