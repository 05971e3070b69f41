"""Correlation coefficients on the Kemeny kernel and classical baselines."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.stats import rankdata

from . import kernel
from .errors import DegenerateInputError, DimensionError, DomainError

__all__ = [
    "CorrelationEstimate",
    "METHODS",
    "tau_kappa",
    "rho_kappa",
    "sin_transform",
    "pearson_r",
    "spearman_rho",
    "kendall_tau_b",
    "all_estimates",
]

Method = Literal["tau_kappa", "rho_kappa", "pearson", "spearman", "kendall_tau_b"]
METHODS: tuple[Method, ...] = ("tau_kappa", "rho_kappa", "pearson", "spearman", "kendall_tau_b")


@dataclass(frozen=True)
class CorrelationEstimate:
    method: Method
    value: float
    n: int

    def __post_init__(self):
        if abs(self.value) > 1 + 1e-12:
            raise DomainError(f"{self.method} = {self.value} lies outside [-1, 1]")

    def __float__(self) -> float:
        return self.value


def _pearson(a: np.ndarray, b: np.ndarray) -> float:
    a = a - a.mean()
    b = b - b.mean()
    saa = float(np.dot(a, a))
    sbb = float(np.dot(b, b))
    if saa == 0.0 or sbb == 0.0:
        raise DegenerateInputError("correlation is undefined for a constant sample")
    r = float(np.dot(a, b)) / math.sqrt(saa * sbb)
    return min(1.0, max(-1.0, r))


def tau_kappa(x, y) -> CorrelationEstimate:
    """Kemeny tau: ``2(C - D)/(n^2 - n)``, equivalently ``1 - 2 d/(n^2 - n)``.

    No marginal normalisation is applied, so ties in either sample shrink the
    coefficient towards zero.
    """
    value = kernel.cross_concentration(x, y)
    return CorrelationEstimate("tau_kappa", value, len(x))


def rho_kappa(x, y) -> CorrelationEstimate:
    """Product-moment correlation of the two rank vectors.

    The common ``sqrt(0.5)`` factor cancels, so the integer row sums are
    correlated directly; centred midranks are exactly half of these, which makes
    the result bit-identical to :func:`spearman_rho`.
    """
    rx = kernel.rank_scores(x)
    ry = kernel.rank_scores(y)
    if rx.size != ry.size:
        raise DimensionError(f"length mismatch: {rx.size} != {ry.size}")
    return CorrelationEstimate("rho_kappa", _pearson(rx, ry), rx.size)


def sin_transform(tau: float) -> float:
    """Map a tau-type coefficient onto the rho scale by ``sin(tau * pi / 2)``."""
    tau = float(tau)
    if not abs(tau) <= 1.0:
        raise DomainError(f"tau must lie in [-1, 1], got {tau}")
    return math.sin(tau * math.pi / 2)


def pearson_r(x, y) -> CorrelationEstimate:
    x = kernel.as_sample(x, "x")
    y = kernel.as_sample(y, "y")
    if x.size != y.size:
        raise DimensionError(f"length mismatch: {x.size} != {y.size}")
    if not (np.isfinite(x).all() and np.isfinite(y).all()):
        raise DomainError("Pearson correlation requires finite observations")
    return CorrelationEstimate("pearson", _pearson(x, y), x.size)


def spearman_rho(x, y) -> CorrelationEstimate:
    """Spearman's rho computed from midranks (average ranks for ties)."""
    x = kernel.as_sample(x, "x")
    y = kernel.as_sample(y, "y")
    if x.size != y.size:
        raise DimensionError(f"length mismatch: {x.size} != {y.size}")
    value = _pearson(rankdata(x, method="average"), rankdata(y, method="average"))
    return CorrelationEstimate("spearman", value, x.size)


def kendall_tau_b(x, y) -> CorrelationEstimate:
    """Kendall's tau-b, ``(C - D) / sqrt((P - T_x)(P - T_y))``."""
    s = kernel.concordance(x, y)
    n = len(x)
    pairs = n * (n - 1) // 2
    untied_x = pairs - kernel.tie_counts(x)
    untied_y = pairs - kernel.tie_counts(y)
    if untied_x == 0 or untied_y == 0:
        raise DegenerateInputError("tau-b is undefined for a constant sample")
    return CorrelationEstimate("kendall_tau_b", s / math.sqrt(untied_x * untied_y), n)


_ESTIMATORS = {
    "tau_kappa": tau_kappa,
    "rho_kappa": rho_kappa,
    "pearson": pearson_r,
    "spearman": spearman_rho,
    "kendall_tau_b": kendall_tau_b,
}


def all_estimates(x, y, methods=METHODS) -> dict[str, CorrelationEstimate]:
    """Evaluate several estimators on the same pair, keyed by method name."""
    return {m: _ESTIMATORS[m](x, y) for m in methods}
