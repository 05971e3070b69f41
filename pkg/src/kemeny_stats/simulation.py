"""Seeded Monte Carlo and bootstrap harnesses.

Replicate ``i`` of a run always draws from its own generator, seeded by
``SeedSequence(seed, spawn_key=(i,))``, and results are gathered in replicate
order.  Output is therefore bit-identical for any number of worker processes.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Literal, Optional

import numpy as np

from . import estimators, inference, kernel
from .distributions import SummaryStats, ks_test, normal_cdf, student_t_cdf, summarize
from .errors import DegenerateInputError, DimensionError, DomainError

__all__ = [
    "THREADS_ENV",
    "default_workers",
    "replicate_stream",
    "sample_dgp",
    "SimulationConfig",
    "ReplicateSummary",
    "simulate_statistics",
    "run_simulation",
    "BootstrapResult",
    "bootstrap_streams",
    "bootstrap_correlations",
    "histogram",
]

THREADS_ENV = "KEMENY_THREADS"

DGP = Literal["uniform_labels", "tie_free_permutation"]
TestKind = Literal["one_sample_tau", "one_sample_rho", "two_sample_tau", "two_sample_rho"]
DGPS: tuple[DGP, ...] = ("uniform_labels", "tie_free_permutation")
TESTS: tuple[TestKind, ...] = ("one_sample_tau", "one_sample_rho", "two_sample_tau", "two_sample_rho")


def default_workers() -> int:
    """Worker count from ``KEMENY_THREADS``, defaulting to 1."""
    raw = os.environ.get(THREADS_ENV, "").strip()
    if not raw:
        return 1
    try:
        workers = int(raw)
    except ValueError:
        raise DomainError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    return max(1, workers)


def replicate_stream(seed: int, index: int) -> np.random.Generator:
    """Independent generator for replicate ``index`` of a run seeded with ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))


def sample_dgp(dgp: DGP, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw one sample of size ``n``.

    ``uniform_labels`` draws n labels uniformly from ``{1..n}`` and redraws the
    whole vector if it comes out constant; ``tie_free_permutation`` is a
    uniform permutation of ``1..n``.
    """
    if dgp == "uniform_labels":
        while True:
            v = rng.integers(1, n + 1, size=n)
            if v.min() != v.max():
                return v.astype(np.float64)
    if dgp == "tie_free_permutation":
        return (rng.permutation(n) + 1).astype(np.float64)
    raise DomainError(f"unknown data-generating process {dgp!r}")


@dataclass(frozen=True)
class SimulationConfig:
    n: int
    replicates: int
    seed: int
    dgp: DGP = "uniform_labels"
    test: TestKind = "one_sample_rho"
    policy: inference.CorrectionPolicy = inference.EXAMPLE_CONSISTENT
    # statistics per KS evaluation; the reported KS p-values are block means
    ks_block: Optional[int] = 550

    def __post_init__(self):
        if self.n < 3:
            raise DomainError(f"simulation needs n >= 3, got {self.n}")
        if self.replicates < 1:
            raise DomainError("replicates must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")
        if self.dgp not in DGPS:
            raise DomainError(f"unknown dgp {self.dgp!r}")
        if self.test not in TESTS:
            raise DomainError(f"unknown test {self.test!r}")
        if self.ks_block is not None and self.ks_block < 2:
            raise DomainError("ks_block must be at least 2")

    @property
    def one_sample(self) -> bool:
        return self.test.startswith("one_sample")

    @property
    def df(self) -> float:
        return float(self.n - 1 if self.one_sample else self.n - 2)

    def as_dict(self) -> dict:
        out = asdict(self)
        out["policy"] = asdict(self.policy)
        return out


def _statistic(config: SimulationConfig, x: np.ndarray, y: np.ndarray) -> float:
    test = config.test
    if test == "one_sample_rho":
        return inference.one_sample_rho_test(x, y).statistic
    if test == "two_sample_rho":
        return inference.rho_t_test(x, y).statistic
    if test == "one_sample_tau":
        return inference.one_sample_tau_test(x, y, config.policy).statistic
    return inference.tau_wald_test(x, y, config.policy).statistic


def _draw(config: SimulationConfig, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    x = sample_dgp(config.dgp, config.n, rng)
    if config.one_sample:
        return x, inference.identity_reference(config.n)
    return x, sample_dgp(config.dgp, config.n, rng)


def _replicate(config: SimulationConfig, index: int) -> tuple[float, int]:
    rng = replicate_stream(config.seed, index)
    try:
        return _statistic(config, *_draw(config, rng)), 0
    except DegenerateInputError:
        return _redraw(config, rng)


def _redraw(config: SimulationConfig, rng: np.random.Generator) -> tuple[float, int]:
    """Continue a replicate whose first draw was degenerate, on its own stream."""
    rejected = 1
    while True:
        try:
            return _statistic(config, *_draw(config, rng)), rejected
        except DegenerateInputError:
            rejected += 1


def _label_rank_scores(labels: np.ndarray, n: int) -> np.ndarray:
    """Row-wise ``2*midrank - n - 1`` for integer labels in ``1..n``."""
    rows = labels.shape[0]
    flat = (np.arange(rows)[:, None] * (n + 1) + labels).ravel()
    counts = np.bincount(flat, minlength=rows * (n + 1)).reshape(rows, n + 1)
    before = np.cumsum(counts, axis=1) - counts
    twice_mid = 2 * before + counts + 1
    return (np.take_along_axis(twice_mid, labels, axis=1) - (n + 1)).astype(np.float64)


def _rho_range(config: SimulationConfig, start: int, stop: int) -> tuple[np.ndarray, int]:
    # Rank scores are integers, so the sums below are exact and the result is
    # bit-identical to the per-replicate path through rho_kappa.
    n = config.n
    rngs = [replicate_stream(config.seed, i) for i in range(start, stop)]
    xs = np.array([sample_dgp(config.dgp, n, g) for g in rngs], dtype=np.int64)
    a = _label_rank_scores(xs, n)
    if config.one_sample:
        b = np.broadcast_to(kernel.rank_scores(inference.identity_reference(n)), a.shape)
    else:
        ys = np.array([sample_dgp(config.dgp, n, g) for g in rngs], dtype=np.int64)
        b = _label_rank_scores(ys, n)
    sab = np.einsum("ij,ij->i", a, b)
    saa = np.einsum("ij,ij->i", a, a)
    sbb = np.einsum("ij,ij->i", b, b)
    r = np.clip(sab / np.sqrt(saa * sbb), -1.0, 1.0)
    out = np.empty(stop - start)
    rejected = 0
    for j, rj in enumerate(r.tolist()):
        try:
            out[j] = inference.correlation_t(rj, n - 2)
        except DegenerateInputError:
            out[j], k = _redraw(config, rngs[j])
            rejected += k
    return out, rejected


def _run_range(args) -> tuple[np.ndarray, int]:
    config, start, stop = args
    if config.test.endswith("rho"):
        return _rho_range(config, start, stop)
    out = np.empty(stop - start)
    rejected = 0
    for i in range(start, stop):
        out[i - start], r = _replicate(config, i)
        rejected += r
    return out, rejected


def _split(total: int, workers: int) -> list[tuple[int, int]]:
    parts = max(1, min(total, 4 * workers))
    bounds = np.linspace(0, total, parts + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def _map_ranges(fn, payload, total: int, workers: int):
    ranges = _split(total, workers)
    jobs = [(payload, a, b) for a, b in ranges]
    if workers <= 1:
        return [fn(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves submission order, which is replicate order
        return list(pool.map(fn, jobs))


def simulate_statistics(config: SimulationConfig, workers: Optional[int] = None) -> tuple[np.ndarray, int]:
    """Statistic stream of ``config.replicates`` draws and the number of redraws."""
    workers = default_workers() if workers is None else workers
    parts = _map_ranges(_run_range, config, config.replicates, workers)
    stats = np.concatenate([p[0] for p in parts])
    return stats, sum(p[1] for p in parts)


@dataclass(frozen=True)
class ReplicateSummary:
    config: SimulationConfig
    stats: SummaryStats
    variance: float
    ks_p_normal: float
    ks_p_t: float
    df_used: float
    ks_blocks: int
    rejections: int

    def as_dict(self) -> dict:
        return {
            "config": self.config.as_dict(),
            "stats": self.stats.as_dict(),
            "variance": self.variance,
            "ks_p_normal": self.ks_p_normal,
            "ks_p_t": self.ks_p_t,
            "df_used": self.df_used,
            "ks_blocks": self.ks_blocks,
            "rejections": self.rejections,
        }

    def as_row(self) -> dict:
        row = {"n": self.config.n, "test": self.config.test, "variance": self.variance}
        s = self.stats
        row.update(mean=s.mean, sd=s.sd, median=s.median, mad=s.mad, min=s.min, max=s.max,
                   skew=s.skew, kurtosis=s.kurtosis)
        row.update(ks_p_normal=self.ks_p_normal, ks_p_t=self.ks_p_t, df=self.df_used,
                   rejections=self.rejections)
        return row


def _mean_ks(values: np.ndarray, block: Optional[int], df: float) -> tuple[float, float, int]:
    blocks = 1 if block is None else max(1, values.size // block)
    p_norm, p_t = [], []
    for chunk in np.array_split(values, blocks):
        p_norm.append(ks_test(chunk, normal_cdf)[1])
        p_t.append(ks_test(chunk, lambda v: student_t_cdf(v, df))[1])
    return math.fsum(p_norm) / blocks, math.fsum(p_t) / blocks, blocks


def run_simulation(config: SimulationConfig, workers: Optional[int] = None,
                   return_stream: bool = False):
    """Simulate the null distribution of a test statistic and score it by KS.

    One-sample tests use the identity ordering ``1..n`` as the reference.  KS
    p-values against N(0, 1) and Student t (df ``n - 1`` one-sample, ``n - 2``
    two-sample) are averaged over consecutive blocks of ``config.ks_block``
    statistics.
    """
    values, rejected = simulate_statistics(config, workers)
    stats = summarize(values)
    p_norm, p_t, blocks = _mean_ks(values, config.ks_block, config.df)
    summary = ReplicateSummary(
        config=config, stats=stats, variance=stats.sd**2,
        ks_p_normal=p_norm, ks_p_t=p_t, df_used=config.df, ks_blocks=blocks,
        rejections=rejected,
    )
    return (summary, values) if return_stream else summary


@dataclass(frozen=True)
class BootstrapResult:
    method: str
    replicates: int
    stats: SummaryStats
    quantile_2_5: float
    quantile_97_5: float
    redraws: int = 0

    def as_dict(self) -> dict:
        out = {"method": self.method, "replicates": self.replicates}
        out.update(self.stats.as_dict())
        out.update(quantile_2_5=self.quantile_2_5, quantile_97_5=self.quantile_97_5,
                   redraws=self.redraws)
        return out


def _bootstrap_range(args) -> tuple[np.ndarray, int]:
    (x, y, methods, seed), start, stop = args
    n = x.size
    out = np.empty((stop - start, len(methods)))
    redraws = 0
    for i in range(start, stop):
        rng = replicate_stream(seed, i)
        while True:
            idx = rng.integers(0, n, size=n)
            xb, yb = x[idx], y[idx]
            if xb.min() != xb.max() and yb.min() != yb.max():
                break
            redraws += 1
        est = estimators.all_estimates(xb, yb, methods)
        out[i - start] = [est[m].value for m in methods]
    return out, redraws


def bootstrap_streams(x, y, replicates: int, seed: int, workers: Optional[int] = None,
                      methods=estimators.METHODS) -> tuple[dict[str, np.ndarray], int]:
    """Per-estimator bootstrap streams from resampling index pairs with replacement.

    Resamples in which either column is constant are redrawn from the same
    replicate stream; the total redraw count is returned alongside.
    """
    if replicates < 100:
        raise DomainError(f"bootstrap needs at least 100 replicates, got {replicates}")
    x = kernel.as_sample(x, "x")
    y = kernel.as_sample(y, "y")
    if x.size != y.size:
        raise DimensionError(f"length mismatch: {x.size} != {y.size}")
    workers = default_workers() if workers is None else workers
    methods = tuple(methods)
    parts = _map_ranges(_bootstrap_range, (x, y, methods, seed), replicates, workers)
    table = np.concatenate([p[0] for p in parts])
    return {m: table[:, j] for j, m in enumerate(methods)}, sum(p[1] for p in parts)


def bootstrap_correlations(x, y, replicates: int, seed: int, workers: Optional[int] = None,
                           methods=estimators.METHODS) -> list[BootstrapResult]:
    streams, redraws = bootstrap_streams(x, y, replicates, seed, workers, methods)
    results = []
    for m, values in streams.items():
        lo, hi = np.quantile(values, [0.025, 0.975])
        results.append(BootstrapResult(m, replicates, summarize(values), float(lo), float(hi), redraws))
    return results


def histogram(values, bins: int = 50) -> list[dict]:
    """Histogram rows ``{bin_left, bin_right, count}`` for plotting elsewhere."""
    counts, edges = np.histogram(np.asarray(values, dtype=np.float64), bins=bins)
    return [
        {"bin_left": float(a), "bin_right": float(b), "count": int(c)}
        for a, b, c in zip(edges[:-1], edges[1:], counts)
    ]
