"""Exhaustive small-n population of labelled orderings with ties.

The population for size n is every vector over the labels ``{1..n}`` except
the n constant vectors, so it has ``n**n - n`` members.  Masses and moments
are returned as exact fractions.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernel
from .errors import CostGuardError, DomainError
from .inference import population_distance_variance_exact

__all__ = [
    "MAX_ENUMERATION_N",
    "PopulationEnumeration",
    "enumerate_population",
    "DistanceDistribution",
    "exact_distance_distribution",
    "MetricAxiomReport",
    "verify_metric_axioms",
    "VarianceAudit",
    "verify_variance_formula",
]

MAX_ENUMERATION_N = 7

_CHUNK = 1 << 16


def _check_n(n: int, allow_large: bool) -> None:
    if n < 2:
        raise DomainError(f"population needs n >= 2, got {n}")
    if n > MAX_ENUMERATION_N and not allow_large:
        raise CostGuardError(
            f"n={n} enumerates {n**n - n} members; pass allow_large=True to proceed"
        )


@dataclass(frozen=True)
class PopulationEnumeration:
    """Lazily enumerated population; iterating yields tuples in lexicographic order."""

    n: int

    @property
    def cardinality(self) -> int:
        return self.n**self.n - self.n

    def __len__(self) -> int:
        return self.cardinality

    def __iter__(self):
        labels = range(1, self.n + 1)
        for v in itertools.product(labels, repeat=self.n):
            if v.count(v[0]) != self.n:
                yield v

    def chunks(self, size: int = _CHUNK):
        """Yield the members as integer arrays of at most ``size`` rows."""
        n = self.n
        total = n**n
        powers = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
        for start in range(0, total, size):
            codes = np.arange(start, min(start + size, total), dtype=np.int64)
            block = (codes[:, None] // powers[None, :]) % n + 1
            keep = block.min(axis=1) != block.max(axis=1)
            if keep.any():
                yield block[keep]

    def as_array(self) -> np.ndarray:
        return np.concatenate(list(self.chunks()))


def enumerate_population(n: int, allow_large: bool = False) -> PopulationEnumeration:
    _check_n(n, allow_large)
    return PopulationEnumeration(n)


def _pair_signs(members: np.ndarray) -> np.ndarray:
    """Sign of ``x_k - x_l`` over the unordered pairs ``k < l``, one row per member."""
    k, l = np.triu_indices(members.shape[1], k=1)
    return np.sign(members[:, k] - members[:, l]).astype(np.int64)


@dataclass(frozen=True)
class DistanceDistribution:
    n: int
    reference: tuple
    counts: dict[int, int]
    cardinality: int

    @property
    def mass(self) -> dict[int, Fraction]:
        return {d: Fraction(c, self.cardinality) for d, c in sorted(self.counts.items())}

    def mean(self) -> Fraction:
        return sum((d * p for d, p in self.mass.items()), Fraction(0))

    def variance(self) -> Fraction:
        mu = self.mean()
        return sum(((d - mu) ** 2 * p for d, p in self.mass.items()), Fraction(0))

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "reference": list(self.reference),
            "cardinality": self.cardinality,
            "mass": {str(d): float(p) for d, p in self.mass.items()},
            "mass_exact": {str(d): f"{p.numerator}/{p.denominator}" for d, p in self.mass.items()},
            "mean": float(self.mean()),
            "variance": float(self.variance()),
        }


def exact_distance_distribution(n: int, reference=None, allow_large: bool = False) -> DistanceDistribution:
    """Exact mass of Kemeny distances from ``reference`` to every population member.

    ``reference`` defaults to the identity ordering ``1..n``.
    """
    pop = enumerate_population(n, allow_large)
    ref = np.arange(1, n + 1) if reference is None else kernel.as_sample(reference, "reference")
    if ref.size != n:
        raise DomainError(f"reference has length {ref.size}, expected {n}")
    ref_signs = _pair_signs(np.asarray(ref, dtype=np.float64)[None, :])[0]
    pairs = n * (n - 1) // 2
    counts: Counter = Counter()
    # counts per distance key are summed, so the result does not depend on chunking
    for block in pop.chunks():
        d = pairs - _pair_signs(block) @ ref_signs
        values, freq = np.unique(d, return_counts=True)
        counts.update(dict(zip(values.tolist(), freq.tolist())))
    return DistanceDistribution(
        n=n,
        reference=tuple(float(v) for v in ref),
        counts=dict(sorted(counts.items())),
        cardinality=pop.cardinality,
    )


@dataclass
class MetricAxiomReport:
    n: int
    members: int
    pairs_checked: int = 0
    identity_violations: int = 0
    symmetry_violations: int = 0
    range_violations: int = 0
    kernel_mismatches: int = 0
    nonpositive_variance: int = 0
    triangle_checked: int = 0
    triangle_violations: int = 0
    exhaustive_triples: bool = False
    # d(x, x) under the score formula is the number of tied pairs of x
    self_distance_is_tie_count: bool = True
    notes: list = field(default_factory=list)

    @property
    def violations(self) -> int:
        return (self.identity_violations + self.symmetry_violations + self.range_violations
                + self.kernel_mismatches + self.nonpositive_variance + self.triangle_violations)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def as_dict(self) -> dict:
        out = {k: v for k, v in self.__dict__.items()}
        out["violations"] = self.violations
        out["ok"] = self.ok
        return out


def _kappa_distance_matrix(members: np.ndarray) -> np.ndarray:
    """All pairwise distances from the literal formula with dense score matrices.

    ``d(x, y) = (n^2 - n)/2 + sum_kl kappa_kl(x) kappa_lk(y)``; rounding is
    checked to be below 1e-9 before converting to integers.
    """
    m, n = members.shape
    diff = members[:, :, None] - members[:, None, :]
    kappa = kernel.SQRT_HALF * np.sign(diff).astype(np.float64)
    flat = kappa.reshape(m, n * n)
    flat_t = kappa.transpose(0, 2, 1).reshape(m, n * n)
    d = (n * n - n) / 2 + flat @ flat_t.T
    rounded = np.rint(d)
    if np.abs(d - rounded).max() > 1e-9:
        raise AssertionError("non-integral distance in the dense kernel")
    return rounded.astype(np.int64)


def verify_metric_axioms(n: int, sampled_triples: int = 0, seed: int = 0,
                         kernel_checks: int = 2000) -> MetricAxiomReport:
    """Check identity, symmetry, range and the triangle inequality on the population.

    For ``n <= 4`` all pairs and all ordered triples are checked exhaustively;
    for ``n == 5`` all pairs are checked.  In addition ``sampled_triples``
    random triples are drawn with a seeded generator, and ``kernel_checks``
    random pairs are recomputed with the merge-sort kernel.  Problems are
    reported, never raised.
    """
    pop = enumerate_population(n)
    members = pop.as_array()
    m = members.shape[0]
    diameter = n * n - n
    rep = MetricAxiomReport(n=n, members=m)
    rng = np.random.default_rng(seed)

    if m <= 5000:
        self_dist = np.array([kernel.kemeny_distance(row, row) for row in members])
        rep.nonpositive_variance = sum(kernel.kemeny_variance(row) <= 0 for row in members)
    else:
        untied = np.count_nonzero(_pair_signs(members), axis=1)
        self_dist = n * (n - 1) // 2 - untied
        rep.nonpositive_variance = int(np.count_nonzero(untied == 0))
    rep.identity_violations = int(np.count_nonzero(self_dist))
    tied = np.array([kernel.tie_counts(row) for row in members]) if m <= 5000 else self_dist
    rep.self_distance_is_tie_count = bool(np.array_equal(self_dist, tied))

    if n <= 5:
        dist = _kappa_distance_matrix(members)
        rep.pairs_checked = m * m
        rep.kernel_mismatches += int(np.count_nonzero(np.diag(dist) != self_dist))
        rep.symmetry_violations = int(np.count_nonzero(dist != dist.T))
        rep.range_violations = int(np.count_nonzero((dist < 0) | (dist > diameter)))
        if n <= 4:
            rep.exhaustive_triples = True
            for i in range(m):
                # d(i, k) <= d(i, j) + d(j, k) over all (j, k)
                bound = dist[i][:, None] + dist
                rep.triangle_violations += int(np.count_nonzero(dist[i][None, :] > bound))
            rep.triangle_checked = m**3

        def distance(a, b):
            return dist[a, b]
    else:
        signs = _pair_signs(members)
        pairs = n * (n - 1) // 2
        rep.notes.append("pairs sampled, population too large for a full distance matrix")

        def distance(a, b):
            return pairs - np.einsum("ij,ij->i", signs[a], signs[b])

        a = rng.integers(0, m, size=100_000)
        b = rng.integers(0, m, size=100_000)
        dab, dba = distance(a, b), distance(b, a)
        rep.pairs_checked = a.size
        rep.symmetry_violations = int(np.count_nonzero(dab != dba))
        rep.range_violations = int(np.count_nonzero((dab < 0) | (dab > diameter)))

    remaining = sampled_triples
    while remaining > 0:
        size = min(remaining, 1 << 20)
        i, j, k = (rng.integers(0, m, size=size) for _ in range(3))
        rep.triangle_violations += int(np.count_nonzero(distance(i, k) > distance(i, j) + distance(j, k)))
        rep.triangle_checked += size
        remaining -= size

    for _ in range(kernel_checks):
        a, b = rng.integers(0, m, size=2)
        expected = int(distance(np.array([a]), np.array([b]))[0]) if n > 5 else int(dist[a, b])
        if kernel.kemeny_distance(members[a], members[b]) != expected:
            rep.kernel_mismatches += 1
    return rep


@dataclass(frozen=True)
class VarianceAudit:
    n: int
    oracle_variance: Fraction
    formula_exact: Fraction

    @property
    def formula_value(self) -> float:
        return float(self.formula_exact)

    @property
    def ratio(self) -> float:
        return float(self.oracle_variance / self.formula_exact)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "oracle_variance": float(self.oracle_variance),
            "oracle_variance_exact": f"{self.oracle_variance.numerator}/{self.oracle_variance.denominator}",
            "formula_value": self.formula_value,
            "ratio": self.ratio,
        }


def verify_variance_formula(n: int) -> VarianceAudit:
    """Compare the exact distance variance over the population with the closed form.

    The reference is the identity ordering and members are weighted uniformly.
    This reports the two values and their ratio; it does not assert agreement.
    """
    dist = exact_distance_distribution(n)
    return VarianceAudit(n, dist.variance(), population_distance_variance_exact(n))
