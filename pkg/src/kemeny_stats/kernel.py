"""Kemeny score kernel: kappa scores, distance, variance and rank vectors.

Every quantity here is built on the pairwise sign rule

    kappa_kl(x) = sqrt(0.5) * sign(x_k - x_l)

with ties (including equal infinities) scoring zero.  Internally the signs
are kept as small integers so that distances and concentrations are exact;
the sqrt(0.5) factor only enters where a real-valued result is returned.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionError, DomainError

__all__ = [
    "SQRT_HALF",
    "as_sample",
    "is_constant",
    "kappa_scores",
    "kemeny_distance",
    "kemeny_distance_reference",
    "concordance",
    "concordance_reference",
    "tie_counts",
    "kemeny_variance",
    "midranks",
    "rank_scores",
    "rank_vector",
    "rank_vector_rowsum",
    "frobenius_sd",
    "cross_concentration",
]

SQRT_HALF = math.sqrt(0.5)

# Row block for the dense kernel; bounds the temporaries at _BLOCK * n bytes.
_BLOCK = 1024


def as_sample(x, name: str = "x") -> np.ndarray:
    """Validate ``x`` as a sample of extended reals and return a float array.

    Raises
    ------
    DomainError
        If ``x`` is not one-dimensional, has fewer than two entries or
        contains NaN.  Infinite entries are accepted.
    """
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise DomainError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size < 2:
        raise DomainError(f"{name} must contain at least two observations")
    if np.isnan(arr).any():
        raise DomainError(f"{name} contains NaN; only extended reals are allowed")
    return arr


def _as_pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = as_sample(x, "x")
    y = as_sample(y, "y")
    if x.size != y.size:
        raise DimensionError(f"length mismatch: {x.size} != {y.size}")
    return x, y


def is_constant(x) -> bool:
    """True when every entry of the sample is equal (a degenerate sample)."""
    x = as_sample(x)
    return bool(np.all(x == x[0]))


def _sign_block(x: np.ndarray, rows: slice) -> np.ndarray:
    # comparison-based sign so that +inf vs +inf is a tie rather than NaN
    a = x[rows, None]
    return (a > x[None, :]).astype(np.int8) - (a < x[None, :]).astype(np.int8)


def kappa_scores(x) -> np.ndarray:
    """Dense n-by-n skew-symmetric score matrix ``sqrt(0.5)*sign(x_k - x_l)``."""
    x = as_sample(x)
    return SQRT_HALF * _sign_block(x, slice(None))


def concordance_reference(x, y) -> int:
    """Sum over unordered pairs of ``sign(dx) * sign(dy)``, by direct O(n^2) evaluation.

    This equals C - D, the number of concordant minus discordant pairs, where
    pairs tied in either sample contribute nothing.
    """
    x, y = _as_pair(x, y)
    n = x.size
    total = 0
    for start in range(0, n, _BLOCK):
        rows = slice(start, min(start + _BLOCK, n))
        prod = _sign_block(x, rows) * _sign_block(y, rows)
        total += int(prod.sum(dtype=np.int64))
    # the full sum visits each unordered pair twice
    return total // 2


def tie_counts(x) -> int:
    """Number of unordered pairs tied in ``x``."""
    _, counts = np.unique(np.asarray(x), return_counts=True)
    return int((counts * (counts - 1) // 2).sum())


def _base_blocks(codes: np.ndarray, width: int) -> tuple[list, int]:
    """Sort fixed-width blocks and count their internal inversions.

    Cost is O(n * width), so linear for the fixed base width.
    """
    n = codes.size
    full = n - n % width
    inversions = 0
    pieces = []
    upper = np.triu(np.ones((width, width), dtype=bool), k=1)
    if full:
        blocks = codes[:full].reshape(-1, width)
        greater = blocks[:, :, None] > blocks[:, None, :]
        inversions += int(np.count_nonzero(greater & upper))
        pieces.append(np.sort(blocks, axis=1).ravel())
    if full < n:
        tail = codes[full:]
        k = tail.size
        inversions += int(np.count_nonzero((tail[:, None] > tail[None, :]) & upper[:k, :k]))
        pieces.append(np.sort(tail))
    return np.concatenate(pieces).tolist(), inversions


_BASE_WIDTH = 128


def _count_inversions(seq) -> int:
    """Strict inversions ``i < j, seq[i] > seq[j]`` by bottom-up merge sort.

    The lowest levels are done blockwise in numpy; the remaining merges run in
    plain Python.
    """
    codes = np.asarray(seq, dtype=np.int64)
    n = codes.size
    width = min(_BASE_WIDTH, n)
    src, inversions = _base_blocks(codes, width)
    while width < n:
        dst = []
        append = dst.append
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j = lo, mid
            while i < mid and j < hi:
                if src[j] < src[i]:
                    append(src[j])
                    inversions += mid - i
                    j += 1
                else:
                    append(src[i])
                    i += 1
            dst.extend(src[i:mid])
            dst.extend(src[j:hi])
        src = dst
        width *= 2
    return inversions


def concordance(x, y) -> int:
    """C - D by tie-aware merge-sort pair counting in O(n log n).

    Sorting by ``(x, y)`` leaves exactly the discordant pairs as strict
    inversions of the ``y`` sequence; tie groups in ``x``, ``y`` and jointly
    are counted from run lengths.
    """
    x, y = _as_pair(x, y)
    n = x.size
    order = np.lexsort((y, x))
    xs = x[order]
    ys = y[order]

    new_x = np.empty(n, dtype=bool)
    new_x[0] = True
    new_x[1:] = xs[1:] != xs[:-1]
    new_joint = new_x.copy()
    new_joint[1:] |= ys[1:] != ys[:-1]

    def _tied_pairs(starts: np.ndarray) -> int:
        runs = np.diff(np.append(np.flatnonzero(starts), n))
        return int((runs * (runs - 1) // 2).sum())

    tied_x = _tied_pairs(new_x)
    tied_y = tie_counts(ys)
    tied_xy = _tied_pairs(new_joint)

    # integer codes keep the merge loop cheap and make infinities harmless
    codes = np.unique(ys, return_inverse=True)[1]
    discordant = _count_inversions(codes)

    pairs = n * (n - 1) // 2
    concordant = pairs - tied_x - tied_y + tied_xy - discordant
    return concordant - discordant


def _distance_from_concordance(n: int, s: int) -> int:
    d = (n * n - n) / 2 - s
    r = round(d)
    assert abs(d - r) <= 1e-9, "Kemeny distance must be integral"
    return int(r)


def kemeny_distance(x, y) -> int:
    """Kemeny distance ``(n^2 - n)/2 + sum_kl kappa_kl(x) kappa_lk(y)``.

    Integer valued on ``[0, n^2 - n]``.  Uses the merge-sort kernel; see
    :func:`kemeny_distance_reference` for the dense definition.

    >>> kemeny_distance([1, 2, 3], [3, 2, 1])
    6
    """
    x, y = _as_pair(x, y)
    return _distance_from_concordance(x.size, concordance(x, y))


def kemeny_distance_reference(x, y) -> int:
    """Kemeny distance by dense O(n^2) evaluation of the score matrices."""
    x, y = _as_pair(x, y)
    return _distance_from_concordance(x.size, concordance_reference(x, y))


def kemeny_variance(x) -> float:
    """Fraction of ordered pairs that are untied, in ``[0, 1]``.

    Equal to ``2/(n(n-1)) * sum kappa_kl(x)^2``: 1 for a tie-free sample and 0
    for a constant one.
    """
    x = as_sample(x)
    n = x.size
    pairs = n * (n - 1) // 2
    return (pairs - tie_counts(x)) / pairs


def midranks(x) -> np.ndarray:
    """Average ranks (1-based) with ties sharing the mean of their positions."""
    x = as_sample(x)
    _, inverse, counts = np.unique(x, return_inverse=True, return_counts=True)
    # a group occupying positions a+1..a+c has midrank a + (c + 1)/2
    before = np.cumsum(counts) - counts
    return (before + 0.5 * (counts + 1))[inverse]


def rank_scores(x) -> np.ndarray:
    """Integer row sums of the sign matrix, ``2*midrank - n - 1`` (exact in floating point)."""
    x = as_sample(x)
    return 2.0 * midranks(x) - x.size - 1.0


def rank_vector(x) -> np.ndarray:
    """Row-marginalised scores ``sqrt(0.5) * (2*midrank - n - 1)``; sums to zero."""
    return SQRT_HALF * rank_scores(x)


def rank_vector_rowsum(x) -> np.ndarray:
    """Rank vector as literal row sums of the dense score matrix."""
    x = as_sample(x)
    sums = _sign_block(x, slice(None)).sum(axis=1, dtype=np.int64)
    return SQRT_HALF * sums.astype(np.float64)


def frobenius_sd(x) -> float:
    """Standard deviation of the rank vector with denominator ``n - 1``."""
    r = rank_vector(x)
    return math.sqrt(float(np.dot(r, r)) / (r.size - 1))


def cross_concentration(x, y) -> float:
    """``2/(n(n-1)) * sum_kl kappa_kl(x) kappa_kl(y)``, i.e. ``2(C - D)/(n^2 - n)``."""
    x, y = _as_pair(x, y)
    n = x.size
    return 2.0 * concordance(x, y) / (n * n - n)
