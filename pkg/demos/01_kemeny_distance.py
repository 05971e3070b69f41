"""Kemeny distance between two orderings with ties.

Each sample is encoded as a skew-symmetric score matrix with entries
sqrt(0.5) * sign(x_k - x_l).  The distance is (n^2 - n)/2 plus the inner
product of one score matrix with the transpose of the other.
"""
# %%
import time

import numpy as np

from kemeny_stats import kernel
from kemeny_stats.data import embedded_sleep

sleep = embedded_sleep()
extra, group = sleep["extra"], sleep["group"]

# %% the score matrix of a small tied sample
x = np.array([3.0, 1.0, 1.0, 2.0])
print(np.round(kernel.kappa_scores(x), 3))  # ties give zeros, the diagonal is zero

# %% the distance on the Sleep data
print("d(extra, group) =", kernel.kemeny_distance(extra, group))  # 141
print("frobenius sd    =", kernel.frobenius_sd(extra), kernel.frobenius_sd(group))
print("kemeny variance =", kernel.kemeny_variance(extra), kernel.kemeny_variance(group))

# %% self-distance counts tied pairs: only tie-free samples sit at distance 0
print("d(group, group) =", kernel.kemeny_distance(group, group), "tied pairs:", kernel.tie_counts(group))

# %% the O(n log n) kernel agrees with the dense O(n^2) definition
rng = np.random.default_rng(0)
a = rng.integers(0, 30, size=10_000).astype(float)
b = rng.normal(size=10_000)
for fn in (kernel.kemeny_distance, kernel.kemeny_distance_reference):
    t0 = time.perf_counter()
    d = fn(a, b)
    print(f"{fn.__name__:28s} d={d}  {time.perf_counter() - t0:.3f}s")
