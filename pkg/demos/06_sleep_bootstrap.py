"""Pair bootstrap of all five estimators on the Sleep data.

Runs 15,500 replicates by default (about ten seconds on one core); pass a
smaller count as the first argument for a quick look.
"""
# %%
import sys

from kemeny_stats.data import embedded_sleep
from kemeny_stats.simulation import bootstrap_correlations

replicates = int(sys.argv[1]) if len(sys.argv) > 1 else 15_500
sleep = embedded_sleep()
results = bootstrap_correlations(sleep["extra"], sleep["group"], replicates, seed=20231014)

print("method          mean    sd      median  2.5%    97.5%")
for r in results:
    s = r.stats
    print(f"{r.method:14s} {s.mean:6.3f}  {s.sd:6.3f}  {s.median:6.3f}  {r.quantile_2_5:6.3f}  {r.quantile_97_5:6.3f}")
