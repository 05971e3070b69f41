"""Exhaustive enumeration of small populations of orderings with ties.

For size n the population holds every labelling over {1..n} except the
constants, n^n - n members.  All masses are exact fractions.
"""
# %%
from kemeny_stats import oracle

for n in (2, 3, 4):
    dist = oracle.exact_distance_distribution(n)
    print(n, dist.cardinality, {d: str(p) for d, p in dist.mass.items()})

# %% the closed-form population variance against the exact one
for n in range(2, 7):
    audit = oracle.verify_variance_formula(n)
    print(f"n={n} exact={audit.oracle_variance} formula={audit.formula_exact} ratio={audit.ratio:.6f}")

# %% metric axioms: symmetry and the triangle inequality hold; d(x, x) counts tied pairs
rep = oracle.verify_metric_axioms(4, sampled_triples=100_000, seed=1)
print({k: v for k, v in rep.as_dict().items() if k != "notes"})
