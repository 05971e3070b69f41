"""Wald and t tests for the Kemeny estimators.

The tau test comes in two readings, selected with a CorrectionPolicy:
example-consistent (normal reference, multiplies by the continuity factor c(n))
and equation-literal (Student t reference, marginal normalisation).
"""
# %%
from kemeny_stats import inference
from kemeny_stats.data import embedded_sleep

sleep = embedded_sleep()
extra, group = sleep["extra"], sleep["group"]

for policy in (inference.EXAMPLE_CONSISTENT, inference.EQUATION_LITERAL):
    res = inference.tau_wald_test(extra, group, policy)
    print(f"{policy.variant:19s} stat={res.statistic: .6f} p={res.p_value:.6f} "
          f"({res.distribution}, df={res.df}, c={res.correction_c:.4f})")

# %% the rho test and the classical Pearson test share one t transform, df = n - 2
for res in (inference.rho_t_test(extra, group), inference.pearson_t_test(extra, group)):
    print(f"{res.method:15s} r={res.estimate:.7f} t={res.statistic:.4f} p={res.p_value:.5f}")

# %% one-sample tests compare against the identity ordering 1..n
print(inference.one_sample_rho_test(extra).as_dict())

# %% c(n) in its three bands
print([round(inference.continuity_correction(n), 5) for n in (20, 100, 1000)])
