"""The five correlation estimators on the Sleep data, and how ties affect them."""
# %%
import numpy as np

from kemeny_stats import estimators
from kemeny_stats.data import embedded_sleep

sleep = embedded_sleep()
extra, group = sleep["extra"], sleep["group"]

for method, est in estimators.all_estimates(extra, group).items():
    print(f"{method:14s} {est.value: .7f}")

# %% tau_kappa carries no tie normalisation; sin(pi/2 tau) maps it onto the rho scale
tau = estimators.tau_kappa(extra, group).value
print("sin transform  ", estimators.sin_transform(tau))

# %% rho_kappa and midrank Spearman are the same number, bit for bit
rng = np.random.default_rng(1)
x = rng.integers(0, 4, size=50).astype(float)
y = rng.integers(0, 6, size=50).astype(float)
print(estimators.rho_kappa(x, y).value == estimators.spearman_rho(x, y).value)

# %% without ties tau_kappa and Kendall's tau-b coincide
x, y = rng.permutation(40).astype(float), rng.normal(size=40)
print(estimators.tau_kappa(x, y).value, estimators.kendall_tau_b(x, y).value)
