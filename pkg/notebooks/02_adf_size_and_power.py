"""
Size and power of the ADF test
==============================

Monte Carlo check that the test rejects about 5% of true unit roots at the
5% level and nearly always rejects for stationary AR(1) series.
"""

# %%
import time

import numpy as np

from gridadf import AdfConfig, adf_test, df_test
from gridadf.mackinnon import mackinnon_crit, mackinnon_pvalue
from gridadf.series import gen_ar1, gen_random_walk

# %% [markdown]
# Finite-sample critical values move toward their asymptotic limits as the
# regression gets longer.

# %%
for nobs in (25, 100, 500, 1771):
    print(nobs, [round(mackinnon_crit(level, nobs), 4) for level in ("1%", "5%", "10%")])
print("p-value at tau = -3.53:", mackinnon_pvalue(-3.53))

# %% [markdown]
# One run in detail: lag chosen by AIC, bookkeeping and verdict.

# %%
r = adf_test(gen_ar1(1797, 0.0, 0.6, 1.0, seed=1))
print("statistic", r.statistic, "p", r.pvalue)
print("lags", r.lags_used, "nobs", r.nobs, "maxlag", r.maxlag)
print("nobs + lags + 1 =", r.nobs + r.lags_used + 1)

# %% [markdown]
# Size: driftless random walks, N = 500.

# %%
t0 = time.perf_counter()
trials = 1000
for name, test in (("DF", df_test), ("ADF (AIC)", adf_test)):
    hits = np.array([test(gen_random_walk(500, 0.0, 1.0, seed)).reject_at["5%"] for seed in range(trials)])
    half = 2 * np.sqrt(0.05 * 0.95 / trials)
    print(f"{name:<10} rejection rate {hits.mean():.3f}  (0.05 +/- {half:.3f})")
print(f"{time.perf_counter() - t0:.1f} s")

# %% [markdown]
# Power against stationary alternatives. As phi approaches 1 the series looks
# more like a random walk and short samples lose power.

# %%
for phi in (0.5, 0.9, 0.97, 0.99):
    for n in (100, 500):
        rate = np.mean([adf_test(gen_ar1(n, 0.0, phi, 1.0, seed)).reject_at["5%"] for seed in range(200)])
        print(f"phi={phi:<5} N={n:<4} power {rate:.3f}")

# %% [markdown]
# The alternative AIC form only changes which lag gets picked. An AR(3)
# gives the lag search something to find.

# %%
from gridadf import make_series  # noqa: E402

e = np.random.default_rng(4).normal(size=800)
x = np.zeros(800)
for t in range(3, 800):
    x[t] = 0.5 * x[t - 1] + 0.2 * x[t - 2] - 0.25 * x[t - 3] + e[t]
s = make_series(x[200:])
for variant in ("standard", "paper"):
    r = adf_test(s, AdfConfig(aic_variant=variant))
    print(f"{variant:<9} lags={r.lags_used:<3} stat={r.statistic:.3f}")
