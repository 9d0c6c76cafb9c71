"""
Rolling statistics and stationarizing transforms
=================================================

A quick tour of the window statistics and the seven report transforms on a
synthetic hourly price series.
"""

# %%
import numpy as np

from gridadf import SeriesMeta, make_series
from gridadf.rolling import ewma, moving_average, moving_std
from gridadf.series import Horizon, Market, Variable, drop_undefined_prefix, resample
from gridadf.transforms import DEFAULT_TRANSFORMS, apply

rng = np.random.default_rng(0)

# %% [markdown]
# Ninety days of hourly prices: a slow random walk, a daily cycle and noise.

# %%
hours = np.arange(90 * 24)
level = 40 + np.cumsum(rng.normal(0, 0.3, hours.size))
price = level + 6 * np.sin(2 * np.pi * (hours % 24) / 24) + rng.normal(0, 1.5, hours.size)
meta = SeriesMeta("Boston", Variable.PRICE, Market.REAL_TIME, Horizon.HOURLY)
s = make_series(price, meta, step=Horizon.HOURLY)
print(len(s), "hourly points, base label:", s.meta.base_label)

# %% [markdown]
# Trailing windows leave `n - 1` undefined entries at the front; EWMA is
# defined from the first point.

# %%
ma = moving_average(s, 24)
sd = moving_std(s, 24)
ew = ewma(s, 0.05)
print("MA undefined prefix:  ", ma.undefined)
print("Mstd undefined prefix:", sd.undefined)
print("EWMA undefined prefix:", ew.undefined)
print("last MA / Mstd / EWMA:", ma.values[-1], sd.values[-1], ew.values[-1])

# %% [markdown]
# Removing the moving average and adding it back gives the input again, up to
# a couple of rounding units.

# %%
from gridadf.transforms import remove_ma  # noqa: E402

resid = remove_ma(s, 24)
back = resid.values[23:] + ma.values[23:]
print("max reconstruction error:", np.abs(back - price[23:]).max())

# %% [markdown]
# Daily means, then each default transform with its table label and the
# number of defined points it leaves.

# %%
daily = resample(s, Horizon.DAILY)
for kind in DEFAULT_TRANSFORMS:
    out = drop_undefined_prefix(apply(daily, kind))
    print(f"{kind.label(daily.meta.base_label):<28} {len(out):>3} points")
