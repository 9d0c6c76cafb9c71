"""MacKinnon response surfaces for the constant-only Dickey-Fuller test.

Critical values: MacKinnon, J.G. (2010), "Critical Values for Cointegration
Tests", Queen's Economics Dept. Working Paper 1227, Table 2, N = 1, case
"c" (constant, no trend). Each level has ``tau(T) = b0 + b1/T + b2/T^2 + b3/T^3``.

P-values: MacKinnon, J.G. (1994), "Approximate Asymptotic Distribution
Functions for Unit-Root and Cointegration Tests", JBES 12(2), 167-176,
N = 1, case "c". The p-value is ``Phi(g(tau))`` with a quadratic ``g`` left
of ``TAU_STAR`` and a cubic ``g`` to its right; outside
``[TAU_MIN, TAU_MAX]`` the fit is not valid and the p-value saturates.
"""
import math

import numpy as np
from scipy.special import ndtr

from .errors import TooFewObs

__all__ = ["CRIT_SURFACE", "LEVELS", "mackinnon_crit", "crit_surface", "mackinnon_pvalue"]

LEVELS = ("1%", "5%", "10%")

# b0, b1, b2, b3
CRIT_SURFACE = {
    "1%": (-3.43035, -6.5393, -16.786, -79.433),
    "5%": (-2.86154, -2.8903, -4.234, -40.040),
    "10%": (-2.56677, -1.5384, -2.809, 0.0),
}

TAU_STAR = -1.61
TAU_MIN = -18.83
TAU_MAX = 2.74

# g(tau) = c0 + c1*tau + c2*tau^2 (+ c3*tau^3), coefficients with the
# published scale factors already applied
SMALL_P = (2.1659, 1.4412, 3.8269e-2)
LARGE_P = (1.7339, 0.93202, -0.12745, -0.010368)

MIN_NOBS = 20


def _level_key(level):
    if isinstance(level, str):
        key = level.strip()
        if not key.endswith("%"):
            key += "%"
    else:
        pct = float(level)
        pct = pct * 100 if pct < 1 else pct
        key = f"{pct:g}%"
    if key not in CRIT_SURFACE:
        raise ValueError(f"unsupported significance level {level!r}; use one of {LEVELS}")
    return key


def mackinnon_crit(level, nobs):
    """Finite-sample critical value of the ADF t-statistic.

    Parameters
    ----------
    level : {"1%", "5%", "10%"} or {0.01, 0.05, 0.10}
    nobs : int
        Number of observations in the test regression.
    """
    if nobs < MIN_NOBS:
        raise TooFewObs(f"critical values need nobs >= {MIN_NOBS}, got {nobs}")
    return crit_surface(level, nobs)


def crit_surface(level, nobs):
    """The response surface without the sample-size guard.

    Below 20 observations this is an extrapolation of the published fit.
    """
    b0, b1, b2, b3 = CRIT_SURFACE[_level_key(level)]
    x = 1.0 / nobs
    return b0 + x * (b1 + x * (b2 + x * b3))


def mackinnon_pvalue(tau):
    """Approximate p-value of an ADF t-statistic (left-tailed test)."""
    tau = float(tau)
    if math.isnan(tau):
        raise ValueError("tau must not be NaN")
    if tau > TAU_MAX:
        return 1.0
    if tau < TAU_MIN:
        return 0.0
    coef = SMALL_P if tau <= TAU_STAR else LARGE_P
    g = np.polynomial.polynomial.polyval(tau, coef)
    return float(min(1.0, max(0.0, ndtr(g))))
