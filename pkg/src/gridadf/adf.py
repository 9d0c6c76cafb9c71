"""Dickey-Fuller and augmented Dickey-Fuller unit-root tests.

The regression always carries a constant and no trend::

    dy_t = a0 + gamma * y_{t-1} + theta_1 dy_{t-1} + ... + theta_p dy_{t-p} + e_t

H0 is ``gamma = 0`` (unit root); the statistic is the OLS t-ratio of gamma,
compared against MacKinnon's constant-only distribution.

With automatic lag selection every candidate ``p = 0..maxlag`` is fitted on
the same rows (those available at ``maxlag``) so their information criteria
are comparable; the winner is then refitted on all rows it can use, which
makes ``nobs = N - p - 1``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import DegenerateSeries, RankDeficient, TooShort, ZeroRSS
from .linreg import build_adf_design, ols_fit
from .mackinnon import LEVELS, MIN_NOBS, crit_surface, mackinnon_crit, mackinnon_pvalue

__all__ = [
    "AicVariant",
    "AdfConfig",
    "CriticalValues",
    "AdfResult",
    "Verdict",
    "default_maxlag",
    "aic",
    "adf_test",
    "df_test",
    "verdict",
]


class AicVariant(enum.Enum):
    """Information criterion used to rank lag orders.

    ``STANDARD`` is ``m*ln(rss/m) + 2k``, the Gaussian log-likelihood AIC up
    to an additive constant. ``PAPER_EQ19`` is ``-2*ln(rss/m) + 2k``; it has
    no sample-size factor and rewards larger residual variance, so it is
    offered for comparison only.
    """

    STANDARD = "standard"
    PAPER_EQ19 = "paper"


class Verdict(enum.Enum):
    STATIONARY = "Stationary"
    NON_STATIONARY = "NonStationary"


@dataclass(frozen=True)
class AdfConfig:
    """Settings for :func:`adf_test`.

    ``lags=None`` selects the lag by information criterion over
    ``0..maxlag``; an integer fixes it. ``maxlag=None`` uses
    :func:`default_maxlag`.
    """

    maxlag: int | None = None
    lags: int | None = None
    aic_variant: AicVariant = AicVariant.STANDARD
    significance: float = 0.05

    def __post_init__(self):
        if self.maxlag is not None and self.maxlag < 0:
            raise ValueError("maxlag must be >= 0")
        if self.lags is not None:
            if self.lags < 0:
                raise ValueError("lags must be >= 0")
            if self.maxlag is not None and self.lags > self.maxlag:
                raise ValueError("fixed lag exceeds maxlag")
        if not 0 < self.significance < 1:
            raise ValueError("significance must lie in (0, 1)")
        object.__setattr__(self, "aic_variant", AicVariant(self.aic_variant))

    @classmethod
    def fixed(cls, p, **kw):
        return cls(lags=p, **kw)

    @property
    def autolag(self):
        return self.lags is None


@dataclass(frozen=True)
class CriticalValues:
    cv1: float
    cv5: float
    cv10: float

    @classmethod
    def for_nobs(cls, nobs):
        """Critical values for a regression with `nobs` rows.

        Samples under 20 rows (possible for short Dickey-Fuller runs) get the
        surface extrapolated rather than an error.
        """
        crit = mackinnon_crit if nobs >= MIN_NOBS else crit_surface
        return cls(*(crit(level, nobs) for level in LEVELS))

    def as_dict(self):
        return {"1%": self.cv1, "5%": self.cv5, "10%": self.cv10}


@dataclass(frozen=True, eq=False)
class AdfResult:
    statistic: float
    pvalue: float
    lags_used: int
    nobs: int
    critical: CriticalValues
    aic_trace: dict = field(default_factory=dict)
    maxlag: int = 0
    gamma: float = math.nan

    @property
    def reject_at(self):
        """``{level: statistic < critical value}`` for 1%, 5% and 10%."""
        return {level: self.statistic < cv for level, cv in self.critical.as_dict().items()}

    @property
    def series_length(self):
        return self.nobs + self.lags_used + 1


def default_maxlag(n):
    """Schwert's rule ``ceil(12 * (n/100)^(1/4))``."""
    return int(math.ceil(12.0 * (n / 100.0) ** 0.25))


def _max_feasible_lag(n):
    # widest design must keep N - p - 1 >= p + 5 rows
    return max(0, (n - 6) // 2)


def aic(fit, variant=AicVariant.STANDARD):
    """Information criterion of a fitted regression; smaller is better."""
    if fit.rss <= 0:
        raise ZeroRSS("perfect fit: information criterion is unbounded")
    return _criterion(fit.rss, fit.nobs, fit.k, variant)


def _criterion(rss, m, k, variant):
    mse = rss / m
    if AicVariant(variant) is AicVariant.STANDARD:
        return m * math.log(mse) + 2 * k
    return -2.0 * math.log(mse) + 2 * k


def _fit(design, target):
    try:
        return ols_fit(design, target)
    except RankDeficient as exc:
        raise DegenerateSeries(f"ADF regression is degenerate ({exc})") from exc


def _nested_rss(design, target, maxlag):
    """RSS of every candidate lag from one QR of the common-sample design.

    Columns are reordered to ``[const, y_lag1, dy_lag1..dy_lag{maxlag}]`` so
    candidate p uses the leading ``p + 2`` columns. With ``[X | y] = QR``,
    the residual of y on the first k columns has squared norm
    ``sum(R[k:, -1]**2)``.
    """
    X = design.data
    order = [maxlag + 1] + list(range(maxlag + 1))
    A = np.column_stack([X[:, order], target])
    R = scipy.linalg.qr(A, mode="r")[0]
    k_all = X.shape[1]
    diag = np.abs(np.diag(R)[:k_all])
    scale = np.linalg.norm(X[:, order], axis=0)
    if np.any(diag <= max(X.shape) * np.finfo(float).eps * scale):
        raise DegenerateSeries("ADF regression is degenerate (dependent regressors)")
    tail = R[:, -1] ** 2
    # rss[k] for k leading columns, k = 2..k_all
    cum = np.cumsum(tail[::-1])[::-1]
    return {p: float(cum[p + 2]) for p in range(maxlag + 1)}


def select_lag(values, maxlag, variant=AicVariant.STANDARD):
    """Return ``(best_lag, {p: criterion})`` over the common ``maxlag`` sample."""
    design, target = build_adf_design(values, maxlag)
    m = design.rows
    trace = {}
    for p, rss in _nested_rss(design, target, maxlag).items():
        if rss <= 0:
            raise ZeroRSS(f"perfect fit at lag {p}")
        trace[p] = _criterion(rss, m, p + 2, variant)
    best = min(trace, key=lambda p: (trace[p], p))
    return best, trace


def adf_test(s, cfg=None):
    """Augmented Dickey-Fuller test on the defined values of `s`.

    Raises
    ------
    TooShort
        If the series cannot support the widest regression.
    DegenerateSeries
        If a regression design is rank deficient (e.g. a constant series).
    """
    cfg = cfg or AdfConfig()
    y = np.asarray(s.defined if hasattr(s, "defined") else s, dtype=float)
    n = y.size
    if cfg.maxlag is not None:
        maxlag = cfg.maxlag
    elif cfg.lags is not None:
        maxlag = cfg.lags
    else:
        maxlag = min(default_maxlag(n), _max_feasible_lag(n))
    if n - maxlag - 1 < maxlag + 5:
        raise TooShort(f"{n} values are too few for maxlag={maxlag}")

    if cfg.autolag:
        lags, trace = select_lag(y, maxlag, cfg.aic_variant)
    else:
        lags, trace = cfg.lags, {}

    design, target = build_adf_design(y, lags)
    fit = _fit(design, target)
    stat = float(fit.tstat[0])
    return AdfResult(
        statistic=stat,
        pvalue=mackinnon_pvalue(stat),
        lags_used=lags,
        nobs=fit.nobs,
        critical=CriticalValues.for_nobs(fit.nobs),
        aic_trace=trace,
        maxlag=maxlag,
        gamma=float(fit.coef[0]),
    )


def df_test(s):
    """Plain Dickey-Fuller test (no lagged differences)."""
    n = s.defined_len() if hasattr(s, "defined_len") else len(s)
    if n < 10:
        raise TooShort(f"Dickey-Fuller test needs at least 10 values, got {n}")
    return adf_test(s, AdfConfig(lags=0))


def verdict(result, alpha=0.05):
    """Stationary iff the unit-root null is rejected, ``pvalue < alpha``."""
    return Verdict.STATIONARY if result.pvalue < alpha else Verdict.NON_STATIONARY
