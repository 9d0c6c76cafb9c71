"""Uniformly sampled time series, calendar resampling and synthetic generators.

A :class:`TimeSeries` carries its values as a float array plus an explicit
count of leading *undefined* entries. Rolling windows and differencing only
ever create such a leading gap, so a single integer is enough to describe
which entries are defined; the array slots in the gap hold NaN purely as
filler and are never read as data.

Random generators use NumPy's ``PCG64`` bit generator and its
``standard_normal`` (ziggurat) sampler, seeded directly with the integer
seed, so a fixture is reproducible from ``(params, seed)`` alone.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from datetime import datetime, timedelta, timezone

import numpy as np

from .errors import BadLength, EmptySeries, FinerTarget, NonFinite

__all__ = [
    "Variable",
    "Market",
    "Horizon",
    "SeriesMeta",
    "TimeSeries",
    "ZONES",
    "make_series",
    "resample",
    "drop_undefined_prefix",
    "gen_trend",
    "gen_ar1",
    "gen_random_walk",
]

#: Operational zones of the New England system, in report order.
ZONES = (
    "ISONE CA",
    "Portland",
    "Burlington",
    "Bridgeport",
    "Providence",
    "SEMASS",
    "Worcester",
    "Concord",
    "Boston",
)

EPOCH = datetime(2000, 1, 1, tzinfo=timezone.utc)


class Variable(enum.Enum):
    DEMAND = "Demand"
    PRICE = "Price"


class Market(enum.Enum):
    DAY_AHEAD = "DA"
    REAL_TIME = "RT"


class Horizon(enum.Enum):
    HOURLY = "hourly"
    DAILY = "daily"
    WEEKLY = "weekly"
    MONTHLY = "monthly"

    @property
    def rank(self):
        return _HORIZON_RANK[self]


_HORIZON_RANK = {Horizon.HOURLY: 0, Horizon.DAILY: 1, Horizon.WEEKLY: 2, Horizon.MONTHLY: 3}


@dataclass(frozen=True)
class SeriesMeta:
    zone: str = "synthetic"
    variable: Variable = Variable.PRICE
    market: Market = Market.REAL_TIME
    horizon: Horizon = Horizon.HOURLY
    transform_label: str = ""

    @property
    def base_label(self):
        """Row label of the untransformed series, e.g. ``"RT Price"``."""
        return f"{self.market.value} {self.variable.value}"

    def with_transform(self, label):
        new = label if not self.transform_label else f"{label} | {self.transform_label}"
        return replace(self, transform_label=new)


def _utc(ts):
    if ts.tzinfo is None:
        return ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def _add_months(ts, k):
    m = ts.month - 1 + k
    return ts.replace(year=ts.year + m // 12, month=m % 12 + 1)


_STEP_DELTA = {
    Horizon.HOURLY: timedelta(hours=1),
    Horizon.DAILY: timedelta(days=1),
    Horizon.WEEKLY: timedelta(weeks=1),
}


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Immutable uniformly sampled series.

    Attributes
    ----------
    start_time : datetime
        UTC timestamp of ``values[0]`` (defined or not).
    step : Horizon
        Sampling interval.
    values : ndarray
        Read-only float array. Entries ``values[:undefined]`` are undefined.
    meta : SeriesMeta
    undefined : int
        Length of the undefined prefix.
    dropped : int
        Number of leading samples discarded by a truncating transform
        (see :class:`gridadf.transforms.LogPolicy`).
    """

    start_time: datetime
    step: Horizon
    values: np.ndarray
    meta: SeriesMeta = field(default_factory=SeriesMeta)
    undefined: int = 0
    dropped: int = 0

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.ndim != 1 or vals.size == 0:
            raise EmptySeries("series must have at least one value")
        if not 0 <= self.undefined <= vals.size:
            raise ValueError("undefined prefix longer than the series")
        vals[: self.undefined] = np.nan
        if not np.all(np.isfinite(vals[self.undefined:])):
            raise NonFinite("defined values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "start_time", _utc(self.start_time))

    def __len__(self):
        return self.values.size

    def defined_len(self):
        return self.values.size - self.undefined

    @property
    def defined(self):
        """The defined suffix of ``values``."""
        return self.values[self.undefined:]

    def is_defined(self):
        """Boolean mask of defined entries."""
        mask = np.ones(self.values.size, dtype=bool)
        mask[: self.undefined] = False
        return mask

    def time_at(self, i):
        if self.step is Horizon.MONTHLY:
            return _add_months(self.start_time, i)
        return self.start_time + i * _STEP_DELTA[self.step]

    def times(self):
        """List of timestamps, one per entry."""
        return [self.time_at(i) for i in range(self.values.size)]

    def derive(self, values, undefined, label, *, start_time=None, dropped=None):
        """New series on the same clock with a transform label appended."""
        return TimeSeries(
            start_time=self.start_time if start_time is None else start_time,
            step=self.step,
            values=values,
            meta=self.meta.with_transform(label) if label else self.meta,
            undefined=undefined,
            dropped=self.dropped if dropped is None else dropped,
        )

    def __eq__(self, other):
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return (
            self.start_time == other.start_time
            and self.step is other.step
            and self.meta == other.meta
            and self.undefined == other.undefined
            and self.dropped == other.dropped
            and np.array_equal(self.defined, other.defined)
            and len(self) == len(other)
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"TimeSeries(len={len(self)}, undefined={self.undefined}, "
            f"step={self.step.value}, start={self.start_time.isoformat()}, "
            f"label={self.meta.transform_label or self.meta.base_label!r})"
        )


def make_series(values, meta=None, start=EPOCH, step=Horizon.HOURLY):
    """Validate raw values and wrap them in a fully defined series."""
    vals = np.asarray(values, dtype=float)
    if vals.ndim != 1 or vals.size == 0:
        raise EmptySeries("values must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(vals)):
        raise NonFinite("values contain NaN or infinity")
    if meta is None:
        meta = SeriesMeta(horizon=step)
    elif meta.horizon is not step:
        meta = replace(meta, horizon=step)
    return TimeSeries(start_time=start, step=step, values=vals, meta=meta)


def drop_undefined_prefix(s):
    """Return the defined suffix of `s`, advancing ``start_time`` to match."""
    if s.undefined == 0:
        return s
    if s.defined_len() == 0:
        raise EmptySeries("series has no defined values")
    return TimeSeries(
        start_time=s.time_at(s.undefined),
        step=s.step,
        values=s.defined,
        meta=s.meta,
        undefined=0,
        dropped=s.dropped,
    )


def _datetime64(ts):
    return np.datetime64(ts.replace(tzinfo=None), "s")


def _bucket_keys(s, target):
    """Calendar bucket start for each defined entry, as datetime64[D]/[M]."""
    n = s.defined_len()
    t0 = _datetime64(s.time_at(s.undefined))
    if s.step is Horizon.HOURLY:
        stamps = t0 + np.arange(n) * np.timedelta64(3600, "s")
    elif s.step is Horizon.DAILY:
        stamps = t0 + np.arange(n) * np.timedelta64(86400, "s")
    else:  # weekly
        stamps = t0 + np.arange(n) * np.timedelta64(7 * 86400, "s")
    if target is Horizon.MONTHLY:
        return stamps.astype("datetime64[M]")
    days = stamps.astype("datetime64[D]")
    if target is Horizon.DAILY:
        return days
    # ISO week starts on Monday; 1970-01-01 was a Thursday.
    offset = (days.astype(np.int64) + 3) % 7
    return days - offset.astype("timedelta64[D]")


def resample(s, target):
    """Arithmetic mean of the defined values per calendar bucket.

    Days are UTC calendar days, weeks are ISO weeks (Monday start) and months
    are calendar months. Partial buckets at either edge are averaged over the
    samples they hold. Resampling to the series' own horizon returns it
    unchanged.

    Raises
    ------
    FinerTarget
        If `target` is finer than the series step.
    """
    target = Horizon(target)
    if target is s.step:
        return s
    if target.rank < s.step.rank:
        raise FinerTarget(f"cannot resample {s.step.value} series to {target.value}")
    if s.defined_len() == 0:
        raise EmptySeries("series has no defined values")
    keys = _bucket_keys(s, target)
    # keys are non-decreasing, so buckets are contiguous runs
    starts = np.flatnonzero(np.r_[True, keys[1:] != keys[:-1]])
    counts = np.diff(np.r_[starts, keys.size])
    vals = s.defined
    # shift by the run's first value so constant buckets average exactly
    base = vals[starts]
    means = base + np.add.reduceat(vals - np.repeat(base, counts), starts) / counts
    first = keys[0].astype("datetime64[s]").item().replace(tzinfo=timezone.utc)
    meta = replace(s.meta, horizon=target)
    return TimeSeries(start_time=first, step=target, values=means, meta=meta, dropped=s.dropped)


# ---------------------------------------------------------------------------
# synthetic generators


def _rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def _check_gen(n, noise_sd):
    if n < 2:
        raise BadLength(f"need n >= 2, got {n}")
    if noise_sd < 0:
        raise ValueError("noise_sd must be non-negative")


def gen_trend(n, alpha0, beta, noise_sd, seed, meta=None, start=EPOCH, step=Horizon.DAILY):
    """Deterministic linear trend ``alpha0 + beta * t + eps_t`` for t = 1..n."""
    _check_gen(n, noise_sd)
    t = np.arange(1, n + 1, dtype=float)
    eps = noise_sd * _rng(seed).standard_normal(n)
    return make_series(alpha0 + beta * t + eps, meta, start, step)


def gen_ar1(n, alpha0, phi, noise_sd, seed, meta=None, start=EPOCH, step=Horizon.DAILY):
    """AR(1) recursion ``y_t = alpha0 + phi * y_{t-1} + eps_t``.

    The first value is the stationary mean ``alpha0 / (1 - phi)`` when
    ``|phi| < 1`` and 0 otherwise; the n-1 innovations drive y_2..y_n.
    """
    _check_gen(n, noise_sd)
    eps = noise_sd * _rng(seed).standard_normal(n - 1)
    y = np.empty(n)
    y[0] = alpha0 / (1.0 - phi) if abs(phi) < 1 else 0.0
    prev = y[0]
    for t in range(1, n):
        prev = alpha0 + phi * prev + eps[t - 1]
        y[t] = prev
    return make_series(y, meta, start, step)


def gen_random_walk(n, drift, noise_sd, seed, meta=None, start=EPOCH, step=Horizon.DAILY):
    """Random walk with drift, i.e. :func:`gen_ar1` with ``phi = 1``."""
    return gen_ar1(n, drift, 1.0, noise_sd, seed, meta, start, step)
