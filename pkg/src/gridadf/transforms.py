"""Stationarizing transformations and differencing.

The report runs seven of these per series, in this order::

    Identity, Log, RemoveMA, RemoveEWMA, Diff(1), Diff(2), RemoveLogMA

Each one returns a new :class:`~gridadf.series.TimeSeries` on the same
clock whose undefined prefix grows by the transform's warm-up length.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import EmptySeries, NonpositiveValue, TooShort, WindowTooLarge
from .rolling import (
    DEFAULT_ALPHA,
    DEFAULT_WINDOW,
    check_alpha,
    check_window,
    ewma_values,
    window_mean,
)

__all__ = [
    "LogPolicy",
    "TransformKind",
    "Identity",
    "Log",
    "RemoveMA",
    "RemoveEWMA",
    "RemoveLogMA",
    "Diff",
    "DEFAULT_TRANSFORMS",
    "log_transform",
    "remove_ma",
    "remove_ewma",
    "remove_log_ma",
    "difference",
    "apply",
    "parse_transform",
]


class LogPolicy(enum.Enum):
    """What to do with values <= 0 before taking logs.

    ``STRICT`` raises :class:`NonpositiveValue`. ``DROP_NONPOSITIVE`` keeps
    only the longest positive suffix and records how many samples it cut in
    ``TimeSeries.dropped``.
    """

    STRICT = "strict"
    DROP_NONPOSITIVE = "drop_nonpositive"


# --- transform kinds ---------------------------------------------------------


@dataclass(frozen=True)
class TransformKind:
    def label(self, base):
        raise NotImplementedError

    @property
    def slug(self):
        raise NotImplementedError


@dataclass(frozen=True)
class Identity(TransformKind):
    def label(self, base):
        return base

    slug = "identity"


@dataclass(frozen=True)
class Log(TransformKind):
    policy: LogPolicy = LogPolicy.STRICT

    def label(self, base):
        return f"Log {base}"

    slug = "log"


@dataclass(frozen=True)
class RemoveMA(TransformKind):
    window: int = DEFAULT_WINDOW

    def __post_init__(self):
        check_window(self.window)

    def label(self, base):
        return f"Removed MA {base}"

    @property
    def slug(self):
        return f"remove_ma:{self.window}"


@dataclass(frozen=True)
class RemoveEWMA(TransformKind):
    alpha: float = DEFAULT_ALPHA

    def __post_init__(self):
        check_alpha(self.alpha)

    def label(self, base):
        return f"Removed Exp WMA {base}"

    @property
    def slug(self):
        return f"remove_ewma:{self.alpha:g}"


@dataclass(frozen=True)
class RemoveLogMA(TransformKind):
    window: int = DEFAULT_WINDOW
    policy: LogPolicy = LogPolicy.STRICT

    def __post_init__(self):
        check_window(self.window)

    def label(self, base):
        return f"Removed Log MA {base}"

    @property
    def slug(self):
        return f"remove_log_ma:{self.window}"


@dataclass(frozen=True)
class Diff(TransformKind):
    order: int = 1

    def __post_init__(self):
        if self.order not in (1, 2):
            raise ValueError(f"difference order must be 1 or 2, got {self.order}")

    def label(self, base):
        return f"{'First' if self.order == 1 else 'Second'} Diff {base}"

    @property
    def slug(self):
        return f"diff{self.order}"


def default_transforms(window=DEFAULT_WINDOW, alpha=DEFAULT_ALPHA):
    """The seven report rows, in table order."""
    return (
        Identity(),
        Log(),
        RemoveMA(window),
        RemoveEWMA(alpha),
        Diff(1),
        Diff(2),
        RemoveLogMA(window),
    )


DEFAULT_TRANSFORMS = default_transforms()


def parse_transform(text, window=DEFAULT_WINDOW, alpha=DEFAULT_ALPHA):
    """Parse a CLI transform name such as ``diff1``, ``log`` or ``remove_ma:24``."""
    name, _, arg = text.strip().lower().replace("-", "_").partition(":")
    if name in ("identity", "raw", "none"):
        return Identity()
    if name == "log":
        return Log()
    if name in ("diff1", "diff"):
        return Diff(1)
    if name == "diff2":
        return Diff(2)
    if name in ("remove_ma", "removema", "ma"):
        return RemoveMA(int(arg) if arg else window)
    if name in ("remove_ewma", "removeewma", "ewma"):
        return RemoveEWMA(float(arg) if arg else alpha)
    if name in ("remove_log_ma", "removelogma", "logma"):
        return RemoveLogMA(int(arg) if arg else window)
    raise ValueError(f"unknown transform {text!r}")


# --- operations -------------------------------------------------------------


def _require_defined(s):
    if s.undefined:
        raise TooShort("transform needs a fully defined series")


def _positive_part(s, policy):
    """Series restricted to positive values under `policy`."""
    vals = s.values
    bad = np.flatnonzero(vals <= 0)
    if bad.size == 0:
        return s
    if policy is LogPolicy.STRICT:
        raise NonpositiveValue(
            f"{bad.size} value(s) <= 0, first at index {bad[0]} ({vals[bad[0]]!r})"
        )
    cut = int(bad[-1]) + 1
    if cut == len(s):
        raise EmptySeries("no positive suffix survives")
    return s.derive(vals[cut:], 0, "", start_time=s.time_at(cut), dropped=s.dropped + cut)


def log_transform(s, policy=LogPolicy.STRICT):
    """Natural log of every value."""
    _require_defined(s)
    s = _positive_part(s, LogPolicy(policy))
    return s.derive(np.log(s.values), 0, "Log")


def _check_fits(s, n):
    check_window(n)
    if n > len(s):
        raise WindowTooLarge(f"window {n} exceeds series length {len(s)}")


def remove_ma(s, n):
    """``y_t - MA_t(n)``; the first ``n - 1`` entries are undefined."""
    _require_defined(s)
    _check_fits(s, n)
    out = np.empty(len(s))
    out[n - 1:] = s.values[n - 1:] - window_mean(s.values, n)
    return s.derive(out, n - 1, f"RemoveMA({n})")


def remove_ewma(s, alpha):
    """``y_t - EWMA_t(alpha)``; starts at exactly 0."""
    _require_defined(s)
    check_alpha(alpha)
    return s.derive(s.values - ewma_values(s.values, alpha), 0, f"RemoveEWMA({alpha:g})")


def remove_log_ma(s, n, policy=LogPolicy.STRICT):
    """``log(y_t) - log(MA_t(n))`` with the moving average taken on the raw values."""
    _require_defined(s)
    s = _positive_part(s, LogPolicy(policy))
    _check_fits(s, n)
    y = s.values
    out = np.empty(len(s))
    out[n - 1:] = np.log(y[n - 1:]) - np.log(window_mean(y, n))
    return s.derive(out, n - 1, f"RemoveLogMA({n})")


def difference(s, order=1):
    """First or second difference; adds `order` undefined leading entries."""
    if order not in (1, 2):
        raise ValueError(f"difference order must be 1 or 2, got {order}")
    if s.defined_len() <= order:
        raise TooShort(f"need more than {order} defined values to difference")
    out = np.empty(len(s))
    out[s.undefined + order:] = np.diff(s.defined, n=order)
    return s.derive(out, s.undefined + order, f"Diff({order})")


def apply(s, kind):
    """Dispatch a :class:`TransformKind`."""
    if isinstance(kind, Identity):
        return s
    if isinstance(kind, Log):
        return log_transform(s, kind.policy)
    if isinstance(kind, RemoveMA):
        return remove_ma(s, kind.window)
    if isinstance(kind, RemoveEWMA):
        return remove_ewma(s, kind.alpha)
    if isinstance(kind, RemoveLogMA):
        return remove_log_ma(s, kind.window, kind.policy)
    if isinstance(kind, Diff):
        return difference(s, kind.order)
    raise TypeError(f"not a transform kind: {kind!r}")
