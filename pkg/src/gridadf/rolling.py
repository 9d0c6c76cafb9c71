"""Trailing-window moving average, moving standard deviation and EWMA.

Windows cover the current point and the ``n - 1`` points before it, so the
first ``n - 1`` outputs are undefined. Every window statistic is computed
on values shifted by the window's first element; constant windows therefore
give their constant and a zero deviation without rounding residue.
"""
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import BadAlpha, TooShort, WindowTooLarge, WindowTooSmall

__all__ = [
    "RollingConfig",
    "DEFAULT_WINDOW",
    "DEFAULT_ALPHA",
    "moving_average",
    "moving_std",
    "ewma",
    "window_mean",
    "window_std",
    "ewma_values",
]

DEFAULT_WINDOW = 30
DEFAULT_ALPHA = 0.05


@dataclass(frozen=True)
class RollingConfig:
    window: int = DEFAULT_WINDOW
    alpha: float = DEFAULT_ALPHA

    def __post_init__(self):
        check_window(self.window, minimum=2)
        check_alpha(self.alpha)


def check_window(n, minimum=1):
    if int(n) != n or n < minimum:
        raise WindowTooSmall(f"window must be an integer >= {minimum}, got {n}")


def check_alpha(alpha):
    if not 0.0 < alpha <= 1.0:
        raise BadAlpha(f"alpha must lie in (0, 1], got {alpha}")


def _require_defined(s):
    if s.undefined:
        raise TooShort("rolling statistics need a fully defined series; drop the undefined prefix first")


def window_mean(x, n):
    """Means of every length-`n` trailing window of `x` (``len(x) - n + 1`` values)."""
    w = sliding_window_view(np.asarray(x, dtype=float), n)
    base = w[:, 0]
    m = base + (w - base[:, None]).sum(axis=1) / n
    # the exact mean lies inside the window range; keep rounding from leaving it
    return np.clip(m, w.min(axis=1), w.max(axis=1))


def window_std(x, n):
    """Sample (ddof=1) standard deviations of every trailing window."""
    w = sliding_window_view(np.asarray(x, dtype=float), n)
    d = w - w[:, :1]
    dev = d - d.mean(axis=1, keepdims=True)
    # scale by the largest deviation so tiny spreads do not underflow to 0
    scale = np.abs(dev).max(axis=1)
    safe = np.where(scale > 0, scale, 1.0)
    u = dev / safe[:, None]
    return scale * np.sqrt((u * u).sum(axis=1) / (n - 1))


def ewma_values(x, alpha):
    """Recursion ``S_1 = y_1``, ``S_t = alpha*y_t + (1 - alpha)*S_{t-1}`` on a plain array."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    keep = 1.0 - alpha
    s = x[0]
    out[0] = s
    for t in range(1, x.size):
        s = alpha * x[t] + keep * s
        out[t] = s
    return out


def _windowed(s, n, minimum, fn, label):
    _require_defined(s)
    check_window(n, minimum)
    if n > len(s):
        raise WindowTooLarge(f"window {n} exceeds series length {len(s)}")
    out = np.empty(len(s))
    out[n - 1:] = fn(s.values, n)
    return s.derive(out, n - 1, f"{label}({n})")


def moving_average(s, n):
    """Trailing moving average; the first ``n - 1`` entries are undefined."""
    return _windowed(s, n, 1, window_mean, "MA")


def moving_std(s, n):
    """Trailing moving sample standard deviation (divides by ``n - 1``)."""
    return _windowed(s, n, 2, window_std, "Mstd")


def ewma(s, alpha):
    """Exponentially weighted moving average; defined everywhere."""
    _require_defined(s)
    check_alpha(alpha)
    return s.derive(ewma_values(s.values, alpha), 0, f"EWMA({alpha:g})")
