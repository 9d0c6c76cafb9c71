"""Least squares via column-pivoted Householder QR.

The unit-root statistic is a t-ratio on the lagged level, a column that is
close to collinear with the constant for near-random-walk data. Forming
``X'X`` squares that condition number, so everything here is computed from
the triangular factor instead.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import RankDeficient, ShapeMismatch, TooShort

__all__ = ["DesignMatrix", "OlsFit", "ols_fit", "build_adf_design"]


@dataclass(frozen=True, eq=False)
class DesignMatrix:
    data: np.ndarray
    col_names: tuple

    def __post_init__(self):
        X = np.array(self.data, dtype=float)
        if X.ndim != 2:
            raise ShapeMismatch("design must be two-dimensional")
        m, k = X.shape
        if k < 1 or m < k:
            raise ShapeMismatch(f"need rows >= cols >= 1, got {m}x{k}")
        if len(self.col_names) != k:
            raise ShapeMismatch("one name per column required")
        if not np.all(np.isfinite(X)):
            raise ValueError("design entries must be finite")
        X.setflags(write=False)
        object.__setattr__(self, "data", X)
        object.__setattr__(self, "col_names", tuple(self.col_names))

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    def select(self, idx):
        """Sub-design keeping columns `idx` (in that order)."""
        idx = list(idx)
        return DesignMatrix(self.data[:, idx], tuple(self.col_names[i] for i in idx))

    def tail(self, m):
        """Sub-design keeping the last `m` rows."""
        return DesignMatrix(self.data[self.rows - m:], self.col_names)


@dataclass(frozen=True, eq=False)
class OlsFit:
    coef: np.ndarray
    stderr: np.ndarray
    tstat: np.ndarray
    residuals: np.ndarray
    rss: float
    sigma2: float
    nobs: int
    df_resid: int
    rank: int
    col_names: tuple = ()

    @property
    def k(self):
        return self.coef.size


def ols_fit(X, y, rcond=None):
    """Ordinary least squares fit of `y` on the columns of `X`.

    Parameters
    ----------
    X : DesignMatrix or array_like, shape (m, k)
    y : array_like, shape (m,)
    rcond : float, optional
        Relative threshold on ``|R_jj| / |R_00|`` below which a column counts
        as dependent. Defaults to ``max(m, k) * eps``.

    Returns
    -------
    OlsFit

    Raises
    ------
    ShapeMismatch
        If ``len(y) != m`` or ``m <= k``.
    RankDeficient
        If the numerical rank is below ``k``.
    """
    if not isinstance(X, DesignMatrix):
        A = np.asarray(X, dtype=float)
        X = DesignMatrix(A, tuple(f"x{j}" for j in range(A.shape[1] if A.ndim == 2 else 0)))
    A = X.data
    y = np.asarray(y, dtype=float)
    m, k = A.shape
    if y.shape != (m,):
        raise ShapeMismatch(f"targets have shape {y.shape}, expected ({m},)")
    if m <= k:
        raise ShapeMismatch(f"need more rows than columns, got {m}x{k}")

    Q, R, piv = scipy.linalg.qr(A, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    tol = (max(m, k) * np.finfo(float).eps if rcond is None else rcond) * diag[0]
    rank = int(np.count_nonzero(diag > tol))
    if rank < k:
        raise RankDeficient(rank, k)

    qty = Q.T @ y
    beta_p = scipy.linalg.solve_triangular(R, qty)
    fitted = Q @ qty
    resid = y - fitted
    rss = float(resid @ resid)
    df = m - k
    sigma2 = rss / df
    # diag((X'X)^-1) in pivoted order = squared row norms of R^-1
    Rinv = scipy.linalg.solve_triangular(R, np.eye(k))
    var_p = sigma2 * np.einsum("ij,ij->i", Rinv, Rinv)

    coef = np.empty(k)
    se = np.empty(k)
    coef[piv] = beta_p
    se[piv] = np.sqrt(var_p)
    with np.errstate(divide="ignore", invalid="ignore"):
        tstat = np.where(se > 0, coef / se, np.nan)
    return OlsFit(
        coef=coef,
        stderr=se,
        tstat=tstat,
        residuals=resid,
        rss=rss,
        sigma2=sigma2,
        nobs=m,
        df_resid=df,
        rank=rank,
        col_names=X.col_names,
    )


def build_adf_design(s, p):
    """Regressors and targets of the augmented Dickey-Fuller regression.

    With ``y_1..y_N`` the defined values of `s`, row ``t = p+2..N`` is::

        target  dy_t
        columns [y_{t-1}, dy_{t-1}, ..., dy_{t-p}, 1]

    so there are ``N - p - 1`` rows and ``p + 2`` columns. The level column
    comes first, making the unit-root t-ratio ``tstat[0]``.
    """
    y = np.asarray(s.defined if hasattr(s, "defined") else s, dtype=float)
    n = y.size
    if p < 0:
        raise ValueError("lag count must be non-negative")
    m = n - p - 1
    if m <= p + 2:
        raise TooShort(f"{n} values cannot support {p} lags ({m} rows for {p + 2} columns)")
    dy = np.diff(y)
    cols = [y[p: n - 1]]
    cols += [dy[p - j: n - 1 - j] for j in range(1, p + 1)]
    cols.append(np.ones(m))
    names = ("y_lag1",) + tuple(f"dy_lag{j}" for j in range(1, p + 1)) + ("const",)
    return DesignMatrix(np.column_stack(cols), names), dy[p:].copy()
