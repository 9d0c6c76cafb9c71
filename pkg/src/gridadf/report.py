"""Batch ADF reports over a zone dataset, plot exports and anomaly flags.

:func:`run_report` walks zone x market x variable x transform, and every
combination ends up exactly once in its zone's table, either as a
:class:`ReportRow` or as a :class:`Skipped` entry carrying the reason.
"""
from __future__ import annotations

import csv
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from datetime import datetime

import numpy as np

from .adf import AdfConfig, Verdict, adf_test, verdict
from .errors import EmptyDataset, GridAdfError, NonpositiveValue, TooShort
from .rolling import DEFAULT_ALPHA, DEFAULT_WINDOW, ewma_values, window_mean, window_std
from .series import Horizon, Market, Variable, drop_undefined_prefix, resample
from .transforms import DEFAULT_TRANSFORMS, LogPolicy, Log, RemoveLogMA, apply
from .dataset import extract_series

__all__ = [
    "ReportRow",
    "Skipped",
    "ReportTable",
    "AnomalyFlag",
    "SERIES_ORDER",
    "run_report",
    "emit",
    "load_report_json",
    "export_plot_series",
    "flag_anomalies",
]

log = logging.getLogger(__name__)

#: (market, variable) pairs in report order
SERIES_ORDER = (
    (Market.REAL_TIME, Variable.PRICE),
    (Market.REAL_TIME, Variable.DEMAND),
    (Market.DAY_AHEAD, Variable.PRICE),
    (Market.DAY_AHEAD, Variable.DEMAND),
)


@dataclass(frozen=True)
class ReportRow:
    zone: str
    series_label: str
    statistic: float
    pvalue: float
    lags_used: int
    nobs: int
    cv1: float
    cv5: float
    cv10: float
    verdict: str


ROW_FIELDS = tuple(f.name for f in fields(ReportRow))


@dataclass(frozen=True)
class Skipped:
    zone: str
    series_label: str
    reason: str


@dataclass
class ReportTable:
    zone: str
    rows: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def title(self):
        return f"{self.zone} DATA"


# --- report ---------------------------------------------------------------


def _with_policy(kind, policy):
    if isinstance(kind, (Log, RemoveLogMA)):
        return replace(kind, policy=policy)
    return kind


def _row_task(args):
    """Run one (series, transform) cell. Top-level so worker processes can import it."""
    series, kind, cfg, log_fallback = args
    zone = series.meta.zone
    label = kind.label(series.meta.base_label)
    note = None
    try:
        try:
            transformed = apply(series, kind)
        except NonpositiveValue as exc:
            if not (log_fallback and isinstance(kind, (Log, RemoveLogMA))):
                raise
            transformed = apply(series, _with_policy(kind, LogPolicy.DROP_NONPOSITIVE))
            note = (
                f"{label}: {exc}; kept the positive suffix, "
                f"dropped {transformed.dropped} leading sample(s)"
            )
        clean = drop_undefined_prefix(transformed)
        res = adf_test(clean, cfg)
    except GridAdfError as exc:
        return Skipped(zone, label, f"{type(exc).__name__}: {exc}"), note
    row = ReportRow(
        zone=zone,
        series_label=label,
        statistic=res.statistic,
        pvalue=res.pvalue,
        lags_used=res.lags_used,
        nobs=res.nobs,
        cv1=res.critical.cv1,
        cv5=res.critical.cv5,
        cv10=res.critical.cv10,
        verdict=verdict(res, cfg.significance).value,
    )
    return row, note


def run_report(
    d,
    horizon=Horizon.DAILY,
    transforms=DEFAULT_TRANSFORMS,
    cfg=None,
    *,
    jobs=1,
    log_fallback=True,
    series_order=SERIES_ORDER,
):
    """ADF table per zone for every series and transform.

    Parameters
    ----------
    d : ZoneDataset
    horizon : Horizon
        Each hourly series is averaged to this horizon before transforming.
    transforms : sequence of TransformKind
    cfg : AdfConfig
    jobs : int
        Worker processes; output does not depend on it.
    log_fallback : bool
        Retry log transforms that hit a value <= 0 with
        ``LogPolicy.DROP_NONPOSITIVE`` (logged and noted in the table)
        instead of skipping the row.

    Returns
    -------
    dict
        zone -> :class:`ReportTable`, in dataset zone order.
    """
    if not d.zones:
        raise EmptyDataset("dataset has no zones")
    cfg = cfg or AdfConfig()
    horizon = Horizon(horizon)
    tasks = []
    tables = {}
    pre_skips = []
    for zone in d.zones:
        tables[zone] = ReportTable(zone)
        for market, variable in series_order:
            raw = extract_series(d, zone, variable, market)
            try:
                s = resample(raw, horizon)
            except GridAdfError as exc:
                for kind in transforms:
                    pre_skips.append(Skipped(zone, kind.label(raw.meta.base_label), str(exc)))
                continue
            tasks.extend((s, kind, cfg, log_fallback) for kind in transforms)

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_row_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_row_task(t) for t in tasks]

    for skip in pre_skips:
        tables[skip.zone].skipped.append(skip)
    for item, note in results:
        table = tables[item.zone]
        if note:
            log.warning("%s: %s", item.zone, note)
            table.notes.append(note)
        if isinstance(item, Skipped):
            log.warning("%s: skipped %s (%s)", item.zone, item.series_label, item.reason)
            table.skipped.append(item)
        else:
            table.rows.append(item)
    return tables


# --- emission -------------------------------------------------------------


def _tables(tables):
    if isinstance(tables, ReportTable):
        return [tables]
    if isinstance(tables, dict):
        return list(tables.values())
    return list(tables)


def _md_num(v):
    return f"{v:.10g}"


def _markdown(tables):
    head = ("Series", "Test Statistic", "P-Value", "#Lags Used", "Observations",
            "CV*(1%)", "CV*(5%)", "CV*(10%)", "Verdict")
    out = []
    for t in tables:
        out.append(f"## {t.title}\n")
        out.append("| " + " | ".join(head) + " |")
        out.append("|" + "|".join("---" for _ in head) + "|")
        for r in t.rows:
            cells = (r.series_label, _md_num(r.statistic), _md_num(r.pvalue), str(r.lags_used),
                     str(r.nobs), _md_num(r.cv1), _md_num(r.cv5), _md_num(r.cv10), r.verdict)
            out.append("| " + " | ".join(cells) + " |")
        if t.skipped:
            out.append("\nSkipped:\n")
            out += [f"- {s.series_label}: {s.reason}" for s in t.skipped]
        if t.notes:
            out.append("\nNotes:\n")
            out += [f"- {n}" for n in t.notes]
        out.append("")
    return "\n".join(out)


def emit(tables, fmt, path):
    """Write report tables as ``csv``, ``json`` or ``markdown``/``md``.

    CSV columns follow :class:`ReportRow` field order; skipped cells go to a
    sibling ``<name>.skipped.csv`` (zone, series_label, reason).
    """
    tables = _tables(tables)
    fmt = {"md": "markdown"}.get(fmt, fmt)
    path = str(path)
    if fmt == "csv":
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(ROW_FIELDS)
            for t in tables:
                for r in t.rows:
                    w.writerow([repr(v) if isinstance(v, float) else v for v in astuple_row(r)])
        skipped = [s for t in tables for s in t.skipped]
        if skipped:
            stem = path[:-4] if path.endswith(".csv") else path
            with open(stem + ".skipped.csv", "w", newline="", encoding="utf-8") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(("zone", "series_label", "reason"))
                w.writerows((s.zone, s.series_label, s.reason) for s in skipped)
    elif fmt == "json":
        doc = [
            {
                "zone": t.zone,
                "title": t.title,
                "rows": [asdict(r) for r in t.rows],
                "skipped": [asdict(s) for s in t.skipped],
                "notes": list(t.notes),
            }
            for t in tables
        ]
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    elif fmt == "markdown":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(_markdown(tables))
    else:
        raise ValueError(f"unknown format {fmt!r}; use csv, json or markdown")


def astuple_row(r):
    return tuple(getattr(r, name) for name in ROW_FIELDS)


def load_report_json(path):
    """Inverse of ``emit(..., "json", path)``."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return {
        t["zone"]: ReportTable(
            zone=t["zone"],
            rows=[ReportRow(**r) for r in t["rows"]],
            skipped=[Skipped(**s) for s in t["skipped"]],
            notes=list(t["notes"]),
        )
        for t in doc
    }


# --- plot export ----------------------------------------------------------


def _iso(ts):
    return ts.strftime("%Y-%m-%dT%H:%M:%SZ")


def plot_columns(s, window=DEFAULT_WINDOW, alpha=DEFAULT_ALPHA):
    """``(value, ma, ewma, mstd)`` arrays for the defined part of `s`; NaN marks warm-up."""
    y = s.defined
    if not 2 <= window <= y.size:
        raise TooShort(f"window {window} does not fit {y.size} values")
    ma = np.full(y.size, np.nan)
    mstd = np.full(y.size, np.nan)
    ma[window - 1:] = window_mean(y, window)
    mstd[window - 1:] = window_std(y, window)
    return y, ma, ewma_values(y, alpha), mstd


def export_plot_series(s, path, window=DEFAULT_WINDOW, alpha=DEFAULT_ALPHA):
    """Write ``time,value,ma,ewma,mstd``; warm-up cells are left empty."""
    cols = plot_columns(s, window, alpha)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("time", "value", "ma", "ewma", "mstd"))
        for i, vals in enumerate(zip(*cols)):
            stamp = _iso(s.time_at(s.undefined + i))
            w.writerow([stamp] + ["" if np.isnan(v) else repr(float(v)) for v in vals])


# --- anomaly flags --------------------------------------------------------


@dataclass(frozen=True)
class AnomalyFlag:
    timestamp: datetime
    zone: str
    series_label: str
    zscore: float
    threshold: float


def anomaly_scores(y, window):
    """z-scores of ``y[t]`` against the ``window`` values strictly before t.

    Returns an array aligned with ``y``; the first ``window`` entries and
    entries whose baseline has zero spread are NaN.
    """
    y = np.asarray(y, dtype=float)
    z = np.full(y.size, np.nan)
    mu = window_mean(y[:-1], window)
    sd = window_std(y[:-1], window)
    with np.errstate(divide="ignore", invalid="ignore"):
        score = (y[window:] - mu) / sd
    score[sd <= 0] = np.nan
    z[window:] = score
    return z


def flag_anomalies(s, window=DEFAULT_WINDOW, threshold=4.0):
    """Flag points that sit more than `threshold` baseline deviations away.

    The baseline is the mean and sample standard deviation of the
    preceding `window` points, excluding the point itself, so a spike
    cannot inflate its own reference. Points with a zero-spread baseline
    are never flagged.
    """
    y = s.defined
    if window < 2:
        raise ValueError("window must be >= 2")
    if y.size <= window:
        raise TooShort(f"need more than {window} defined values, got {y.size}")
    z = anomaly_scores(y, window)
    label = s.meta.transform_label or s.meta.base_label
    hits = np.flatnonzero(np.abs(np.nan_to_num(z, nan=0.0)) > threshold)
    return [
        AnomalyFlag(s.time_at(s.undefined + int(i)), s.meta.zone, label, float(z[i]), float(threshold))
        for i in hits
    ]


def verdict_counts(tables):
    """``{verdict: count}`` across all rows; handy for quick summaries."""
    counts = {v.value: 0 for v in Verdict}
    for t in _tables(tables):
        for r in t.rows:
            counts[r.verdict] += 1
    return counts
