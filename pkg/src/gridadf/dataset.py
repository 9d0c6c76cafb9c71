"""Zone-level market data in a long-format CSV, plus a synthetic fixture builder.

File layout (UTF-8, LF line endings, one hourly record per line)::

    timestamp,zone,da_demand,da_price,rt_demand,rt_price
    2016-01-01T00:00:00Z,ISONE CA,13402.5,41.2,13377.9,39.85

Demands are MWh and must be non-negative; prices are $/MWh and may be
negative. Each zone must cover a contiguous run of hours.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from .errors import DuplicateTimestamp, GapError, ParseError, UnknownZone
from .series import (
    ZONES,
    Horizon,
    Market,
    SeriesMeta,
    Variable,
    gen_ar1,
    gen_random_walk,
    gen_trend,
    make_series,
)

__all__ = [
    "HEADER",
    "ZoneRecord",
    "ZoneFrame",
    "ZoneDataset",
    "ValidationReport",
    "load_csv",
    "write_fixture",
    "extract_series",
    "synthetic_dataset",
]

HEADER = ("timestamp", "zone", "da_demand", "da_price", "rt_demand", "rt_price")
VALUE_COLUMNS = HEADER[2:]
HOUR = np.timedelta64(3600, "s")

_COLUMN = {
    (Variable.DEMAND, Market.DAY_AHEAD): "da_demand",
    (Variable.PRICE, Market.DAY_AHEAD): "da_price",
    (Variable.DEMAND, Market.REAL_TIME): "rt_demand",
    (Variable.PRICE, Market.REAL_TIME): "rt_price",
}


@dataclass(frozen=True)
class ZoneRecord:
    timestamp: datetime
    zone: str
    da_demand: float
    da_price: float
    rt_demand: float
    rt_price: float


@dataclass(frozen=True, eq=False)
class ZoneFrame:
    """Columnar records of one zone, sorted by time."""

    timestamps: np.ndarray  # datetime64[s], UTC
    columns: dict  # column name -> float array

    def __len__(self):
        return self.timestamps.size

    def records(self, zone):
        for i, ts in enumerate(self.timestamps):
            stamp = ts.astype(datetime).replace(tzinfo=timezone.utc)
            yield ZoneRecord(stamp, zone, *(float(self.columns[c][i]) for c in VALUE_COLUMNS))

    def equals(self, other):
        return np.array_equal(self.timestamps, other.timestamps) and all(
            np.array_equal(self.columns[c], other.columns[c]) for c in VALUE_COLUMNS
        )


@dataclass
class ValidationReport:
    rows: int = 0
    rows_per_zone: dict = field(default_factory=dict)
    unknown_zones: list = field(default_factory=list)
    gaps: list = field(default_factory=list)  # (zone, first missing timestamp)
    reordered_zones: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.gaps

    def lines(self):
        out = [f"rows: {self.rows}"]
        out += [f"  {z}: {n}" for z, n in self.rows_per_zone.items()]
        if self.unknown_zones:
            out.append("unknown zones: " + ", ".join(self.unknown_zones))
        if self.reordered_zones:
            out.append("sorted out-of-order rows in: " + ", ".join(self.reordered_zones))
        for zone, ts in self.gaps:
            out.append(f"gap in {zone}: first missing hour {ts}")
        return out


@dataclass(eq=False)
class ZoneDataset:
    zones: dict  # zone name -> ZoneFrame, insertion ordered
    validation: ValidationReport = field(default_factory=ValidationReport)

    def __len__(self):
        return len(self.zones)

    def records(self, zone):
        return list(self.zones[zone].records(zone))

    def equals(self, other):
        return list(self.zones) == list(other.zones) and all(
            self.zones[z].equals(other.zones[z]) for z in self.zones
        )


def _format_ts(ts):
    return np.datetime_as_string(ts, unit="s") + "Z"


def _parse_float(text, line, column):
    try:
        v = float(text)
    except ValueError:
        raise ParseError(line, column, f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise ParseError(line, column, f"non-finite value: {text!r}")
    return v


def _parse_timestamp(text, line):
    # YYYY-MM-DDTHH:00:00Z
    if len(text) != 20 or text[10] != "T" or not text.endswith(":00:00Z"):
        raise ParseError(line, "timestamp", f"expected YYYY-MM-DDTHH:00:00Z, got {text!r}")
    try:
        return np.datetime64(text[:-1], "s")
    except ValueError:
        raise ParseError(line, "timestamp", f"invalid timestamp {text!r}") from None


def load_csv(path, strict=True):
    """Read and validate a zone dataset.

    Rows are grouped by zone (in order of first appearance) and sorted by
    time. With ``strict=False`` hourly gaps are recorded in
    ``dataset.validation.gaps`` instead of raising.

    Raises
    ------
    ParseError
        Malformed header, field count, timestamp or number, or a negative demand.
    DuplicateTimestamp
        A zone has two rows for the same hour.
    GapError
        A zone skips an hour (strict mode).
    """
    return _assemble(*_parse(path), strict=strict)


def _parse(path):
    stamps = {}
    values = {}
    rows = 0
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(1, "", "empty file, header row missing") from None
        header = [h.strip() for h in header]
        if tuple(header) != HEADER:
            raise ParseError(1, "", f"header must be {','.join(HEADER)}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(HEADER):
                raise ParseError(lineno, "", f"expected {len(HEADER)} fields, got {len(row)}")
            ts = _parse_timestamp(row[0].strip(), lineno)
            zone = row[1].strip()
            if not zone:
                raise ParseError(lineno, "zone", "empty zone name")
            nums = [_parse_float(row[j], lineno, HEADER[j]) for j in range(2, 6)]
            if nums[0] < 0 or nums[2] < 0:
                col = "da_demand" if nums[0] < 0 else "rt_demand"
                raise ParseError(lineno, col, "demand must be non-negative")
            if zone not in stamps:
                stamps[zone] = []
                values[zone] = []
            stamps[zone].append(ts)
            values[zone].append(nums)
            rows += 1
    return stamps, values, rows


def _assemble(stamps, values, rows, strict):
    report = ValidationReport(rows=rows)
    zones = {}
    for zone, ts_list in stamps.items():
        ts = np.asarray(ts_list, dtype="datetime64[s]")
        vals = np.asarray(values[zone], dtype=float).reshape(-1, len(VALUE_COLUMNS))
        if np.any(ts[1:] < ts[:-1]):
            order = np.argsort(ts, kind="stable")
            ts, vals = ts[order], vals[order]
            report.reordered_zones.append(zone)
        step = np.diff(ts)
        dup = np.flatnonzero(step == np.timedelta64(0, "s"))
        if dup.size:
            raise DuplicateTimestamp(zone, _format_ts(ts[dup[0]]))
        gap = np.flatnonzero(step != HOUR)
        if gap.size:
            missing = _format_ts(ts[gap[0]] + HOUR)
            if strict:
                raise GapError(zone, missing)
            report.gaps.append((zone, missing))
        zones[zone] = ZoneFrame(ts, {c: vals[:, j].copy() for j, c in enumerate(VALUE_COLUMNS)})
        report.rows_per_zone[zone] = ts.size
        if zone not in ZONES:
            report.unknown_zones.append(zone)
    return ZoneDataset(zones, report)


def write_fixture(d, path):
    """Write `d` in the CSV schema; values use shortest round-trip repr."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(",".join(HEADER) + "\n")
        for zone, frame in d.zones.items():
            stamps = [_format_ts(t) for t in frame.timestamps]
            cols = [frame.columns[c].tolist() for c in VALUE_COLUMNS]
            fh.writelines(
                f"{ts},{zone},{a!r},{b!r},{c!r},{e!r}\n"
                for ts, a, b, c, e in zip(stamps, *cols)
            )


def extract_series(d, zone, variable, market):
    """Hourly series of one (zone, variable, market) column."""
    if zone not in d.zones:
        raise UnknownZone(f"zone {zone!r} not in dataset (have: {', '.join(d.zones)})")
    variable, market = Variable(variable), Market(market)
    frame = d.zones[zone]
    start = frame.timestamps[0].astype(datetime).replace(tzinfo=timezone.utc)
    meta = SeriesMeta(zone=zone, variable=variable, market=market, horizon=Horizon.HOURLY)
    return make_series(frame.columns[_COLUMN[variable, market]], meta, start, Horizon.HOURLY)


# --- synthetic fixture --------------------------------------------------------

# (level, daily scale, hourly profile amplitude, hourly noise) per column
_LEVELS = {
    "da_demand": (1500.0, 60.0, 250.0, 10.0),
    "rt_demand": (1500.0, 60.0, 250.0, 15.0),
    "da_price": (40.0, 4.0, 6.0, 0.5),
    "rt_price": (40.0, 4.0, 8.0, 1.5),
}

_START = np.datetime64("2016-01-01T00:00:00", "s")


def synthetic_dataset(kind="ar1", n_days=1797, seed=0, zones=ZONES, phi=0.3, start=_START):
    """Nine-zone hourly dataset whose daily means follow a chosen process.

    Each (zone, column) gets a daily process of `n_days` values, from
    ``gen_ar1(phi)`` (``kind="ar1"``), a driftless ``gen_random_walk``
    (``"rw"``) or ``gen_trend`` (``"trend"``), scaled to a plausible level
    for that column. Hours add a zero-mean daily load shape and small
    Gaussian noise. Zone k uses a level factor ``1 + k/4`` (ISONE CA, the
    system-wide zone, gets 8x).
    """
    if kind not in ("ar1", "rw", "trend"):
        raise ValueError(f"unknown kind {kind!r}; use ar1, rw or trend")
    hours = np.arange(24)
    shape = np.sin(2 * np.pi * (hours - 9) / 24)  # zero mean over the day
    ts = np.datetime64(start, "s") + np.arange(n_days * 24) * HOUR
    root = np.random.SeedSequence(seed)
    frames = {}
    for zi, (zone, child) in enumerate(zip(zones, root.spawn(len(zones)))):
        factor = 8.0 if zone == "ISONE CA" else 1.0 + zi / 4.0
        cols = {}
        for ci, sub in enumerate(child.spawn(len(VALUE_COLUMNS))):
            col = VALUE_COLUMNS[ci]
            level, scale, amp, noise = _LEVELS[col]
            if col.endswith("demand"):
                level, scale, amp, noise = (v * factor for v in (level, scale, amp, noise))
            proc_seed, hour_seed = (int(x) for x in sub.generate_state(2))
            if kind == "ar1":
                daily = gen_ar1(n_days, 0.0, phi, 1.0, proc_seed).values
            elif kind == "rw":
                daily = gen_random_walk(n_days, 0.0, 0.25, proc_seed).values
            else:
                daily = gen_trend(n_days, 0.0, 0.002, 1.0, proc_seed).values
            hourly = np.repeat(level + scale * daily, 24) + np.tile(amp * shape, n_days)
            hourly += noise * np.random.Generator(np.random.PCG64(hour_seed)).standard_normal(hourly.size)
            if col.endswith("demand"):
                hourly = np.maximum(hourly, 0.0)
            cols[col] = np.round(hourly, 3)
        frames[zone] = ZoneFrame(ts.copy(), cols)
    report = ValidationReport(
        rows=len(zones) * ts.size, rows_per_zone={z: ts.size for z in zones}
    )
    return ZoneDataset(frames, report)
