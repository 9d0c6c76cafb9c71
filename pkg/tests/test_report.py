import csv
import math

import numpy as np
import pytest

from gridadf.adf import AdfConfig, adf_test
from gridadf.dataset import extract_series, synthetic_dataset
from gridadf.errors import EmptyDataset, TooShort
from gridadf.report import (
    ROW_FIELDS,
    SERIES_ORDER,
    ReportRow,
    ReportTable,
    Skipped,
    emit,
    export_plot_series,
    flag_anomalies,
    load_report_json,
    run_report,
    verdict_counts,
)
from gridadf.dataset import ZoneDataset
from gridadf.series import Horizon, drop_undefined_prefix, make_series, resample
from gridadf.transforms import DEFAULT_TRANSFORMS, Diff, Identity, apply

from oracles import brute_ewma, brute_ma, brute_mstd

TWO_ZONES = ("ISONE CA", "Boston")


@pytest.fixture(scope="module")
def ar1_tables():
    return run_report(synthetic_dataset(kind="ar1", n_days=500, seed=3, zones=TWO_ZONES))


@pytest.fixture(scope="module")
def rw_data():
    return synthetic_dataset(kind="rw", n_days=600, seed=3, zones=TWO_ZONES)


class TestRunReport:
    def test_default_labels(self):
        labels = [k.label("RT Price") for k in DEFAULT_TRANSFORMS]
        assert labels == [
            "RT Price",
            "Log RT Price",
            "Removed MA RT Price",
            "Removed Exp WMA RT Price",
            "First Diff RT Price",
            "Second Diff RT Price",
            "Removed Log MA RT Price",
        ]

    def test_stationary_dataset(self, ar1_tables):
        assert list(ar1_tables) == list(TWO_ZONES)
        counts = verdict_counts(ar1_tables)
        assert counts == {"Stationary": 2 * 4 * 7, "NonStationary": 0}

    def test_every_cell_once(self, ar1_tables):
        for zone, table in ar1_tables.items():
            seen = [r.series_label for r in table.rows] + [s.series_label for s in table.skipped]
            expected = [k.label(f"{m.value} {v.value}") for m, v in SERIES_ORDER for k in DEFAULT_TRANSFORMS]
            assert seen == expected
            assert table.title == f"{zone} DATA"

    def test_random_walk_dataset(self, rw_data):
        tables = run_report(rw_data, transforms=(Identity(), Diff(1)))
        for table in tables.values():
            level = [r.verdict for r in table.rows if not r.series_label.startswith("First Diff")]
            diffed = [r.verdict for r in table.rows if r.series_label.startswith("First Diff")]
            assert level.count("NonStationary") >= 3
            assert diffed == ["Stationary"] * 4

    def test_row_bookkeeping_matches_series(self, rw_data):
        tables = run_report(rw_data, transforms=(Diff(2),))
        row = tables["Boston"].rows[0]
        s = resample(extract_series(rw_data, "Boston", SERIES_ORDER[0][1], SERIES_ORDER[0][0]), Horizon.DAILY)
        t = drop_undefined_prefix(apply(s, Diff(2)))
        assert row.nobs + row.lags_used + 1 == len(t)
        direct = adf_test(t)
        assert (row.statistic, row.pvalue) == (direct.statistic, direct.pvalue)

    def test_short_series_skipped(self):
        d = synthetic_dataset(n_days=12, zones=("Boston",))
        table = run_report(d, horizon="weekly")["Boston"]
        assert not table.rows
        assert len(table.skipped) == 28
        assert {s.reason.split(":")[0] for s in table.skipped} == {"TooShort", "WindowTooLarge"}

    def test_log_fallback_note(self):
        d = synthetic_dataset(n_days=400, zones=("Boston",), seed=5)
        price = d.zones["Boston"].columns["rt_price"]
        price[:48] = -5.0
        table = run_report(d, transforms=DEFAULT_TRANSFORMS[1:2])["Boston"]
        assert len(table.rows) == 4
        assert len(table.notes) == 1 and "Log RT Price" in table.notes[0]
        strict = run_report(d, transforms=DEFAULT_TRANSFORMS[1:2], log_fallback=False)["Boston"]
        assert [s.series_label for s in strict.skipped] == ["Log RT Price"]

    def test_jobs_do_not_change_output(self, rw_data):
        cfg = AdfConfig(maxlag=6)
        assert run_report(rw_data, cfg=cfg, jobs=1) == run_report(rw_data, cfg=cfg, jobs=2)

    def test_empty(self):
        with pytest.raises(EmptyDataset):
            run_report(ZoneDataset({}))


def _table():
    row = ReportRow("ISONE CA", "RT Price", -3.530843502, 0.007229413, 25, 1771,
                    -3.4340478, -2.863173373, -2.567639557, "Stationary")
    return ReportTable("ISONE CA", [row], [Skipped("ISONE CA", "Log RT Price", "NonpositiveValue: x")], ["a note"])


class TestEmit:
    def test_csv(self, tmp_path):
        path = tmp_path / "r.csv"
        emit({"ISONE CA": _table()}, "csv", path)
        lines = path.read_text().splitlines()
        assert lines[0] == ",".join(ROW_FIELDS)
        assert len(lines) == 2
        assert lines[1].startswith("ISONE CA,RT Price,-3.530843502,0.007229413,25,1771,")
        skipped = list(csv.reader(open(tmp_path / "r.skipped.csv")))
        assert skipped == [["zone", "series_label", "reason"], ["ISONE CA", "Log RT Price", "NonpositiveValue: x"]]

    def test_json_round_trip(self, tmp_path, ar1_tables):
        path = tmp_path / "r.json"
        emit(ar1_tables, "json", path)
        assert load_report_json(path) == ar1_tables

    def test_markdown(self, tmp_path):
        path = tmp_path / "r.md"
        emit(_table(), "md", path)
        text = path.read_text()
        assert text.startswith("## ISONE CA DATA\n")
        assert "| RT Price | -3.530843502 | 0.007229413 | 25 | 1771 |" in text
        assert "- Log RT Price: NonpositiveValue: x" in text

    def test_unknown_format(self, tmp_path):
        with pytest.raises(ValueError):
            emit(_table(), "xml", tmp_path / "x")


def _read_plot(path):
    rows = list(csv.reader(open(path)))
    assert rows[0] == ["time", "value", "ma", "ewma", "mstd"]
    return rows[1:]


class TestPlotExport:
    def test_constant(self, tmp_path):
        path = tmp_path / "p.csv"
        export_plot_series(make_series([5.0] * 40), path, window=10, alpha=0.2)
        rows = _read_plot(path)
        assert len(rows) == 40
        for i, (_, v, ma, ew, sd) in enumerate(rows):
            assert float(v) == 5.0 and float(ew) == 5.0
            if i < 9:
                assert ma == "" and sd == ""
            else:
                assert float(ma) == 5.0 and float(sd) == 0.0

    def test_matches_oracle(self, tmp_path, rng):
        y = np.cumsum(rng.normal(size=120)) + 50
        path = tmp_path / "p.csv"
        export_plot_series(make_series(y), path, window=12, alpha=0.1)
        rows = _read_plot(path)
        got = np.array([[float(c) if c else np.nan for c in r[1:]] for r in rows])
        np.testing.assert_array_equal(got[:, 0], y)
        np.testing.assert_allclose(got[:, 1], brute_ma(y, 12), rtol=1e-12)
        np.testing.assert_allclose(got[:, 2], brute_ewma(y, 0.1), rtol=1e-10)
        np.testing.assert_allclose(got[:, 3], brute_mstd(y, 12), rtol=1e-9)
        assert rows[0][0] == "2000-01-01T00:00:00Z"
        assert rows[1][0] == "2000-01-01T01:00:00Z"

    def test_defined_part_only(self, tmp_path, rng):
        s = drop_undefined_prefix(apply(make_series(rng.normal(size=50)), Diff(1)))
        path = tmp_path / "p.csv"
        export_plot_series(s, path, window=5)
        rows = _read_plot(path)
        assert len(rows) == 49
        assert rows[0][0] == "2000-01-01T01:00:00Z"

    def test_window_too_large(self, tmp_path):
        with pytest.raises(TooShort):
            export_plot_series(make_series([1.0, 2.0, 3.0]), tmp_path / "p.csv", window=5)


class TestAnomalies:
    def test_spike_flagged(self, rng):
        y = rng.normal(size=500)
        y[300] += 10.0
        flags = flag_anomalies(make_series(y), window=30, threshold=4.0)
        assert 300 in [int((f.timestamp.timestamp() - 946684800) // 3600) for f in flags]
        hit = next(f for f in flags if f.zscore > 8)
        assert hit.threshold == 4.0

    def test_clean_noise_quiet(self, rng):
        assert flag_anomalies(make_series(rng.normal(size=2000)), window=30, threshold=10.0) == []

    def test_zero_spread_never_flags(self):
        y = np.zeros(100)
        y[60] = 1e6
        assert flag_anomalies(make_series(y), window=30, threshold=4.0) == []

    def test_too_short(self):
        with pytest.raises(TooShort):
            flag_anomalies(make_series(np.arange(30.0)), window=30)

    def test_baseline_excludes_point(self):
        y = np.array([0.0, 1.0] * 20 + [100.0])
        flags = flag_anomalies(make_series(y), window=10, threshold=4.0)
        assert len(flags) == 1
        expected = (100.0 - 0.5) / np.std([0.0, 1.0] * 5, ddof=1)
        assert flags[0].zscore == pytest.approx(expected)

    @pytest.mark.slow
    def test_false_positive_rate(self):
        quiet = sum(
            not flag_anomalies(make_series(np.random.default_rng(seed).normal(size=2000)), 30, 6.0)
            for seed in range(100)
        )
        assert quiet >= 99
        assert math.isfinite(quiet)
