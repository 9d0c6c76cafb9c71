"""Command line entry point: ``gridadf <subcommand> ...``.

Exit codes: 0 success, 1 data/validation error, 2 usage error.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys

from . import __version__
from .adf import AdfConfig, AicVariant, adf_test, verdict
from .dataset import extract_series, load_csv, synthetic_dataset, write_fixture
from .errors import GridAdfError
from .report import emit, export_plot_series, flag_anomalies, run_report
from .rolling import DEFAULT_ALPHA, DEFAULT_WINDOW
from .series import Horizon, Market, Variable, drop_undefined_prefix, resample
from .transforms import apply, default_transforms, parse_transform

log = logging.getLogger("gridadf")

_MARKETS = {"rt": Market.REAL_TIME, "da": Market.DAY_AHEAD}
_VARIABLES = {"price": Variable.PRICE, "demand": Variable.DEMAND}
_HORIZONS = [h.value for h in Horizon]
_EXT = {"csv": "csv", "json": "json", "md": "md", "markdown": "md"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _series_args(p, horizon="daily"):
    p.add_argument("csv", help="dataset CSV (timestamp,zone,da_demand,da_price,rt_demand,rt_price)")
    p.add_argument("--zone", required=True, help="zone name, e.g. 'ISONE CA'")
    p.add_argument("--market", choices=sorted(_MARKETS), default="rt")
    p.add_argument("--variable", choices=sorted(_VARIABLES), default="price")
    p.add_argument("--horizon", choices=_HORIZONS, default=horizon)


def _adf_args(p):
    p.add_argument("--maxlag", type=int, default=None,
                   help="largest lag tried by AIC (default: ceil(12*(N/100)^0.25))")
    p.add_argument("--lags", type=int, default=None, help="fix the lag instead of selecting it")
    p.add_argument("--alpha", type=float, default=0.05, help="significance level for the verdict")
    p.add_argument("--aic", choices=[v.value for v in AicVariant], default="standard",
                   help="information criterion for lag selection")


def build_parser():
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = _Parser(prog="gridadf", description=__doc__.splitlines()[0], formatter_class=fmt)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log warnings and progress")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check a dataset CSV", formatter_class=fmt)
    p.add_argument("csv")

    p = sub.add_parser("report", help="ADF tables for every zone", formatter_class=fmt)
    p.add_argument("csv")
    p.add_argument("--horizon", choices=_HORIZONS, default="daily")
    p.add_argument("--format", choices=sorted(_EXT), default="md")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW, help="moving-average window")
    p.add_argument("--ewma-alpha", type=float, default=DEFAULT_ALPHA, help="EWMA smoothing factor")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--no-log-fallback", action="store_true",
                   help="skip log rows with values <= 0 instead of truncating to the positive suffix")
    _adf_args(p)

    p = sub.add_parser("adf", help="ADF test on one series", formatter_class=fmt)
    _series_args(p)
    p.add_argument("--transform", default="identity",
                   help="identity, log, remove_ma[:N], remove_ewma[:A], diff1, diff2, remove_log_ma[:N]")
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p.add_argument("--ewma-alpha", type=float, default=DEFAULT_ALPHA)
    _adf_args(p)

    p = sub.add_parser("plot-data", help="export value/MA/EWMA/Mstd columns", formatter_class=fmt)
    _series_args(p)
    p.add_argument("--transform", default="identity")
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p.add_argument("--ewma-alpha", type=float, default=DEFAULT_ALPHA)
    p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("anomaly", help="flag points far from their trailing baseline",
                       formatter_class=fmt)
    _series_args(p, horizon="hourly")
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p.add_argument("--threshold", type=float, default=4.0, help="|z| above which a point is flagged")
    p.add_argument("--out", default=None, help="write flags as CSV here instead of stdout")

    p = sub.add_parser("synth", help="write a synthetic nine-zone dataset", formatter_class=fmt)
    p.add_argument("--kind", choices=["rw", "ar1", "trend"], default="ar1")
    p.add_argument("--n", type=int, default=1797, help="days per zone")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--phi", type=float, default=0.3, help="AR(1) coefficient for --kind ar1")
    p.add_argument("--out", required=True)
    return parser


def _cfg(args):
    return AdfConfig(
        maxlag=args.maxlag,
        lags=args.lags,
        aic_variant=AicVariant(args.aic),
        significance=args.alpha,
    )


def _load_series(args):
    d = load_csv(args.csv)
    s = extract_series(d, args.zone, _VARIABLES[args.variable], _MARKETS[args.market])
    return resample(s, Horizon(args.horizon))


def _cmd_validate(args):
    d = load_csv(args.csv, strict=False)
    for line in d.validation.lines():
        print(line)
    return 0 if d.validation.ok else 1


def _cmd_report(args):
    d = load_csv(args.csv)
    tables = run_report(
        d,
        horizon=Horizon(args.horizon),
        transforms=default_transforms(args.window, args.ewma_alpha),
        cfg=_cfg(args),
        jobs=args.jobs,
        log_fallback=not args.no_log_fallback,
    )
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, f"report.{_EXT[args.format]}")
    emit(tables, args.format, path)
    print(path)
    return 0


def _cmd_adf(args):
    s = _load_series(args)
    kind = parse_transform(args.transform, args.window, args.ewma_alpha)
    cfg = _cfg(args)
    r = adf_test(drop_undefined_prefix(apply(s, kind)), cfg)
    print(f"series:         {args.zone} / {kind.label(s.meta.base_label)} ({args.horizon})")
    print(f"test statistic: {r.statistic!r}")
    print(f"p-value:        {r.pvalue!r}")
    print(f"lags used:      {r.lags_used}")
    print(f"observations:   {r.nobs}")
    for level, cv in r.critical.as_dict().items():
        print(f"CV({level}):".ljust(16) + repr(cv))
    print(f"verdict:        {verdict(r, cfg.significance).value} at alpha={cfg.significance:g}")
    return 0


def _cmd_plot_data(args):
    s = _load_series(args)
    kind = parse_transform(args.transform, args.window, args.ewma_alpha)
    s = drop_undefined_prefix(apply(s, kind))
    export_plot_series(s, args.out, args.window, args.ewma_alpha)
    print(args.out)
    return 0


def _cmd_anomaly(args):
    s = _load_series(args)
    flags = flag_anomalies(s, args.window, args.threshold)
    fh = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        fh.write("timestamp,zone,series_label,zscore,threshold\n")
        for f in flags:
            stamp = f.timestamp.strftime("%Y-%m-%dT%H:%M:%SZ")
            fh.write(f"{stamp},{f.zone},{f.series_label},{f.zscore!r},{f.threshold!r}\n")
    finally:
        if args.out:
            fh.close()
    log.info("%d flag(s)", len(flags))
    return 0


def _cmd_synth(args):
    write_fixture(synthetic_dataset(args.kind, args.n, args.seed, phi=args.phi), args.out)
    print(args.out)
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "report": _cmd_report,
    "adf": _cmd_adf,
    "plot-data": _cmd_plot_data,
    "anomaly": _cmd_anomaly,
    "synth": _cmd_synth,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.ERROR,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return _COMMANDS[args.command](args)
    except (GridAdfError, OSError) as exc:
        print(f"gridadf: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"gridadf: usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
