"""Stationarity analysis for electricity-market time series.

Rolling statistics, stationarizing transforms and an augmented Dickey-Fuller
test with AIC lag selection, plus batch reports over zone datasets.
"""
import logging

from .adf import AdfConfig, AdfResult, AicVariant, CriticalValues, Verdict, adf_test, aic, default_maxlag, df_test, verdict
from .dataset import ZoneDataset, extract_series, load_csv, synthetic_dataset, write_fixture
from .errors import GridAdfError
from .linreg import DesignMatrix, OlsFit, build_adf_design, ols_fit
from .mackinnon import mackinnon_crit, mackinnon_pvalue
from .report import AnomalyFlag, ReportRow, ReportTable, emit, export_plot_series, flag_anomalies, run_report
from .rolling import ewma, moving_average, moving_std
from .series import (
    Horizon,
    Market,
    SeriesMeta,
    TimeSeries,
    Variable,
    drop_undefined_prefix,
    gen_ar1,
    gen_random_walk,
    gen_trend,
    make_series,
    resample,
)
from .transforms import (
    Diff,
    Identity,
    Log,
    LogPolicy,
    RemoveEWMA,
    RemoveLogMA,
    RemoveMA,
    apply,
    difference,
    log_transform,
    remove_ewma,
    remove_log_ma,
    remove_ma,
)

__version__ = "0.1.0"

logging.getLogger(__name__).addHandler(logging.NullHandler())
