"""greycast: fractional grey forecasting models for short positive time series.

The package provides conformable and classical (binomial) fractional
accumulation operators, a family of grey models built on them — CCFGM(1,1),
GM(1,1), FGM(1,1), a Caputo-type GM(p,1) — a quadratic-regression baseline,
whale-optimization order tuning, and CSV/JSON reporting with optional figure
rendering.
"""

from .bench import run_benchmark
from .dataio import Dataset, bundled_dataset, read_csv, write_csv, write_report
from .errors import ConvergenceError, DataError, DegeneracyError, GreycastError
from .fracops import (
    AccumulatedSeries,
    AccumulationKind,
    TimeSeries,
    cfa,
    cfd,
    classical_fago,
    classical_fdiff,
    hybrid_diff,
)
from .metrics import EvaluationReport, ReportRow, ape, evaluate, fit_mape, mape
from .models import (
    DesignSystem,
    FittedModel,
    LinearGreyParams,
    ModelConfig,
    build_design,
    caputo_gm_fit,
    caputo_gm_predict,
    ccfgm_fit,
    ccfgm_predict,
    ccfgm_time_response,
    fgm_fit,
    fgm_predict,
    fit_model,
    gm11_fit,
    gm11_predict,
    least_squares,
    pr2_fit,
    pr2_predict,
    predict_model,
)
from .optimize import TuneResult, WOAConfig, default_bounds, tune_orders, woa_minimize
from .specialfn import MLParams, log_gamma, mittag_leffler

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "AccumulatedSeries",
    "AccumulationKind",
    "ConvergenceError",
    "DataError",
    "Dataset",
    "DegeneracyError",
    "DesignSystem",
    "EvaluationReport",
    "FittedModel",
    "GreycastError",
    "LinearGreyParams",
    "MLParams",
    "ModelConfig",
    "ReportRow",
    "TimeSeries",
    "TuneResult",
    "WOAConfig",
    "ape",
    "build_design",
    "bundled_dataset",
    "caputo_gm_fit",
    "caputo_gm_predict",
    "ccfgm_fit",
    "ccfgm_predict",
    "ccfgm_time_response",
    "cfa",
    "cfd",
    "classical_fago",
    "classical_fdiff",
    "default_bounds",
    "evaluate",
    "fgm_fit",
    "fgm_predict",
    "fit_mape",
    "fit_model",
    "gm11_fit",
    "gm11_predict",
    "hybrid_diff",
    "least_squares",
    "log_gamma",
    "mape",
    "mittag_leffler",
    "pr2_fit",
    "pr2_predict",
    "predict_model",
    "read_csv",
    "run_benchmark",
    "tune_orders",
    "woa_minimize",
    "write_csv",
    "write_report",
]
