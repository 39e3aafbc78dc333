"""Percentage-error measures and train/holdout evaluation reports."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError
from .fracops import TimeSeries
from .models import FittedModel, LinearGreyParams, predict_model

__all__ = ["ReportRow", "EvaluationReport", "ape", "mape", "fit_mape", "evaluate"]


@dataclass(frozen=True)
class ReportRow:
    """One evaluated period: label, observed value, prediction and APE in percent."""

    label: int
    actual: float
    predicted: float
    ape_percent: float


@dataclass(frozen=True)
class EvaluationReport:
    """Per-point errors plus summary MAPEs for one fitted model.

    ``rows`` covers the training range followed by any holdout points;
    ``horizon`` holds labelled forecasts beyond all observed data.
    ``test_mape`` is None when there is no holdout.
    """

    model_kind: str
    orders: dict[str, float]
    params: dict[str, object]
    rows: tuple[ReportRow, ...]
    fit_mape: float
    test_mape: float | None
    horizon: tuple[tuple[int, float], ...]
    n_train: int


def ape(actual: float, predicted: float) -> float:
    """Absolute percentage error ``|predicted - actual| / actual * 100``."""
    if not actual > 0.0:
        raise DataError(f"APE needs a positive actual value, got {actual!r}")
    return abs(predicted - actual) / actual * 100.0


def mape(actuals, predictions, span: slice | None = None) -> float:
    """Mean absolute percentage error, optionally restricted to ``span``."""
    a = np.asarray(actuals, dtype=float)
    p = np.asarray(predictions, dtype=float)
    if a.shape != p.shape:
        raise DataError(f"length mismatch: {a.shape} actuals vs {p.shape} predictions")
    if span is not None:
        a = a[span]
        p = p[span]
    if a.size == 0:
        raise DataError("MAPE over an empty range is undefined")
    if np.any(a <= 0.0):
        raise DataError("MAPE needs strictly positive actual values")
    return float(np.mean(np.abs(p - a) / a) * 100.0)


def fit_mape(x: TimeSeries, fitted, include_first: bool = False) -> float:
    """In-sample MAPE of restored fitted values.

    The first point is excluded by default: grey time responses pass through
    it exactly, so including it only dilutes the error.
    """
    start = 0 if include_first else 1
    return mape(x.values, np.asarray(fitted, dtype=float), span=slice(start, None))


def _orders_of(model: FittedModel) -> dict[str, float]:
    cfg = model.config
    if cfg.kind in ("ccfgm", "gm11"):
        return {"r": cfg.r, "q": cfg.q}
    if cfg.kind == "fgm":
        return {"order": cfg.q}
    if cfg.kind == "caputo_gm":
        return {"p": float(cfg.p)}  # type: ignore[arg-type]
    return {}


def _params_of(model: FittedModel) -> dict[str, object]:
    if isinstance(model.params, LinearGreyParams):
        return {"a": model.params.a, "b": model.params.b}
    return {"coeffs": [float(c) for c in np.asarray(model.params)]}


def evaluate(
    x: TimeSeries,
    model: FittedModel,
    holdout: TimeSeries | None = None,
    horizon: int = 0,
    include_first_in_fit: bool = False,
) -> EvaluationReport:
    """Assemble the per-point report for a model trained on ``x``.

    ``holdout`` must continue the training labels without a gap; ``horizon``
    adds that many labelled forecasts past the last available observation.
    """
    if model.n_train != len(x):
        raise DataError(
            f"model was trained on {model.n_train} points but the series has {len(x)}"
        )
    if horizon < 0:
        raise DataError(f"horizon must be non-negative, got {horizon}")
    n = len(x)
    n_hold = len(holdout) if holdout is not None else 0
    step = x.label_step() if (holdout is not None or horizon > 0) else 0
    if holdout is not None:
        expected = tuple(x.labels[-1] + step * (i + 1) for i in range(n_hold))
        if holdout.labels != expected:
            raise DataError(
                f"holdout labels {holdout.labels} do not continue training labels "
                f"(expected {expected})"
            )

    predictions = predict_model(model, n + n_hold + horizon)

    rows = [
        ReportRow(x.labels[k], float(x.values[k]), float(predictions[k]),
                  ape(float(x.values[k]), float(predictions[k])))
        for k in range(n)
    ]
    if holdout is not None:
        for k in range(n_hold):
            actual = float(holdout.values[k])
            predicted = float(predictions[n + k])
            rows.append(ReportRow(holdout.labels[k], actual, predicted, ape(actual, predicted)))

    future = tuple(
        (int(x.labels[-1] + step * (n_hold + i + 1)), float(predictions[n + n_hold + i]))
        for i in range(horizon)
    )

    fit_value = fit_mape(x, predictions[:n], include_first=include_first_in_fit)
    test_value = (
        mape(holdout.values, predictions[n : n + n_hold]) if n_hold > 0 else None
    )
    return EvaluationReport(
        model_kind=model.config.kind,
        orders=_orders_of(model),
        params=_params_of(model),
        rows=tuple(rows),
        fit_mape=fit_value,
        test_mape=test_value,
        horizon=future,
        n_train=n,
    )
