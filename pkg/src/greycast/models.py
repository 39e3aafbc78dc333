"""Grey forecasting models behind one uniform fit/predict interface.

Implemented kinds:

* ``ccfgm`` — continuous conformable fractional grey model CCFGM(1,1): the
  raw series is q-order conformable-accumulated, an r-order conformable
  difference scheme with trapezoid background values yields a two-parameter
  least-squares problem, and the continuous time response is restored back
  through the exact q-order conformable difference.
* ``gm11`` — classical GM(1,1); identical to ``ccfgm`` at r = q = 1.
* ``fgm`` — fractional grey model FGM(1,1): binomial accumulation of a single
  tunable order, GM(1,1)-style design, binomial-difference restoration.
* ``caputo_gm`` — Caputo-type GM(p,1) predicting through the Mittag-Leffler
  function.
* ``pr2`` — quadratic polynomial regression on the time index, a
  non-grey baseline.

Fitted k indices are 1-based: training points are k = 1..n and forecasts
continue at k = n+1, n+2, ...
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DataError, DegeneracyError
from .fracops import AccumulatedSeries, TimeSeries, cfa, cfd, classical_fago, classical_fdiff, hybrid_diff
from .specialfn import mittag_leffler

__all__ = [
    "MODEL_KINDS",
    "LinearGreyParams",
    "DesignSystem",
    "ModelConfig",
    "FittedModel",
    "build_design",
    "least_squares",
    "ccfgm_fit",
    "ccfgm_time_response",
    "ccfgm_predict",
    "gm11_fit",
    "gm11_predict",
    "fgm_fit",
    "fgm_predict",
    "caputo_gm_fit",
    "caputo_gm_predict",
    "pr2_fit",
    "pr2_predict",
    "fit_model",
    "predict_model",
]

MODEL_KINDS = ("ccfgm", "gm11", "fgm", "caputo_gm", "pr2")

#: |a| below this is treated as a vanishing development coefficient: the time
#: response divides by a, so constant-like data must fail loudly.
DEGENERACY_EPS = 1e-10

#: Condition-number ceiling for the 2x2 normal matrix.
COND_LIMIT = 1e12

#: Minimum number of training points for any model fit.
MIN_FIT_POINTS = 5


@dataclass(frozen=True)
class LinearGreyParams:
    """Development coefficient ``a`` and grey input ``b`` of the whitening equation."""

    a: float
    b: float


@dataclass(frozen=True)
class DesignSystem:
    """Least-squares system ``Y ~ B @ [a, b]`` with B of shape (n-1, 2)."""

    B: np.ndarray
    Y: np.ndarray


@dataclass(frozen=True)
class ModelConfig:
    """Model kind plus its orders.

    ``r`` is the difference order and ``q`` the accumulation order of the
    conformable pipeline (both fixed at 1 for ``gm11``).  ``fgm`` keeps its
    single accumulation order in ``q``.  ``p`` is the Caputo order, used only
    by ``caputo_gm``.  ``lam`` weights the backward value in the trapezoid
    background term; 0.5 is the classical mean.
    """

    kind: str
    r: float = 1.0
    q: float = 1.0
    p: float | None = None
    lam: float = 0.5

    def __post_init__(self) -> None:
        if self.kind not in MODEL_KINDS:
            raise DataError(f"unknown model kind {self.kind!r}; expected one of {MODEL_KINDS}")
        if self.kind in ("ccfgm", "gm11", "fgm"):
            for name, value in (("r", self.r), ("q", self.q)):
                if not (isinstance(value, (int, float)) and 0.0 < value <= 1.0):
                    raise DataError(f"order {name} must lie in (0, 1], got {value!r}")
        if self.kind == "gm11" and (self.r != 1.0 or self.q != 1.0):
            raise DataError("gm11 has fixed orders r = q = 1")
        if self.kind == "caputo_gm":
            if self.p is None or not 0.0 < self.p < 1.0:
                raise DataError(f"caputo_gm requires an order p in (0, 1), got {self.p!r}")
        if not 0.0 <= self.lam <= 1.0:
            raise DataError(f"background weight must lie in [0, 1], got {self.lam!r}")


@dataclass(frozen=True)
class FittedModel:
    """A trained model: configuration, parameters and in-sample restored values.

    ``params`` holds :class:`LinearGreyParams` for the grey kinds and the
    quadratic coefficient vector for ``pr2``.  For every grey kind the first
    restored value equals the first observation exactly (the time response
    passes through the initial condition).
    """

    config: ModelConfig
    params: "LinearGreyParams | np.ndarray"
    initial_value: float
    n_train: int
    fitted_restored: np.ndarray = field(repr=False)


def build_design(xq, xqr, lam: float = 0.5) -> DesignSystem:
    """Assemble the grey design system from an accumulated series.

    Row k-1 (for k = 2..n) is ``[-(lam * xq_{k-1} + (1-lam) * xq_k), 1]`` and
    the response is ``xqr_k``, the order-r difference at k.
    """
    values = xq.values if isinstance(xq, AccumulatedSeries) else np.asarray(xq, dtype=float)
    y = np.asarray(xqr, dtype=float)
    if not 0.0 <= lam <= 1.0:
        raise DataError(f"background weight must lie in [0, 1], got {lam!r}")
    if values.size < 2:
        raise DataError("design needs an accumulated series of at least two points")
    if y.size != values.size - 1:
        raise DataError(
            f"difference vector length {y.size} does not match series length {values.size}"
        )
    background = lam * values[:-1] + (1.0 - lam) * values[1:]
    B = np.column_stack([-background, np.ones(values.size - 1)])
    return DesignSystem(B, y)


def least_squares(system: DesignSystem) -> LinearGreyParams:
    """Solve the normal equations ``(B'B) [a, b]' = B'Y``.

    Raises :class:`DegeneracyError` when the normal matrix is singular or its
    condition number exceeds ``COND_LIMIT`` (e.g. duplicated design rows).
    The conditioning is measured on column-equilibrated data so the check
    responds to collinearity, not to the magnitude of the series: rescaling
    the inputs must not flip a well-posed fit into a degenerate one.
    """
    B, Y = system.B, system.Y
    scale = np.sqrt(np.sum(B * B, axis=0))
    if not np.all(scale > 0.0):
        raise DegeneracyError("design matrix has a zero column; the fit is underdetermined")
    Bn = B / scale
    G = Bn.T @ Bn
    cond = np.linalg.cond(G)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise DegeneracyError(
            f"normal matrix is ill-conditioned (cond={cond:.3g}); "
            "the series cannot support a grey fit"
        )
    a, b = np.linalg.solve(G, Bn.T @ Y) / scale
    return LinearGreyParams(float(a), float(b))


def _require_trainable(x: TimeSeries) -> None:
    if len(x) < MIN_FIT_POINTS:
        raise DataError(f"model fitting needs at least {MIN_FIT_POINTS} points, got {len(x)}")


def _check_development(a: float) -> None:
    if abs(a) < DEGENERACY_EPS:
        raise DegeneracyError(
            f"development coefficient a={a:.3e} is numerically zero; "
            "the series is constant-like and the time response is undefined"
        )


# ---------------------------------------------------------------------------
# CCFGM(1,1) and its r = q = 1 specialization GM(1,1)
# ---------------------------------------------------------------------------

def _ccfgm_accumulated_response(params: LinearGreyParams, x1: float, r: float, m: int) -> np.ndarray:
    """Time response of the q-accumulated series at k = 1..m.

    ``xq_hat(k) = (b + (a*x1 - b) * exp(a * (1 - k**r) / r)) / a`` with the
    k = 1 value anchored to x1 exactly (the exponent vanishes there).
    """
    a, b = params.a, params.b
    k = np.arange(1, m + 1, dtype=float)
    out = (b + (a * x1 - b) * np.exp(a * (1.0 - k**r) / r)) / a
    out[0] = x1
    return out


def ccfgm_fit(x: TimeSeries, config: ModelConfig) -> FittedModel:
    """Fit the conformable fractional grey model at the orders in ``config``."""
    if config.kind not in ("ccfgm", "gm11"):
        raise DataError(f"ccfgm_fit cannot fit kind {config.kind!r}")
    _require_trainable(x)
    xq = cfa(x.values, config.q)
    xqr = hybrid_diff(xq, config.r)
    params = least_squares(build_design(xq, xqr, config.lam))
    _check_development(params.a)
    x1 = float(x.values[0])
    accumulated = _ccfgm_accumulated_response(params, x1, config.r, len(x))
    fitted = cfd(accumulated, config.q)
    return FittedModel(config, params, x1, len(x), fitted)


def ccfgm_time_response(model: FittedModel, k: int) -> float:
    """Accumulated-scale prediction ``xq_hat(k)`` for a single index k >= 1."""
    if k < 1:
        raise DataError(f"time response index must be >= 1, got {k}")
    params = model.params
    if not isinstance(params, LinearGreyParams):
        raise DataError("time response is defined only for the grey kinds")
    _check_development(params.a)
    if k == 1:
        return model.initial_value
    r = model.config.r
    a, b = params.a, params.b
    return float((b + (a * model.initial_value - b) * math.exp(a * (1.0 - float(k) ** r) / r)) / a)


def ccfgm_predict(model: FittedModel, m: int) -> np.ndarray:
    """Restored predictions for k = 1..m (training range plus forecasts).

    The accumulated time response is pulled back to the raw scale with the
    q-order conformable difference, which inverts the q-accumulation exactly;
    the first value therefore reproduces the first observation.
    """
    if m < 1:
        raise DataError(f"prediction horizon must cover at least k = 1, got {m}")
    params = model.params
    if not isinstance(params, LinearGreyParams):
        raise DataError("ccfgm_predict is defined only for the grey kinds")
    accumulated = _ccfgm_accumulated_response(params, model.initial_value, model.config.r, m)
    return cfd(accumulated, model.config.q)


def gm11_fit(x: TimeSeries, lam: float = 0.5) -> FittedModel:
    """Classical GM(1,1): the conformable model at r = q = 1."""
    return ccfgm_fit(x, ModelConfig("gm11", r=1.0, q=1.0, lam=lam))


def gm11_predict(model: FittedModel, m: int) -> np.ndarray:
    return ccfgm_predict(model, m)


# ---------------------------------------------------------------------------
# FGM(1,1): binomial accumulation of one tunable order
# ---------------------------------------------------------------------------

def fgm_fit(x: TimeSeries, r_order: float, lam: float = 0.5) -> FittedModel:
    """Fit FGM(1,1) with binomial accumulation order ``r_order`` in (0, 1]."""
    config = ModelConfig("fgm", r=1.0, q=r_order, lam=lam)
    _require_trainable(x)
    xr = classical_fago(x.values, config.q)
    params = least_squares(build_design(xr, np.diff(xr.values), config.lam))
    _check_development(params.a)
    x1 = float(x.values[0])
    fitted = _fgm_restore(params, x1, config.q, len(x))
    return FittedModel(config, params, x1, len(x), fitted)


def _fgm_restore(params: LinearGreyParams, x1: float, order: float, m: int) -> np.ndarray:
    a, b = params.a, params.b
    k = np.arange(1, m + 1, dtype=float)
    accumulated = (x1 - b / a) * np.exp(-a * (k - 1.0)) + b / a
    accumulated[0] = x1
    return classical_fdiff(accumulated, order)


def fgm_predict(model: FittedModel, m: int) -> np.ndarray:
    if m < 1:
        raise DataError(f"prediction horizon must cover at least k = 1, got {m}")
    if not isinstance(model.params, LinearGreyParams):
        raise DataError("fgm_predict is defined only for grey parameters")
    return _fgm_restore(model.params, model.initial_value, model.config.q, m)


# ---------------------------------------------------------------------------
# Caputo-type GM(p,1)
# ---------------------------------------------------------------------------

def caputo_gm_fit(x: TimeSeries, p: float, lam: float = 0.5) -> FittedModel:
    """Fit the Caputo-type grey model of order ``p`` in (0, 1).

    The raw series is binomial-accumulated at order 1-p; first differences of
    that sequence against trapezoid background values give the least-squares
    system, and prediction runs through the Mittag-Leffler function.
    """
    config = ModelConfig("caputo_gm", p=p, lam=lam)
    _require_trainable(x)
    x1p = classical_fago(x.values, 1.0 - p)
    params = least_squares(build_design(x1p, np.diff(x1p.values), config.lam))
    _check_development(params.a)
    x1 = float(x.values[0])
    fitted = _caputo_restore(params, x1, p, len(x))
    return FittedModel(config, params, x1, len(x), fitted)


def _caputo_restore(params: LinearGreyParams, x1: float, p: float, m: int) -> np.ndarray:
    a, b = params.a, params.b
    out = np.empty(m)
    out[0] = x1
    for k in range(2, m + 1):
        ml = mittag_leffler(p, -a * float(k) ** p)
        out[k - 1] = (x1 - b / a) * ml + b / a
    return out


def caputo_gm_predict(model: FittedModel, m: int) -> np.ndarray:
    if m < 1:
        raise DataError(f"prediction horizon must cover at least k = 1, got {m}")
    params = model.params
    if not isinstance(params, LinearGreyParams):
        raise DataError("caputo_gm_predict is defined only for grey parameters")
    assert model.config.p is not None
    return _caputo_restore(params, model.initial_value, model.config.p, m)


# ---------------------------------------------------------------------------
# PR(2): quadratic regression baseline
# ---------------------------------------------------------------------------

def pr2_fit(x: TimeSeries) -> FittedModel:
    """Least-squares quadratic ``c0 + c1*t + c2*t**2`` on the index t = 1..n."""
    if len(x) < 3:
        raise DataError(f"quadratic regression needs at least 3 points, got {len(x)}")
    t = np.arange(1, len(x) + 1, dtype=float)
    design = np.column_stack([np.ones_like(t), t, t**2])
    coeffs, *_ = np.linalg.lstsq(design, x.values, rcond=None)
    config = ModelConfig("pr2")
    fitted = design @ coeffs
    return FittedModel(config, coeffs, float(x.values[0]), len(x), fitted)


def pr2_predict(model: FittedModel, m: int) -> np.ndarray:
    if m < 1:
        raise DataError(f"prediction horizon must cover at least k = 1, got {m}")
    coeffs = np.asarray(model.params, dtype=float)
    t = np.arange(1, m + 1, dtype=float)
    return coeffs[0] + coeffs[1] * t + coeffs[2] * t**2


# ---------------------------------------------------------------------------
# Uniform dispatch
# ---------------------------------------------------------------------------

def fit_model(x: TimeSeries, config: ModelConfig) -> FittedModel:
    """Fit any supported kind from a single :class:`ModelConfig`."""
    if config.kind in ("ccfgm", "gm11"):
        return ccfgm_fit(x, config)
    if config.kind == "fgm":
        return fgm_fit(x, config.q, config.lam)
    if config.kind == "caputo_gm":
        assert config.p is not None
        return caputo_gm_fit(x, config.p, config.lam)
    return pr2_fit(x)


def predict_model(model: FittedModel, m: int) -> np.ndarray:
    """Predictions for k = 1..m from any fitted model."""
    kind = model.config.kind
    if kind in ("ccfgm", "gm11"):
        return ccfgm_predict(model, m)
    if kind == "fgm":
        return fgm_predict(model, m)
    if kind == "caputo_gm":
        return caputo_gm_predict(model, m)
    return pr2_predict(model, m)
