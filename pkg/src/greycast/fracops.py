"""Fractional accumulation and difference operators on finite sequences.

Two operator families are provided:

* conformable: ``cfa`` weights each source element by ``1 / i**(1 - alpha)``
  before the running sum, and ``cfd`` inverts it exactly via
  ``k**(1 - alpha) * (x_k - x_{k-1})``;
* classical (binomial): ``classical_fago`` uses generalized binomial
  coefficients ``C(k - i + r - 1, k - i)`` and ``classical_fdiff`` the
  alternating-sign expansion of ``(1 - L)**r``.

All functions are pure and operate on 1-d float arrays; sequence indices in
the formulas are 1-based, matching the usual grey-modelling convention.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DataError

__all__ = [
    "AccumulationKind",
    "AccumulatedSeries",
    "TimeSeries",
    "cfa",
    "cfd",
    "classical_fago",
    "classical_fdiff",
    "hybrid_diff",
]


class AccumulationKind(enum.Enum):
    CONFORMABLE = "conformable"
    CLASSICAL = "classical"


@dataclass(frozen=True)
class TimeSeries:
    """A short, strictly positive series indexed by increasing integer labels.

    Labels are period identifiers (typically years).  Values must be strictly
    positive: percentage errors and grey accumulation both require it.
    """

    labels: tuple[int, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        labels = tuple(int(x) for x in self.labels)
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1:
            raise DataError("series values must be one-dimensional")
        if len(labels) != values.size:
            raise DataError(
                f"labels and values disagree in length ({len(labels)} vs {values.size})"
            )
        if values.size == 0:
            raise DataError("series must be non-empty")
        if not np.all(np.isfinite(values)):
            raise DataError("series values must be finite")
        if np.any(values <= 0.0):
            raise DataError("series values must be strictly positive")
        if any(b <= a for a, b in zip(labels, labels[1:])):
            raise DataError("series labels must be strictly increasing")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.labels)

    def head(self, n: int) -> "TimeSeries":
        """First ``n`` points (used for train/holdout splits)."""
        if not 1 <= n <= len(self):
            raise DataError(f"cannot take the first {n} of {len(self)} points")
        return TimeSeries(self.labels[:n], self.values[:n])

    def tail_from(self, n: int) -> "TimeSeries | None":
        """Points after index ``n``, or None when nothing remains."""
        if n >= len(self):
            return None
        return TimeSeries(self.labels[n:], self.values[n:])

    def label_step(self) -> int:
        """Common difference of the labels; errors if spacing is not uniform."""
        if len(self.labels) < 2:
            return 1
        steps = {b - a for a, b in zip(self.labels, self.labels[1:])}
        if len(steps) != 1:
            raise DataError("labels are not uniformly spaced; cannot extend them")
        return steps.pop()

    def future_labels(self, count: int) -> tuple[int, ...]:
        """``count`` labels continuing the series spacing past the last label."""
        step = self.label_step()
        last = self.labels[-1]
        return tuple(last + step * (i + 1) for i in range(count))


@dataclass(frozen=True)
class AccumulatedSeries:
    """Result of a fractional accumulation, tagged with its order and kind."""

    values: np.ndarray
    order: float
    kind: AccumulationKind

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))

    def __len__(self) -> int:
        return int(self.values.size)


def _as_values(series: "Sequence[float] | np.ndarray | AccumulatedSeries | TimeSeries") -> np.ndarray:
    if isinstance(series, (AccumulatedSeries, TimeSeries)):
        values = series.values
    else:
        values = series
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise DataError("expected a one-dimensional sequence")
    if arr.size == 0:
        raise DataError("expected a non-empty sequence")
    return arr


def _binom_weights(order: float, count: int) -> np.ndarray:
    """Weights ``w_j = C(j + order - 1, j)`` for ``j = 0 .. count-1``.

    Computed through log-gamma so large ``count`` does not overflow.
    """
    if order == 0.0:
        w = np.zeros(count)
        w[0] = 1.0
        return w
    j = np.arange(count, dtype=float)
    lg = math.lgamma
    logs = [lg(jj + order) - lg(order) - lg(jj + 1.0) for jj in j]
    return np.exp(np.asarray(logs))


def cfa(series, alpha: float) -> AccumulatedSeries:
    """Conformable fractional accumulation of order ``alpha > 0``.

    For ``alpha`` in (0, 1] the result is ``out_k = sum_{i<=k} x_i / i**(1-alpha)``.
    For larger orders the unified form applies binomial weights
    ``C(k - i + ceil(alpha) - 1, k - i)`` on top of ``x_i / i**(ceil(alpha)-alpha)``.
    Order 1 reduces to the plain cumulative sum.
    """
    x = _as_values(series)
    if not (isinstance(alpha, (int, float)) and math.isfinite(alpha)) or alpha <= 0.0:
        raise DataError(f"accumulation order must be a positive real, got {alpha!r}")
    alpha = float(alpha)
    n = x.size
    m = math.ceil(alpha)
    i = np.arange(1, n + 1, dtype=float)
    weighted = x / i ** (m - alpha)
    if m == 1:
        out = np.cumsum(weighted)
    else:
        w = _binom_weights(float(m), n)
        out = np.convolve(w, weighted)[:n]
    return AccumulatedSeries(out, alpha, AccumulationKind.CONFORMABLE)


def cfd(series, alpha: float) -> np.ndarray:
    """Conformable fractional difference, the exact left inverse of ``cfa``.

    ``out_k = k**(1-alpha) * (x_k - x_{k-1})`` with the element before the
    first taken as zero, so single-point series are fixed points.
    """
    x = _as_values(series)
    if not (isinstance(alpha, (int, float)) and 0.0 < alpha <= 1.0):
        raise DataError(f"difference order must lie in (0, 1], got {alpha!r}")
    alpha = float(alpha)
    n = x.size
    k = np.arange(1, n + 1, dtype=float)
    prev = np.concatenate(([0.0], x[:-1]))
    return k ** (1.0 - alpha) * (x - prev)


def classical_fago(series, r: float) -> AccumulatedSeries:
    """Binomial (classical) fractional accumulation of order ``r >= 0``.

    ``out_k = sum_{i<=k} C(k - i + r - 1, k - i) * x_i``.  Order 0 is the
    identity and order 1 the cumulative sum; both are handled exactly.
    """
    x = _as_values(series)
    if not (isinstance(r, (int, float)) and math.isfinite(r)) or r < 0.0:
        raise DataError(f"accumulation order must be a non-negative real, got {r!r}")
    r = float(r)
    if r == 0.0:
        out = x.copy()
    elif r == 1.0:
        out = np.cumsum(x)
    else:
        w = _binom_weights(r, x.size)
        out = np.convolve(w, x)[: x.size]
    return AccumulatedSeries(out, r, AccumulationKind.CLASSICAL)


def classical_fdiff(series, r: float) -> np.ndarray:
    """Binomial fractional difference, the exact left inverse of ``classical_fago``.

    Uses the alternating-sign expansion ``d_j = (-1)**j C(r, j)`` generated by
    the recurrence ``d_j = d_{j-1} * (j - 1 - r) / j``.
    """
    x = _as_values(series)
    if not (isinstance(r, (int, float)) and math.isfinite(r)) or r < 0.0:
        raise DataError(f"difference order must be a non-negative real, got {r!r}")
    r = float(r)
    d = np.empty(x.size)
    d[0] = 1.0
    for j in range(1, x.size):
        d[j] = d[j - 1] * (j - 1.0 - r) / j
    return np.convolve(d, x)[: x.size]


def hybrid_diff(xq, r: float) -> np.ndarray:
    """Order-``r`` conformable difference of an accumulated series, for k = 2..n.

    Returns the length n-1 vector ``k**(1-r) * (xq_k - xq_{k-1})`` — the
    left-hand side entries of the grey whitening difference scheme.
    """
    values = _as_values(xq)
    if values.size < 2:
        raise DataError("hybrid difference needs at least two points")
    if not (isinstance(r, (int, float)) and 0.0 < r <= 1.0):
        raise DataError(f"difference order must lie in (0, 1], got {r!r}")
    r = float(r)
    k = np.arange(2, values.size + 1, dtype=float)
    return k ** (1.0 - r) * np.diff(values)
