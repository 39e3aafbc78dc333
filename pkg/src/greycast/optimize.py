"""Whale optimization algorithm and the fractional-order tuning driver.

The optimizer follows the canonical WOA mechanics: a linearly shrinking
control scalar ``a`` (2 -> 0), encircling / random-search moves selected by
``|A|``, and a logarithmic bubble-net spiral taken with probability 1/2.
Agents are updated sequentially with a fixed per-agent draw order, so a seed
fully determines the run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ConvergenceError, DataError, GreycastError
from .fracops import TimeSeries
from .metrics import fit_mape
from .models import ModelConfig, fit_model

__all__ = ["WOAConfig", "TuneResult", "woa_minimize", "tune_orders", "default_bounds"]

#: Objective value assigned to order combinations where the model fit fails;
#: keeps the metaheuristic total without ever winning against a feasible point.
PENALTY = 1e9

#: Orders are kept away from zero: the time response divides by r and its
#: exponent degenerates as r -> 0.
ORDER_FLOOR = 0.01

TUNABLE_KINDS = ("ccfgm", "fgm", "caputo_gm")


@dataclass(frozen=True)
class WOAConfig:
    """Search box and budget of a whale-optimization run."""

    bounds: tuple[tuple[float, float], ...]
    agents: int = 30
    iterations: int = 100
    seed: int = 42
    spiral_b: float = 1.0

    def __post_init__(self) -> None:
        bounds = tuple((float(lo), float(hi)) for lo, hi in self.bounds)
        if len(bounds) == 0:
            raise DataError("search box must have at least one dimension")
        if any(not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo for lo, hi in bounds):
            raise DataError(f"degenerate search box {bounds!r}")
        if self.agents < 2:
            raise DataError(f"need at least 2 agents, got {self.agents}")
        if self.iterations < 1:
            raise DataError(f"need at least 1 iteration, got {self.iterations}")
        object.__setattr__(self, "bounds", bounds)


@dataclass(frozen=True)
class TuneResult:
    """Best orders found for a model kind, with the achieved fit MAPE.

    One-dimensional kinds (fgm, caputo_gm) report their single order in both
    ``r_star`` and ``q_star``.
    """

    r_star: float
    q_star: float
    objective: float
    evaluations: int


def woa_minimize(
    objective: Callable[[np.ndarray], float],
    config: WOAConfig,
    on_iteration: Callable[[int, float], None] | None = None,
) -> tuple[np.ndarray, float]:
    """Minimize ``objective`` over the configured box; returns (point, value).

    ``iterations`` counts generations including the initial random one, so a
    budget of 1 simply returns the best initial sample.  Non-finite objective
    values are treated as +inf; if no probe ever evaluates finite, a
    :class:`ConvergenceError` is raised.  ``on_iteration`` (generation index,
    best value so far) is invoked once per generation.
    """
    rng = np.random.default_rng(config.seed)
    lo = np.array([b[0] for b in config.bounds])
    hi = np.array([b[1] for b in config.bounds])
    dim = len(config.bounds)
    agents = config.agents

    def probe(point: np.ndarray) -> float:
        value = float(objective(point))
        return value if math.isfinite(value) else math.inf

    X = lo + rng.random((agents, dim)) * (hi - lo)
    best_x = X[0].copy()
    best_f = math.inf
    for i in range(agents):
        f = probe(X[i])
        if f < best_f:
            best_f = f
            best_x = X[i].copy()
    if on_iteration is not None:
        on_iteration(0, best_f)

    rounds = config.iterations - 1
    for t in range(1, rounds + 1):
        a = 2.0 - 2.0 * t / rounds
        for i in range(agents):
            r1 = rng.random()
            r2 = rng.random()
            p = rng.random()
            l = rng.uniform(-1.0, 1.0)
            j = int(rng.integers(agents))
            A = 2.0 * a * r1 - a
            C = 2.0 * r2
            if p < 0.5:
                reference = best_x if abs(A) < 1.0 else X[j]
                X[i] = reference - A * np.abs(C * reference - X[i])
            else:
                X[i] = (
                    np.abs(best_x - X[i]) * math.exp(config.spiral_b * l)
                    * math.cos(2.0 * math.pi * l)
                    + best_x
                )
            X[i] = np.clip(X[i], lo, hi)
            f = probe(X[i])
            if f < best_f:
                best_f = f
                best_x = X[i].copy()
        if on_iteration is not None:
            on_iteration(t, best_f)

    if not math.isfinite(best_f):
        raise ConvergenceError("objective returned no finite value on any probe")
    return best_x, best_f


def default_bounds(kind: str) -> tuple[tuple[float, float], ...]:
    """Per-kind search boxes for the tunable orders."""
    if kind == "ccfgm":
        return ((ORDER_FLOOR, 1.0), (ORDER_FLOOR, 1.0))
    if kind == "fgm":
        return ((ORDER_FLOOR, 1.0),)
    if kind == "caputo_gm":
        return ((ORDER_FLOOR, 0.99),)
    raise DataError(f"kind {kind!r} has no tunable orders; expected one of {TUNABLE_KINDS}")


def _config_for(kind: str, point: Sequence[float]) -> ModelConfig:
    if kind == "ccfgm":
        return ModelConfig("ccfgm", r=float(point[0]), q=float(point[1]))
    if kind == "fgm":
        return ModelConfig("fgm", q=float(point[0]))
    return ModelConfig("caputo_gm", p=float(point[0]))


def tune_orders(
    x: TimeSeries,
    kind: str,
    train_n: int | None = None,
    woa: WOAConfig | None = None,
) -> TuneResult:
    """Minimize in-sample fit MAPE over the fractional orders of ``kind``.

    Order combinations where fitting fails (degenerate design, divergent
    series) score the fixed ``PENALTY`` so the search simply moves on.
    """
    if kind not in TUNABLE_KINDS:
        raise DataError(f"kind {kind!r} is not tunable; expected one of {TUNABLE_KINDS}")
    n = train_n if train_n is not None else len(x)
    if n > len(x):
        raise DataError(f"train_n={n} exceeds the series length {len(x)}")
    if n < 5:
        raise DataError(f"order tuning needs at least 5 training points, got {n}")
    train = x.head(n)
    if woa is None:
        woa = WOAConfig(bounds=default_bounds(kind))
    if len(woa.bounds) != len(default_bounds(kind)):
        raise DataError(
            f"kind {kind!r} tunes {len(default_bounds(kind))} order(s), "
            f"but the search box has {len(woa.bounds)} dimension(s)"
        )

    def objective(point: np.ndarray) -> float:
        try:
            model = fit_model(train, _config_for(kind, point))
            return fit_mape(train, model.fitted_restored)
        except GreycastError:
            return PENALTY

    point, value = woa_minimize(objective, woa)
    r_star = float(point[0])
    q_star = float(point[1]) if point.size > 1 else float(point[0])
    return TuneResult(r_star, q_star, float(value), woa.agents * woa.iterations)
