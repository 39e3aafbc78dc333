import math

import numpy as np
import pytest

from greycast import (
    ConvergenceError,
    DataError,
    FittedModel,
    LinearGreyParams,
    ModelConfig,
    TimeSeries,
    TuneResult,
    WOAConfig,
    ccfgm_fit,
    ccfgm_predict,
    default_bounds,
    fit_mape,
    tune_orders,
    woa_minimize,
)


def _sphere(v: np.ndarray) -> float:
    return float(np.sum(v * v))


def test_sphere_converges_under_tolerance():
    config = WOAConfig(bounds=((-10.0, 10.0), (-10.0, 10.0)), agents=30, iterations=200, seed=42)
    point, value = woa_minimize(_sphere, config)
    assert value < 1e-4
    assert np.max(np.abs(point)) < 0.1


def test_one_dimensional_quadratic():
    config = WOAConfig(bounds=((0.0, 1.0),), agents=30, iterations=100, seed=42)
    point, value = woa_minimize(lambda v: (float(v[0]) - 0.3) ** 2, config)
    assert abs(float(point[0]) - 0.3) < 1e-3


def test_degenerate_budget_returns_best_initial_sample():
    """iterations=1 never moves the agents: the answer is the best initial draw."""
    config = WOAConfig(bounds=((-10.0, 10.0), (-10.0, 10.0)), agents=2, iterations=1, seed=7)
    point, value = woa_minimize(_sphere, config)
    rng = np.random.default_rng(7)
    samples = -10.0 + rng.random((2, 2)) * 20.0
    values = [_sphere(s) for s in samples]
    best = int(np.argmin(values))
    assert np.array_equal(point, samples[best])
    assert value == values[best]


def test_same_seed_is_byte_identical():
    config = WOAConfig(bounds=((-10.0, 10.0), (-10.0, 10.0)), agents=20, iterations=60, seed=42)
    p1, v1 = woa_minimize(_sphere, config)
    p2, v2 = woa_minimize(_sphere, config)
    assert p1.tobytes() == p2.tobytes()
    assert v1 == v2


def test_best_value_is_monotone_over_iterations():
    history: list[float] = []
    config = WOAConfig(bounds=((-5.0, 5.0), (-5.0, 5.0)), agents=10, iterations=50, seed=3)
    woa_minimize(_sphere, config, on_iteration=lambda t, best: history.append(best))
    assert len(history) == 50
    assert all(b <= a + 0.0 for a, b in zip(history, history[1:]))


def test_penalty_region_never_wins():
    def holey(v: np.ndarray) -> float:
        if v[0] < 0.0:
            return 1e9
        return float(np.sum(v * v)) + 1.0

    config = WOAConfig(bounds=((-10.0, 10.0), (-10.0, 10.0)), agents=15, iterations=40, seed=5)
    point, value = woa_minimize(holey, config)
    assert value < 1e9
    assert point[0] >= 0.0


def test_non_finite_objective_everywhere_errors():
    config = WOAConfig(bounds=((0.0, 1.0),), agents=5, iterations=5, seed=1)
    with pytest.raises(ConvergenceError):
        woa_minimize(lambda v: float("nan"), config)


def test_woa_config_validation():
    with pytest.raises(DataError):
        WOAConfig(bounds=())
    with pytest.raises(DataError):
        WOAConfig(bounds=((1.0, 1.0),))
    with pytest.raises(DataError):
        WOAConfig(bounds=((0.0, 1.0),), agents=1)
    with pytest.raises(DataError):
        WOAConfig(bounds=((0.0, 1.0),), iterations=0)


def test_default_bounds_per_kind():
    assert default_bounds("ccfgm") == ((0.01, 1.0), (0.01, 1.0))
    assert default_bounds("fgm") == ((0.01, 1.0),)
    assert default_bounds("caputo_gm") == ((0.01, 0.99),)
    with pytest.raises(DataError):
        default_bounds("pr2")


def test_tune_finds_orders_at_least_as_good_as_truth():
    """Synthetic data generated at (r, q) = (0.7, 0.4); the tuned objective
    must not be worse than the objective evaluated at the generating orders."""
    generator = FittedModel(
        ModelConfig("ccfgm", r=0.7, q=0.4), LinearGreyParams(0.06, 3.0), 2.5, 12, np.zeros(12)
    )
    series = TimeSeries(tuple(range(1, 13)), ccfgm_predict(generator, 12))
    refit = ccfgm_fit(series, ModelConfig("ccfgm", r=0.7, q=0.4))
    at_truth = fit_mape(series, refit.fitted_restored)
    woa = WOAConfig(bounds=default_bounds("ccfgm"), agents=20, iterations=60, seed=42)
    result = tune_orders(series, "ccfgm", 12, woa)
    assert result.objective <= at_truth + 1e-6
    assert result.evaluations == 20 * 60


def test_tune_result_is_deterministic():
    series = TimeSeries(tuple(range(2005, 2018)),
                        np.linspace(100.0, 220.0, 13) * (1.0 + 0.01 * np.cos(np.arange(13))))
    woa = WOAConfig(bounds=default_bounds("fgm"), agents=10, iterations=20, seed=11)
    first = tune_orders(series, "fgm", 11, woa)
    second = tune_orders(series, "fgm", 11, woa)
    assert first == second
    assert isinstance(first, TuneResult)
    assert first.r_star == first.q_star  # one-dimensional kind


def test_tune_validation_errors():
    series = TimeSeries(tuple(range(1, 14)), np.linspace(10.0, 30.0, 13))
    with pytest.raises(DataError):
        tune_orders(series, "pr2", 11)
    with pytest.raises(DataError):
        tune_orders(series, "ccfgm", 14)
    with pytest.raises(DataError):
        tune_orders(series, "ccfgm", 4)
    with pytest.raises(DataError):
        tune_orders(series, "ccfgm", 11, WOAConfig(bounds=((0.01, 1.0),)))


def test_tune_contains_degenerate_orders_behind_penalty():
    """A constant series degenerates the fit at r = q = 1 but remains fittable
    elsewhere; the search must come back with a feasible (non-penalty) point."""
    series = TimeSeries(tuple(range(1, 9)), np.full(8, 5.0))
    woa = WOAConfig(bounds=default_bounds("ccfgm"), agents=10, iterations=20, seed=2)
    result = tune_orders(series, "ccfgm", 8, woa)
    assert result.objective < 1e9
    assert 0.01 <= result.r_star <= 1.0
    assert 0.01 <= result.q_star <= 1.0
