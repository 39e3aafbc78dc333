"""End-to-end benchmark: tune, fit and evaluate every model on one dataset.

Produces, inside the output directory:

* ``report_<kind>.json`` — one full evaluation report per model;
* ``summary.csv`` — the year-by-year table (actual vs every model) with MAPE
  footer comments;
* ``summary.json`` — orders, parameters and MAPEs keyed by model;
* ``fig_series.csv`` / ``fig_ape.csv`` — plot data for the two figures;
* ``fig_series.png`` / ``fig_ape.png`` — rendered figures (optional).

Everything is deterministic for a fixed seed.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from .dataio import bundled_dataset, write_report
from .errors import DataError
from .metrics import EvaluationReport, evaluate
from .models import ModelConfig, fit_model
from .optimize import TUNABLE_KINDS, TuneResult, WOAConfig, default_bounds, tune_orders

__all__ = ["BENCHMARK_KINDS", "run_benchmark"]

BENCHMARK_KINDS = ("ccfgm", "gm11", "fgm", "caputo_gm", "pr2")


def _tuned_config(kind: str, result: TuneResult) -> ModelConfig:
    if kind == "ccfgm":
        return ModelConfig("ccfgm", r=result.r_star, q=result.q_star)
    if kind == "fgm":
        return ModelConfig("fgm", q=result.r_star)
    return ModelConfig("caputo_gm", p=result.r_star)


def _write_table_csv(path: Path, header: list[str], rows: list[list[object]],
                     footer: list[str] | None = None) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        for line in footer or []:
            fh.write(line + "\n")


def run_benchmark(
    case: str,
    seed: int = 42,
    outdir: str | Path | None = None,
    agents: int = 30,
    iterations: int = 100,
    render_figures: bool = True,
) -> dict:
    """Run the five-model comparison on a bundled dataset; returns the summary."""
    dataset = bundled_dataset(case)
    train = dataset.series.head(dataset.default_train_n)
    holdout = dataset.series.tail_from(dataset.default_train_n)
    if holdout is None:
        raise DataError(f"dataset {case!r} has no holdout points beyond the training range")
    outdir = Path(outdir) if outdir is not None else Path(f"benchmark-{case}")
    outdir.mkdir(parents=True, exist_ok=True)

    reports: dict[str, EvaluationReport] = {}
    summary_models: dict[str, dict] = {}
    for kind in BENCHMARK_KINDS:
        if kind in TUNABLE_KINDS:
            woa = WOAConfig(
                bounds=default_bounds(kind), agents=agents, iterations=iterations, seed=seed
            )
            tuned = tune_orders(dataset.series, kind, dataset.default_train_n, woa)
            config = _tuned_config(kind, tuned)
            evaluations = tuned.evaluations
        else:
            config = ModelConfig(kind)
            evaluations = None
        model = fit_model(train, config)
        report = evaluate(train, model, holdout)
        reports[kind] = report
        write_report(report, "json", outdir / f"report_{kind}.json")
        entry: dict = {
            "orders": report.orders,
            "params": report.params,
            "fit_mape": report.fit_mape,
            "test_mape": report.test_mape,
        }
        if evaluations is not None:
            entry["evaluations"] = evaluations
        summary_models[kind] = entry

    labels = [row.label for row in reports["ccfgm"].rows]
    actuals = [row.actual for row in reports["ccfgm"].rows]
    header = ["label", "actual", *BENCHMARK_KINDS]
    value_rows: list[list[object]] = []
    ape_rows: list[list[object]] = []
    for i, label in enumerate(labels):
        value_rows.append(
            [label, repr(actuals[i]), *(repr(reports[k].rows[i].predicted) for k in BENCHMARK_KINDS)]
        )
        ape_rows.append(
            [label, repr(actuals[i]), *(repr(reports[k].rows[i].ape_percent) for k in BENCHMARK_KINDS)]
        )

    footer = ["# fit_mape," + ",".join(repr(reports[k].fit_mape) for k in BENCHMARK_KINDS),
              "# test_mape," + ",".join(repr(reports[k].test_mape) for k in BENCHMARK_KINDS)]
    _write_table_csv(outdir / "summary.csv", header, value_rows, footer)
    _write_table_csv(outdir / "fig_series.csv", header, value_rows)
    _write_table_csv(outdir / "fig_ape.csv", header, ape_rows)

    summary = {
        "case": case,
        "seed": seed,
        "train_n": dataset.default_train_n,
        "labels": labels,
        "models": summary_models,
    }
    with (outdir / "summary.json").open("w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")

    if render_figures:
        from .figures import render_benchmark_figures

        render_benchmark_figures(case, reports, train_n=dataset.default_train_n, outdir=outdir)
    return summary
