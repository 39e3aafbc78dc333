"""Command-line interface: fit, forecast, tune and benchmark workflows.

Exit codes are a stable contract: 0 on success, 2 for input/flag/data
problems, 3 for numeric degeneracy or non-convergence.  The default seed for
randomized paths is 42; the environment variable ``GREYCAST_SEED`` overrides
it when no ``--seed`` flag is given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .bench import BENCHMARK_KINDS, run_benchmark
from .dataio import Dataset, bundled_dataset, dump_report, read_csv, write_report
from .errors import DataError, GreycastError
from .fracops import TimeSeries
from .metrics import evaluate
from .models import MODEL_KINDS, ModelConfig, fit_model, predict_model
from .optimize import TUNABLE_KINDS, WOAConfig, default_bounds, tune_orders

DEFAULT_SEED = 42


def _resolve_seed(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("GREYCAST_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise DataError(f"GREYCAST_SEED must be an integer, got {env!r}") from None


def _add_source_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--input", metavar="PATH", help="CSV file with a label,value header")
    group.add_argument("--dataset", metavar="NAME", help="bundled dataset name (energy, coal)")


def _load_series(args: argparse.Namespace) -> tuple[TimeSeries, Dataset | None]:
    if args.dataset is not None:
        dataset = bundled_dataset(args.dataset)
        return dataset.series, dataset
    return read_csv(args.input), None


def _add_order_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--r", type=float, default=1.0,
                        help="difference order in (0,1]; for fgm this is its single order")
    parser.add_argument("--q", type=float, default=1.0, help="accumulation order in (0,1]")
    parser.add_argument("--p", type=float, default=None, help="Caputo order in (0,1)")
    parser.add_argument("--lambda", dest="lam", type=float, default=0.5,
                        help="background-value weight in [0,1]")


def _make_config(model: str, r: float, q: float, p: float | None, lam: float) -> ModelConfig:
    if model in ("ccfgm", "gm11"):
        if p is not None:
            raise DataError("--p applies only to caputo_gm")
        return ModelConfig(model, r=r, q=q, lam=lam)
    if model == "fgm":
        if p is not None:
            raise DataError("--p applies only to caputo_gm")
        if q != 1.0:
            raise DataError("fgm takes a single order; pass it as --r")
        return ModelConfig("fgm", q=r, lam=lam)
    if model == "caputo_gm":
        if r != 1.0 or q != 1.0:
            raise DataError("caputo_gm is configured by --p only; --r/--q do not apply")
        if p is None:
            raise DataError("caputo_gm requires --p")
        return ModelConfig("caputo_gm", p=p, lam=lam)
    if r != 1.0 or q != 1.0 or p is not None:
        raise DataError("pr2 takes no order flags")
    return ModelConfig("pr2")


def cmd_fit(args: argparse.Namespace) -> int:
    series, _ = _load_series(args)
    config = _make_config(args.model, args.r, args.q, args.p, args.lam)
    model = fit_model(series, config)
    report = evaluate(series, model)
    if args.output is not None:
        write_report(report, args.format, args.output)
    else:
        dump_report(report, args.format, sys.stdout)
    return 0


def cmd_forecast(args: argparse.Namespace) -> int:
    if args.horizon < 0:
        raise DataError(f"--horizon must be non-negative, got {args.horizon}")
    series, _ = _load_series(args)
    config = _make_config(args.model, args.r, args.q, args.p, args.lam)
    model = fit_model(series, config)
    if args.horizon == 0:
        return 0
    predictions = predict_model(model, len(series) + args.horizon)
    for label, value in zip(series.future_labels(args.horizon), predictions[len(series):]):
        print(f"{label},{float(value)!r}")
    return 0


def cmd_tune(args: argparse.Namespace) -> int:
    series, dataset = _load_series(args)
    train_n = args.train_n
    if train_n is None:
        train_n = dataset.default_train_n if dataset is not None else len(series)
    seed = _resolve_seed(args.seed)
    woa = WOAConfig(
        bounds=default_bounds(args.model),
        agents=args.agents,
        iterations=args.iters,
        seed=seed,
    )
    result = tune_orders(series, args.model, train_n, woa)
    line = {
        "model": args.model,
        "r_star": result.r_star,
        "q_star": result.q_star,
        "objective": result.objective,
        "evaluations": result.evaluations,
        "seed": seed,
        "train_n": train_n,
    }
    print(json.dumps(line))
    return 0


def cmd_benchmark(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    outdir = args.output if args.output is not None else f"benchmark-{args.case}"
    started = time.perf_counter()
    summary = run_benchmark(
        args.case,
        seed=seed,
        outdir=outdir,
        agents=args.agents,
        iterations=args.iters,
        render_figures=not args.no_figures,
    )
    elapsed = time.perf_counter() - started
    print(f"case={summary['case']} seed={summary['seed']} train_n={summary['train_n']}")
    for kind in BENCHMARK_KINDS:
        entry = summary["models"][kind]
        orders = " ".join(f"{k}={v:.6f}" for k, v in entry["orders"].items()) or "-"
        print(
            f"{kind:<10} fit_mape={entry['fit_mape']:.4f}%  "
            f"test_mape={entry['test_mape']:.4f}%  {orders}"
        )
    print(f"outputs written to {outdir} ({elapsed:.1f}s)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="greycast",
        description="Fractional grey forecasting models for short positive series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="fit one model at fixed orders and report errors")
    _add_source_flags(p_fit)
    p_fit.add_argument("--model", required=True, choices=MODEL_KINDS)
    _add_order_flags(p_fit)
    p_fit.add_argument("--output", metavar="PATH", default=None,
                       help="report destination (default: standard output)")
    p_fit.add_argument("--format", choices=("json", "csv"), default="json")
    p_fit.set_defaults(func=cmd_fit)

    p_fc = sub.add_parser("forecast", help="fit and print future values as label,value lines")
    _add_source_flags(p_fc)
    p_fc.add_argument("--model", required=True, choices=MODEL_KINDS)
    _add_order_flags(p_fc)
    p_fc.add_argument("--horizon", type=int, required=True, help="number of periods ahead")
    p_fc.set_defaults(func=cmd_forecast)

    p_tune = sub.add_parser("tune", help="search fractional orders minimizing fit MAPE")
    _add_source_flags(p_tune)
    p_tune.add_argument("--model", required=True, choices=TUNABLE_KINDS)
    p_tune.add_argument("--train-n", type=int, default=None,
                        help="training points (default: dataset convention or all)")
    p_tune.add_argument("--seed", type=int, default=None)
    p_tune.add_argument("--agents", type=int, default=30)
    p_tune.add_argument("--iters", type=int, default=100)
    p_tune.set_defaults(func=cmd_tune)

    p_bench = sub.add_parser("benchmark", help="tune and compare all models on a bundled case")
    p_bench.add_argument("--case", required=True, help="bundled dataset name (energy, coal)")
    p_bench.add_argument("--seed", type=int, default=None)
    p_bench.add_argument("--output", metavar="DIR", default=None,
                         help="output directory (default: benchmark-<case>)")
    p_bench.add_argument("--agents", type=int, default=30)
    p_bench.add_argument("--iters", type=int, default=100)
    p_bench.add_argument("--no-figures", action="store_true",
                         help="skip PNG rendering, keep only CSV/JSON outputs")
    p_bench.set_defaults(func=cmd_benchmark)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except GreycastError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
