"""Dataset ingestion, bundled demo datasets, and report serialization."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import IO, Iterable

from .errors import DataError
from .fracops import TimeSeries
from .metrics import EvaluationReport

__all__ = [
    "Dataset",
    "BUNDLED_DATASETS",
    "read_csv",
    "write_csv",
    "bundled_dataset",
    "report_to_dict",
    "dump_report",
    "write_report",
]

#: Names of the datasets shipped inside the package, each a 13-point annual
#: series (2005-2017) conventionally fitted on its first 11 points.
BUNDLED_DATASETS = ("energy", "coal")

_BUNDLED_TRAIN_N = 11


@dataclass(frozen=True)
class Dataset:
    """A named series with its conventional train/holdout split point."""

    name: str
    series: TimeSeries
    default_train_n: int

    def __post_init__(self) -> None:
        if not 1 <= self.default_train_n <= len(self.series):
            raise DataError(
                f"default_train_n={self.default_train_n} is outside the series "
                f"length {len(self.series)}"
            )


def _parse_series(lines: Iterable[str], source: str) -> TimeSeries:
    reader = csv.reader(lines)
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != ["label", "value"]:
        raise DataError(f"{source}:1: expected header 'label,value', got {header!r}")
    labels: list[int] = []
    values: list[float] = []
    for lineno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 2:
            raise DataError(f"{source}:{lineno}: expected two fields, got {len(row)}")
        raw_label, raw_value = row[0].strip(), row[1].strip()
        try:
            label = int(raw_label)
        except ValueError:
            raise DataError(f"{source}:{lineno}: label {raw_label!r} is not an integer") from None
        try:
            value = float(raw_value)
        except ValueError:
            raise DataError(f"{source}:{lineno}: value {raw_value!r} is not numeric") from None
        if not value > 0.0:
            raise DataError(f"{source}:{lineno}: value {value} is not strictly positive")
        if labels and label <= labels[-1]:
            raise DataError(
                f"{source}:{lineno}: label {label} does not increase past {labels[-1]}"
            )
        labels.append(label)
        values.append(value)
    if not labels:
        raise DataError(f"{source}: no data rows found")
    return TimeSeries(tuple(labels), values)


def read_csv(path: str | Path) -> TimeSeries:
    """Parse a ``label,value`` CSV file into a validated series.

    Every rejection (bad header, non-numeric or non-positive value,
    non-increasing label) names the offending line.
    """
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            return _parse_series(fh, str(path))
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc


def write_csv(series: TimeSeries, path: str | Path) -> None:
    """Write a series in the same ``label,value`` layout ``read_csv`` accepts."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["label", "value"])
        for label, value in zip(series.labels, series.values):
            writer.writerow([label, repr(float(value))])


def bundled_dataset(name: str) -> Dataset:
    """Load one of the packaged datasets (``energy`` or ``coal``)."""
    if name not in BUNDLED_DATASETS:
        raise DataError(
            f"unknown dataset {name!r}; bundled datasets are {', '.join(BUNDLED_DATASETS)}"
        )
    text = (resources.files("greycast") / "data" / f"{name}.csv").read_text(encoding="utf-8")
    series = _parse_series(text.splitlines(), f"{name}.csv")
    return Dataset(name, series, _BUNDLED_TRAIN_N)


def report_to_dict(report: EvaluationReport) -> dict:
    """JSON-ready view of a report (field names are part of the public contract)."""
    out: dict = {
        "model": report.model_kind,
        "orders": report.orders,
        "params": report.params,
        "rows": [
            {
                "label": row.label,
                "actual": row.actual,
                "predicted": row.predicted,
                "ape": row.ape_percent,
            }
            for row in report.rows
        ],
        "fit_mape": report.fit_mape,
    }
    if report.test_mape is not None:
        out["test_mape"] = report.test_mape
    if report.horizon:
        out["horizon"] = [{"label": label, "predicted": value} for label, value in report.horizon]
    return out


def _write_report_csv(report: EvaluationReport, fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["label", "actual", "predicted", "ape_percent"])
    for row in report.rows:
        writer.writerow([row.label, repr(row.actual), repr(row.predicted), repr(row.ape_percent)])
    for label, value in report.horizon:
        writer.writerow([label, "", repr(value), ""])
    fh.write(f"# fit_mape,{report.fit_mape!r}\n")
    if report.test_mape is not None:
        fh.write(f"# test_mape,{report.test_mape!r}\n")


def dump_report(report: EvaluationReport, format: str, fh: IO[str]) -> None:
    """Serialize a report as ``json`` or ``csv`` to an open text stream.

    The CSV layout is ``label,actual,predicted,ape_percent`` rows (horizon
    rows leave actual and APE empty) followed by ``#``-prefixed MAPE comment
    lines, so the file stays loadable by anything that skips comments.
    """
    if format not in ("json", "csv"):
        raise DataError(f"unknown report format {format!r}; expected 'json' or 'csv'")
    if format == "json":
        json.dump(report_to_dict(report), fh, indent=2)
        fh.write("\n")
    else:
        _write_report_csv(report, fh)


def write_report(report: EvaluationReport, format: str, path: str | Path) -> None:
    """Serialize a report to a file; see :func:`dump_report` for the layouts."""
    if format not in ("json", "csv"):
        raise DataError(f"unknown report format {format!r}; expected 'json' or 'csv'")
    path = Path(path)
    try:
        with path.open("w", encoding="utf-8") as fh:
            dump_report(report, format, fh)
    except OSError as exc:
        raise DataError(f"cannot write {path}: {exc}") from exc
