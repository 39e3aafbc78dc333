"""Render benchmark figures to PNG files next to the delimited outputs.

Matplotlib is imported lazily with the Agg backend so headless runs work and
``--no-figures`` invocations never pay the import cost.
"""

from __future__ import annotations

from pathlib import Path

from .metrics import EvaluationReport

__all__ = ["render_benchmark_figures"]

_SERIES_STYLE = {
    "ccfgm": dict(color="#c0392b", marker="o"),
    "gm11": dict(color="#2980b9", marker="s"),
    "fgm": dict(color="#27ae60", marker="^"),
    "caputo_gm": dict(color="#8e44ad", marker="d"),
    "pr2": dict(color="#f39c12", marker="v"),
}


def render_benchmark_figures(
    case: str,
    reports: dict[str, EvaluationReport],
    train_n: int,
    outdir: str | Path,
) -> list[Path]:
    """Write fig_series.png (observed vs predicted) and fig_ape.png (APE bars)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    outdir = Path(outdir)
    kinds = list(reports)
    first = reports[kinds[0]]
    labels = [row.label for row in first.rows]
    actuals = [row.actual for row in first.rows]
    paths: list[Path] = []

    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.plot(labels, actuals, color="black", marker="*", linewidth=2, label="observed")
    for kind in kinds:
        values = [row.predicted for row in reports[kind].rows]
        ax.plot(labels, values, linewidth=1, markersize=4, alpha=0.85,
                label=kind, **_SERIES_STYLE.get(kind, {}))
    if 0 < train_n < len(labels):
        boundary = (labels[train_n - 1] + labels[train_n]) / 2
        ax.axvline(boundary, color="gray", linestyle="--", linewidth=1)
    ax.set_xlabel("period")
    ax.set_ylabel("value")
    ax.set_title(f"{case}: observed vs model predictions")
    ax.legend(fontsize=8)
    fig.tight_layout()
    series_path = outdir / "fig_series.png"
    fig.savefig(series_path, dpi=150)
    plt.close(fig)
    paths.append(series_path)

    fig, ax = plt.subplots(figsize=(8, 4.5))
    width = 0.8 / len(kinds)
    for idx, kind in enumerate(kinds):
        apes = [row.ape_percent for row in reports[kind].rows]
        positions = [x + (idx - (len(kinds) - 1) / 2) * width for x in range(len(labels))]
        ax.bar(positions, apes, width=width, label=kind,
               color=_SERIES_STYLE.get(kind, {}).get("color"))
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels([str(x) for x in labels], rotation=45, fontsize=8)
    ax.set_xlabel("period")
    ax.set_ylabel("APE (%)")
    ax.set_title(f"{case}: absolute percentage error by period")
    ax.legend(fontsize=8)
    fig.tight_layout()
    ape_path = outdir / "fig_ape.png"
    fig.savefig(ape_path, dpi=150)
    plt.close(fig)
    paths.append(ape_path)
    return paths
