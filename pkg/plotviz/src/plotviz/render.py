"""Matplotlib rendering of figure specifications to image files."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .data import METRIC_LABELS, FigureSpec, figure_specs, load_aggregate

BAND_ALPHA = 0.25


def draw_figure(spec: FigureSpec):
    """Build (but do not save) the matplotlib figure for one spec."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for series in spec.series:
        (line,) = ax.plot(
            series.xs,
            series.means,
            linestyle="-" if series.solid else "--",
            marker="o",
            label=series.method,
        )
        if series.band:
            lower = [m - s for m, s in zip(series.means, series.ses)]
            upper = [m + s for m, s in zip(series.means, series.ses)]
            ax.fill_between(
                series.xs, lower, upper,
                color=line.get_color(), alpha=BAND_ALPHA, linewidth=0,
            )
    if spec.log_y:
        ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel(METRIC_LABELS[spec.metric])
    ax.set_title(f"{spec.panel} (d_U = {spec.d_U})")
    ax.legend()
    fig.tight_layout()
    return fig


def render(
    aggregate_csv_path,
    out_dir,
    metrics: tuple[str, ...] = ("ot", "time"),
    log_all: bool = False,
) -> list[str]:
    """Render an aggregate CSV into image files; return the written paths."""
    rows = load_aggregate(aggregate_csv_path)
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for spec in figure_specs(rows, metrics=metrics, log_all=log_all):
        fig = draw_figure(spec)
        path = os.path.join(out_dir, spec.name)
        fig.savefig(path, dpi=150)
        plt.close(fig)
        paths.append(path)
    return paths
