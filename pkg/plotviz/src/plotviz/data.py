"""Pure data layer: CSV loading and figure specifications.

Everything that determines what a figure shows lives here as plain data
(:class:`FigureSpec`), so rendering purity and band geometry can be
asserted without decoding image files.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

AGG_COLUMNS = (
    "n", "d_U", "method",
    "mean_ot", "se_ot", "mean_time_ns", "se_time_ns", "z_p", "prop_false",
)

SINGLE_MEASURES = ("rank", "penalty", "suffix")

METRICS = {"ot": "mean_ot", "time": "mean_time_ns"}
SE_FOR_METRIC = {"mean_ot": "se_ot", "mean_time_ns": "se_time_ns"}
PANELS = ("single-measures", "all-combinations")

METRIC_LABELS = {
    "mean_ot": "mean outcomes traversed",
    "mean_time_ns": "mean query time (ns)",
}


class SchemaError(ValueError):
    """The CSV does not match the aggregate schema."""


@dataclass(frozen=True)
class AggRow:
    n: int
    d_U: int
    method: str
    mean_ot: float
    se_ot: float
    mean_time_ns: float
    se_time_ns: float
    z_p: float
    prop_false: float


@dataclass(frozen=True)
class SeriesSpec:
    """One plotted line: a method's metric against n, with its SE."""

    method: str
    xs: tuple[int, ...]
    means: tuple[float, ...]
    ses: tuple[float, ...]
    solid: bool
    band: bool


@dataclass(frozen=True)
class FigureSpec:
    name: str
    metric: str  # "mean_ot" or "mean_time_ns"
    panel: str  # "single-measures" or "all-combinations"
    d_U: int
    log_y: bool
    series: tuple[SeriesSpec, ...]


def includes_rank(method: str) -> bool:
    return "rank" in method.split("+")


def load_aggregate(path) -> list[AggRow]:
    """Read an aggregate CSV; raise :class:`SchemaError` on any mismatch."""
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError("empty file, expected an aggregate CSV header")
        if tuple(header) != AGG_COLUMNS:
            raise SchemaError(
                f"header {header} does not match aggregate schema "
                f"{list(AGG_COLUMNS)}"
            )
        rows = []
        for lineno, values in enumerate(reader, start=2):
            if len(values) != len(AGG_COLUMNS):
                raise SchemaError(f"line {lineno}: expected {len(AGG_COLUMNS)} fields")
            try:
                rows.append(
                    AggRow(
                        n=int(values[0]),
                        d_U=int(values[1]),
                        method=values[2],
                        mean_ot=float(values[3]),
                        se_ot=float(values[4]),
                        mean_time_ns=float(values[5]),
                        se_time_ns=float(values[6]),
                        z_p=float(values[7]),
                        prop_false=float(values[8]),
                    )
                )
            except ValueError as exc:
                raise SchemaError(f"line {lineno}: {exc}") from exc
    if not rows:
        raise SchemaError("no data rows")
    return rows


def _series(rows: list[AggRow], method: str, metric: str) -> SeriesSpec:
    points = sorted(
        (r for r in rows if r.method == method), key=lambda r: r.n
    )
    se_field = SE_FOR_METRIC[metric]
    return SeriesSpec(
        method=method,
        xs=tuple(r.n for r in points),
        means=tuple(getattr(r, metric) for r in points),
        ses=tuple(getattr(r, se_field) for r in points),
        solid=includes_rank(method),
        band=method == "rank",
    )


def figure_specs(
    rows: list[AggRow],
    metrics: tuple[str, ...] = ("ot", "time"),
    log_all: bool = False,
) -> list[FigureSpec]:
    """Figure specifications: metric x panel per d_U group, deterministic.

    Single-measure panels get a log y-axis (the suffix-only curve grows much
    faster than the rest); ``log_all`` extends that to combination panels.
    """
    if not rows:
        raise SchemaError("no data rows")
    unknown = set(metrics) - set(METRICS)
    if unknown:
        raise ValueError(f"unknown metrics {sorted(unknown)}; expected ot/time")
    figures = []
    for d_U in sorted({r.d_U for r in rows}):
        group = [r for r in rows if r.d_U == d_U]
        methods = sorted({r.method for r in group})
        for key in metrics:
            metric = METRICS[key]
            for panel in PANELS:
                if panel == "single-measures":
                    chosen = [m for m in SINGLE_MEASURES if m in methods]
                else:
                    chosen = methods
                figures.append(
                    FigureSpec(
                        name=f"{metric}_{panel}_du{d_U}.png",
                        metric=metric,
                        panel=panel,
                        d_U=d_U,
                        log_y=panel == "single-measures" or log_all,
                        series=tuple(_series(group, m, metric) for m in chosen),
                    )
                )
    return figures
