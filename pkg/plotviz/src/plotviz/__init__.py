"""Render benchmark aggregate CSVs into per-method comparison figures."""

from .data import (
    AGG_COLUMNS,
    AggRow,
    FigureSpec,
    SchemaError,
    SeriesSpec,
    figure_specs,
    includes_rank,
    load_aggregate,
)
from .render import draw_figure, render

__all__ = [
    "AGG_COLUMNS",
    "AggRow",
    "FigureSpec",
    "SchemaError",
    "SeriesSpec",
    "draw_figure",
    "figure_specs",
    "includes_rank",
    "load_aggregate",
    "render",
]
