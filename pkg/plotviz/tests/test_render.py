"""Rendering: file outputs and figure-object geometry before saving."""

from matplotlib.collections import PolyCollection

from plotviz.data import figure_specs, load_aggregate
from plotviz.render import draw_figure, render


class TestRenderFiles:
    def test_four_figures_written(self, agg_csv, tmp_path):
        paths = render(agg_csv, tmp_path / "figs")
        assert len(paths) == 4
        for path in paths:
            assert path.endswith(".png")
            assert (tmp_path / "figs").joinpath(path.split("/")[-1]).stat().st_size > 0

    def test_metric_restriction(self, agg_csv, tmp_path):
        paths = render(agg_csv, tmp_path, metrics=("time",))
        assert len(paths) == 2
        assert all("mean_time_ns" in path for path in paths)


class TestFigureGeometry:
    def test_line_styles_match_spec(self, agg_csv):
        for spec in figure_specs(load_aggregate(agg_csv)):
            fig = draw_figure(spec)
            ax = fig.axes[0]
            assert len(ax.lines) == len(spec.series)
            for line, series in zip(ax.lines, spec.series):
                assert line.get_label() == series.method
                assert line.get_linestyle() == ("-" if series.solid else "--")
                assert tuple(line.get_xdata()) == series.xs
                assert tuple(line.get_ydata()) == series.means
            assert ax.get_yscale() == ("log" if spec.log_y else "linear")

    def test_band_spans_mean_plus_minus_se(self, agg_csv):
        for spec in figure_specs(load_aggregate(agg_csv)):
            fig = draw_figure(spec)
            ax = fig.axes[0]
            bands = [
                c for c in ax.collections if isinstance(c, PolyCollection)
            ]
            assert len(bands) == 1  # exactly one series carries the band
            series = next(s for s in spec.series if s.band)
            vertices = bands[0].get_paths()[0].vertices
            for x, mean, se in zip(series.xs, series.means, series.ses):
                ys = [y for vx, y in vertices if vx == x]
                assert min(ys) == mean - se
                assert max(ys) == mean + se

    def test_rendering_is_pure(self, agg_csv):
        first = figure_specs(load_aggregate(agg_csv))
        second = figure_specs(load_aggregate(agg_csv))
        for a, b in zip(first, second):
            fig_a, fig_b = draw_figure(a), draw_figure(b)
            for line_a, line_b in zip(fig_a.axes[0].lines, fig_b.axes[0].lines):
                assert tuple(line_a.get_ydata()) == tuple(line_b.get_ydata())
