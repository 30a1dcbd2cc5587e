"""Figure rendering for risdof sweep CSVs."""

from .render import PlotSpec, Series, collect_series, render
