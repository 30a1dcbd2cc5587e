"""Render sweep CSV files as line figures.

Consumes only the public CSV contract of the simulator (header row with
``scenario_id, sweep_value, trial_index, rate, ...``): one line per series
group, the mean over trials at each x value, shaded by plus/minus one
standard error.  Rendering never recomputes rates; it is a pure function of
the CSV contents.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


@dataclass(frozen=True)
class PlotSpec:
    """What to draw: input CSVs, the x/series/value columns, output path."""

    csv_paths: tuple
    x_column: str = "sweep_value"
    group_column: str = "scenario_id"
    value_column: str = "rate"
    output_path: str = "sweep.png"
    log_x: bool = False
    log_y: bool = False
    title: str = ""


@dataclass(frozen=True)
class Series:
    """One plotted line: sorted x values with mean and standard error."""

    label: str
    x: np.ndarray
    mean: np.ndarray
    std_error: np.ndarray


def read_rows(path: str) -> list:
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: empty CSV, nothing to plot")
        rows = list(reader)
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return rows


def collect_series(spec: PlotSpec) -> list:
    """Group rows and reduce trials to mean and standard error per x value."""
    if not spec.csv_paths:
        raise ValueError("at least one CSV path is required")
    grouped = {}
    for path in spec.csv_paths:
        rows = read_rows(path)
        header = rows[0].keys()
        for column in (spec.x_column, spec.group_column, spec.value_column):
            if column not in header:
                raise ValueError(
                    f"{path}: column {column!r} not found; available columns: "
                    f"{', '.join(header)}")
        for row in rows:
            key = row[spec.group_column]
            x = float(row[spec.x_column])
            grouped.setdefault(key, {}).setdefault(x, []).append(
                float(row[spec.value_column]))

    series = []
    for label in sorted(grouped):
        points = grouped[label]
        xs = np.array(sorted(points))
        means = np.array([np.mean(points[x]) for x in xs])
        errors = np.array([
            np.std(points[x], ddof=1) / np.sqrt(len(points[x]))
            if len(points[x]) > 1 else 0.0
            for x in xs])
        series.append(Series(label=label, x=xs, mean=means, std_error=errors))
    return series


def render(spec: PlotSpec) -> list:
    """Draw the figure and write it to ``spec.output_path``.

    Returns the plotted series so callers can inspect exactly what was drawn.
    Output is deterministic for fixed input.
    """
    series = collect_series(spec)
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for entry in series:
        marker = "o" if entry.x.size == 1 else None
        line, = ax.plot(entry.x, entry.mean, label=entry.label, marker=marker)
        ax.fill_between(entry.x, entry.mean - entry.std_error,
                        entry.mean + entry.std_error,
                        color=line.get_color(), alpha=0.25, linewidth=0)
    if spec.log_x:
        ax.set_xscale("log")
    if spec.log_y:
        ax.set_yscale("log")
    ax.set_xlabel(spec.x_column)
    ax.set_ylabel(f"mean {spec.value_column}")
    if spec.title:
        ax.set_title(spec.title)
    ax.grid(True, linestyle=":", linewidth=0.8)
    ax.legend()
    fig.tight_layout()
    # fixed metadata keeps the PNG byte-stable across runs
    fig.savefig(spec.output_path, dpi=120, metadata={"Software": "risdof-plots"})
    plt.close(fig)
    return series


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="risdof-plots",
        description="Render sweep CSV files as mean lines with standard-error "
                    "shading")
    parser.add_argument("--csv", action="append", required=True,
                        help="input CSV (repeatable)")
    parser.add_argument("--x-column", default="sweep_value")
    parser.add_argument("--group-column", default="scenario_id")
    parser.add_argument("--value-column", default="rate")
    parser.add_argument("--out", default="sweep.png", help="output image path")
    parser.add_argument("--log-x", action="store_true")
    parser.add_argument("--log-y", action="store_true")
    parser.add_argument("--title", default="")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = PlotSpec(csv_paths=tuple(args.csv), x_column=args.x_column,
                    group_column=args.group_column,
                    value_column=args.value_column, output_path=args.out,
                    log_x=args.log_x, log_y=args.log_y, title=args.title)
    try:
        series = render(spec)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"{spec.output_path}: {len(series)} series")
    return 0


if __name__ == "__main__":
    sys.exit(main())
