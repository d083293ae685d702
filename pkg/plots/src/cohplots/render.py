"""Render figure panels from the CSV schemas the cohkit CLI documents.

This layer never recomputes physics: every plotted number is read from the
CSV, curves are drawn in row order, and solid/dashed styling distinguishes
complete-basis series from truncated-basis ones.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")  # batch renderer, never interactive
import matplotlib.pyplot as plt


class RenderError(Exception):
    """Base error for panel rendering."""


class EmptyCsvError(RenderError):
    """The CSV has a header but no data rows (or no header at all)."""


class MissingColumnError(RenderError):
    """A column the panel needs is absent; the message names it."""


PANEL_AXES = {
    "a": ("mu", "coherence"),
    "b": ("mu", "coherence"),
    "c": ("t", "coherence"),
    "d": ("g", "coherence"),
}

# column -> line style; solid = full basis, dashed = truncated estimator
PANEL_SERIES = {
    "a": [("C", "-"), ("C_L", "-"), ("delta", "-")],
    "b": [("C", "-"), ("C_L", "-"), ("delta", "-"),
          ("C_tr", "--"), ("C_L_tr", "--"), ("delta_tr", "--")],
    "d": [("C_full", "-"), ("C_truncated_frobenius", "--"),
          ("C_truncated_schatten1", "--")],
}


@dataclass(frozen=True)
class PanelSpec:
    """One panel: its id, input CSV, output image, and styling."""

    panel: str
    csv_path: str
    out_path: str
    x_label: str | None = None
    y_label: str | None = None
    styles: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.panel not in PANEL_AXES:
            raise RenderError(f"unknown panel {self.panel!r}; expected a, b, c, or d")


def load_csv(path: str) -> tuple[list[str], list[dict]]:
    """Header and rows (as dicts of raw strings) of a CSV file."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        table = list(reader)
    if not table:
        raise EmptyCsvError(f"{path}: file is empty")
    header, data = table[0], table[1:]
    if not data:
        raise EmptyCsvError(f"{path}: no data rows")
    return header, [dict(zip(header, row)) for row in data]


def _column(rows: list[dict], name: str, path: str) -> list[float]:
    if name not in rows[0]:
        raise MissingColumnError(f"{path}: column {name!r} not found")
    return [float(r[name]) for r in rows]


def _series_for_panel_c(rows: list[dict], path: str):
    """Group panel-c rows into one total-coherence curve per (n, basis).

    Accepts both the fig1 schema (with an n column) and the squeeze schema
    (without); rows keep file order inside each group.
    """
    if "basis" not in rows[0]:
        raise MissingColumnError(f"{path}: column 'basis' not found")
    has_n = "n" in rows[0]
    groups: dict = {}
    for r in rows:
        key = (r["n"] if has_n else "", r["basis"])
        groups.setdefault(key, []).append(r)
    series = []
    for (n, basis), grp in groups.items():
        label = f"n={n} {basis}" if n else basis
        style = "--" if "spin" in basis else "-"
        series.append((label, style,
                       _column(grp, "t", path), _column(grp, "C", path)))
    return series


def render_panel(spec: PanelSpec):
    """Draw one panel and write the image; returns the matplotlib figure.

    Raises MissingColumnError / EmptyCsvError on schema problems.
    """
    header, rows = load_csv(spec.csv_path)
    fig, ax = plt.subplots(figsize=(5, 3.5))
    if spec.panel == "c":
        for label, style, xs, ys in _series_for_panel_c(rows, spec.csv_path):
            ax.plot(xs, ys, spec.styles.get(label, style), label=label)
    else:
        x_col = PANEL_AXES[spec.panel][0]
        xs = _column(rows, x_col, spec.csv_path)
        for name, style in PANEL_SERIES[spec.panel]:
            ys = _column(rows, name, spec.csv_path)
            ax.plot(xs, ys, spec.styles.get(name, style), label=name)
    ax.set_xlabel(spec.x_label or PANEL_AXES[spec.panel][0])
    ax.set_ylabel(spec.y_label or PANEL_AXES[spec.panel][1])
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(spec.out_path)
    return fig


def plotted_series(fig) -> list[tuple[list[float], list[float]]]:
    """Re-extract the (x, y) data of every line in a rendered figure."""
    out = []
    for ax in fig.axes:
        for line in ax.get_lines():
            out.append((list(map(float, line.get_xdata())),
                        list(map(float, line.get_ydata()))))
    return out
