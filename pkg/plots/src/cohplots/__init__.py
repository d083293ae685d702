"""Figure-panel renderer for cohkit CSV outputs."""

from .render import (
    EmptyCsvError,
    MissingColumnError,
    PanelSpec,
    RenderError,
    load_csv,
    plotted_series,
    render_panel,
)

__version__ = "0.1.0"
