"""Plotting companion for the indoor NLoS placement simulator.

Consumes the simulator's CSV exports; never imports the simulator.
"""

from .figures import (
    BoxStats,
    BoxplotResult,
    HeatmapResult,
    PlotKind,
    PlotRequest,
    compute_box_stats,
    plot_boxplot,
    plot_heatmap,
    render,
)
from .io import (
    MAP_COLUMNS,
    RECORDS_COLUMNS,
    MapRow,
    RecordRow,
    SchemaError,
    read_map,
    read_records,
)

__version__ = "0.1.0"

__all__ = [
    "BoxStats",
    "BoxplotResult",
    "HeatmapResult",
    "MapRow",
    "MAP_COLUMNS",
    "PlotKind",
    "PlotRequest",
    "RecordRow",
    "RECORDS_COLUMNS",
    "SchemaError",
    "compute_box_stats",
    "plot_boxplot",
    "plot_heatmap",
    "read_map",
    "read_records",
    "render",
    "__version__",
]
