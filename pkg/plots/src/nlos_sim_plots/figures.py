"""Figure builders for campaign and placement-map CSVs.

Everything here is a pure function of the parsed CSV rows: box
statistics are rank statistics of the recorded dB values, the heatmap
colors are the recorded dB values, and the best-position marker is the
highest recorded feasible row.  No link physics is ever recomputed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import MapRow, RecordRow, read_map, read_records

SENTINEL_COLOR = "#b0b0b0"
BEST_MARKER_COLOR = "#d62728"
_TECH_COLORS = {"irs": "#1f77b4", "mr": "#ff7f0e"}
_FALLBACK_TECH_COLOR = "#2ca02c"


class PlotKind(enum.Enum):
    BOXPLOT = "boxplot"
    HEATMAP = "heatmap"


@dataclass(frozen=True)
class PlotRequest:
    """One figure job: which CSV, which figure, where to write it."""

    input_path: Path
    kind: PlotKind
    output_path: Path
    title: str | None = None
    ylabel: str | None = None


@dataclass(frozen=True)
class BoxStats:
    """Rank statistics behind one drawn box (whiskers at min/max)."""

    env_size_m: float
    n_elements: int
    technology: str
    whisker_low: float
    q1: float
    median: float
    q3: float
    whisker_high: float
    n_samples: int


@dataclass
class BoxplotResult:
    figure: "plt.Figure"
    panels: list[tuple[float, list[BoxStats]]] = field(default_factory=list)

    @property
    def n_panels(self) -> int:
        return len(self.panels)

    def stats_for(self, env_size_m: float, n_elements: int, technology: str) -> BoxStats:
        for env, stats in self.panels:
            if env != env_size_m:
                continue
            for box in stats:
                if box.n_elements == n_elements and box.technology == technology:
                    return box
        raise KeyError((env_size_m, n_elements, technology))


@dataclass
class HeatmapResult:
    figure: "plt.Figure"
    n_feasible: int
    n_sentinel: int
    best: MapRow | None
    value_artist: object | None
    sentinel_artist: object | None


def compute_box_stats(rows: list[RecordRow]) -> list[BoxStats]:
    """Group feasible records by (room, element count, technology).

    Cells without a single feasible run get no box at all rather than
    a fabricated placeholder.
    """
    cells: dict[tuple[float, int, str], list[float]] = {}
    for row in rows:
        if not row.feasible:
            continue
        cells.setdefault((row.env_size_m, row.n_elements, row.technology), []).append(
            row.best_snr_db
        )
    stats = []
    for (env, n, tech), values in sorted(cells.items()):
        arr = np.asarray(values)
        lo, q1, med, q3, hi = np.percentile(arr, [0.0, 25.0, 50.0, 75.0, 100.0])
        stats.append(
            BoxStats(
                env_size_m=env,
                n_elements=n,
                technology=tech,
                whisker_low=float(lo),
                q1=float(q1),
                median=float(med),
                q3=float(q3),
                whisker_high=float(hi),
                n_samples=len(values),
            )
        )
    return stats


def plot_boxplot(
    rows: list[RecordRow],
    out_path: str | Path | None = None,
    title: str | None = None,
    ylabel: str | None = None,
) -> BoxplotResult:
    stats = compute_box_stats(rows)
    if not stats:
        raise ValueError("no feasible records to plot")
    env_sizes = sorted({s.env_size_m for s in stats})

    fig, axes = plt.subplots(
        1, len(env_sizes), figsize=(4.0 * len(env_sizes), 4.5), sharey=True, squeeze=False
    )
    result = BoxplotResult(figure=fig)
    for ax, env in zip(axes[0], env_sizes):
        panel = [s for s in stats if s.env_size_m == env]
        panel.sort(key=lambda s: (s.n_elements, s.technology))
        bxp_stats = [
            {
                "med": s.median,
                "q1": s.q1,
                "q3": s.q3,
                "whislo": s.whisker_low,
                "whishi": s.whisker_high,
                "label": f"{s.n_elements}\n{s.technology}",
            }
            for s in panel
        ]
        drawn = ax.bxp(bxp_stats, showfliers=False, patch_artist=True)
        for patch, s in zip(drawn["boxes"], panel):
            patch.set_facecolor(_TECH_COLORS.get(s.technology, _FALLBACK_TECH_COLOR))
            patch.set_alpha(0.7)
        ax.set_title(f"{env:g} m room")
        ax.set_xlabel("elements / technology")
        ax.grid(axis="y", alpha=0.3)
        result.panels.append((env, panel))
    axes[0][0].set_ylabel(ylabel or "best placement SNR [dB]")
    if title:
        fig.suptitle(title)
    fig.tight_layout()

    if out_path is not None:
        fig.savefig(out_path, dpi=150)
    return result


def _marker_sizes(ax, xs: np.ndarray, ys: np.ndarray, fig) -> float:
    """Square marker area that roughly tiles the candidate pitch."""
    pitches = []
    for vals in (xs, ys):
        uniq = np.unique(vals)
        if len(uniq) > 1:
            pitches.append(float(np.min(np.diff(uniq))))
    pitch = min(pitches) if pitches else 0.1

    span_x = float(xs.max() - xs.min()) + 2.0 * pitch
    ax.set_xlim(xs.min() - pitch, xs.max() + pitch)
    ax.set_ylim(ys.min() - pitch, ys.max() + pitch)
    axis_points = fig.get_size_inches()[0] * 72.0 * 0.70
    side_points = max(pitch / span_x * axis_points, 2.0)
    return side_points**2


def plot_heatmap(
    rows: list[MapRow],
    out_path: str | Path | None = None,
    title: str | None = None,
    ylabel: str | None = None,
) -> HeatmapResult:
    if not rows:
        raise ValueError("map CSV holds no candidate rows")
    xs = np.array([r.x_m for r in rows])
    ys = np.array([r.y_m for r in rows])
    feasible = np.array([r.feasible for r in rows], dtype=bool)
    snr = np.array([r.snr_db for r in rows])

    fig, ax = plt.subplots(figsize=(6.5, 5.5))
    size = _marker_sizes(ax, xs, ys, fig)
    ax.set_aspect("equal")

    value_artist = None
    if feasible.any():
        value_artist = ax.scatter(
            xs[feasible], ys[feasible], c=snr[feasible], s=size, marker="s",
            cmap="viridis", linewidths=0,
        )
        fig.colorbar(value_artist, ax=ax, label="SNR [dB]")
    sentinel_artist = None
    if (~feasible).any():
        sentinel_artist = ax.scatter(
            xs[~feasible], ys[~feasible], color=SENTINEL_COLOR, s=size, marker="s",
            linewidths=0, label="infeasible",
        )

    best = None
    if feasible.any():
        best_idx = int(np.flatnonzero(feasible)[np.argmax(snr[feasible])])
        best = rows[best_idx]
        ax.plot(
            best.x_m, best.y_m, marker="*", markersize=16,
            markeredgecolor="black", color=BEST_MARKER_COLOR, linestyle="none",
            label=f"best: {best.snr_db:.1f} dB",
        )
    if sentinel_artist is not None or best is not None:
        ax.legend(loc="upper right", framealpha=0.9)

    ax.set_xlabel("x [m]")
    ax.set_ylabel(ylabel or "y [m]")
    if title:
        ax.set_title(title)
    fig.tight_layout()

    if out_path is not None:
        fig.savefig(out_path, dpi=150)
    return HeatmapResult(
        figure=fig,
        n_feasible=int(feasible.sum()),
        n_sentinel=int((~feasible).sum()),
        best=best,
        value_artist=value_artist,
        sentinel_artist=sentinel_artist,
    )


def render(request: PlotRequest) -> None:
    """Execute one figure job and release the figure."""
    if request.kind is PlotKind.BOXPLOT:
        rows = read_records(request.input_path)
        result = plot_boxplot(
            rows, request.output_path, title=request.title, ylabel=request.ylabel
        )
    else:
        cells = read_map(request.input_path)
        result = plot_heatmap(
            cells, request.output_path, title=request.title, ylabel=request.ylabel
        )
    plt.close(result.figure)
