"""Monte Carlo campaign over random endpoint pairs.

Each run draws a random source/destination pair, optimizes both
technologies, and records the best achievable SNRs.  Reproducibility
contract: the endpoint stream of a run is a dedicated PCG64 substream
keyed by (seed, environment index, run id), so results do not depend
on worker count or execution order, and runs with matched seeds see
identical geometry across element counts within an environment.
"""

from __future__ import annotations

import itertools
import multiprocessing
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .direct_link import ThresholdModel
from .geometry import Environment, Point2
from .irs_channel import ArrayConfig
from .mr_channel import MrOrientationPolicy
from .placement import Technology, optimize_irs, optimize_mr
from .radio import RadioConfig

_SAMPLE_MAX_ATTEMPTS = 1000


@dataclass(frozen=True)
class ScenarioConfig:
    """Full campaign parameterization.

    Defaults reproduce the reference indoor scenario: square rooms of
    3, 6 and 10 m, element counts 100/400/900, 0.1 m candidate step,
    quarter-wavelength-square elements at a 30 GHz carrier.
    """

    env_sizes_m: tuple[float, ...] = (3.0, 6.0, 10.0)
    element_counts: tuple[int, ...] = (100, 400, 900)
    step_m: float = 0.1
    runs: int = 1000
    seed: int = 1
    min_separation_m: float = 0.1
    policy: MrOrientationPolicy = MrOrientationPolicy.BORESIGHT_PER_HOP
    threshold_model: ThresholdModel = ThresholdModel.APERTURE
    radio: RadioConfig = field(default_factory=RadioConfig)
    element_area_m2: float | None = None

    def __post_init__(self) -> None:
        if not self.env_sizes_m:
            raise ValueError("env_sizes_m must not be empty")
        if not self.element_counts:
            raise ValueError("element_counts must not be empty")
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1, got {self.runs!r}")
        if self.min_separation_m < 0.0:
            raise ValueError(
                f"min_separation_m must be >= 0, got {self.min_separation_m!r}"
            )
        smallest = min(self.env_sizes_m)
        if self.step_m <= 0.0 or self.step_m > smallest:
            raise ValueError(
                f"step_m must satisfy 0 < step <= {smallest}, got {self.step_m!r}"
            )
        if self.min_separation_m >= smallest * np.sqrt(2.0):
            raise ValueError(
                "min_separation_m exceeds the diagonal of the smallest room"
            )
        for count in self.element_counts:
            self.array_for(count)  # validates perfect squares eagerly

    def array_for(self, n_elements: int) -> ArrayConfig:
        area = (
            self.radio.default_element_area_m2
            if self.element_area_m2 is None
            else self.element_area_m2
        )
        return ArrayConfig(n_elements=n_elements, element_area_m2=area)


@dataclass(frozen=True)
class RunRecord:
    run_id: int
    env_size_m: float
    n_elements: int
    src: Point2
    dst: Point2
    irs_best: tuple[float, float, float] | None  # (x, y, snr_db)
    mr_best: tuple[float, float, float] | None

    @property
    def irs_feasible(self) -> bool:
        return self.irs_best is not None

    @property
    def mr_feasible(self) -> bool:
        return self.mr_best is not None


@dataclass(frozen=True)
class SummaryRow:
    """Distribution of best SNRs for one (room, N, technology) cell.

    Statistics cover feasible runs only; n_excluded counts the runs
    with no feasible placement.  Cells with zero feasible runs report
    absent statistics rather than fabricated values.
    """

    env_size_m: float
    n_elements: int
    technology: Technology
    min_db: float | None
    q1_db: float | None
    median_db: float | None
    q3_db: float | None
    max_db: float | None
    mean_db: float | None
    feasible_rate: float
    n_runs: int
    n_excluded: int


@dataclass(frozen=True)
class CampaignResult:
    config: ScenarioConfig
    records: tuple[RunRecord, ...]
    summary: tuple[SummaryRow, ...]


def rng_for_run(seed: int, env_index: int, run_id: int) -> np.random.Generator:
    """Dedicated random stream for one run of one environment."""
    ss = np.random.SeedSequence(seed, spawn_key=(env_index, run_id))
    return np.random.Generator(np.random.PCG64(ss))


def sample_endpoints(
    side_length: float,
    rng: np.random.Generator,
    min_separation: float = 0.0,
) -> tuple[Point2, Point2]:
    """Draw a random source/destination pair in the open room interior.

    Every attempt consumes exactly four uniform draws (src x, src y,
    dst x, dst y); an attempt failing the separation or interior check
    discards all four and redraws, keeping streams aligned.
    """
    if min_separation >= side_length * np.sqrt(2.0):
        raise ValueError(
            f"min_separation {min_separation!r} exceeds the room diagonal"
        )
    for _ in range(_SAMPLE_MAX_ATTEMPTS):
        sx, sy, dx, dy = rng.uniform(0.0, side_length, 4)
        if not all(0.0 < v < side_length for v in (sx, sy, dx, dy)):
            continue
        src = Point2(float(sx), float(sy))
        dst = Point2(float(dx), float(dy))
        if src.distance_to(dst) >= min_separation:
            return src, dst
    raise RuntimeError(
        f"no endpoint pair with separation >= {min_separation} found in "
        f"{_SAMPLE_MAX_ATTEMPTS} attempts"
    )


def _run_single(task: tuple[ScenarioConfig, int, float, int, int]) -> RunRecord:
    cfg, env_index, env_size, n_elements, run_id = task
    rng = rng_for_run(cfg.seed, env_index, run_id)
    src, dst = sample_endpoints(env_size, rng, cfg.min_separation_m)
    env = Environment(side_length=env_size)
    array = cfg.array_for(n_elements)

    irs = optimize_irs(env, src, dst, cfg.radio, array, cfg.step_m, include_map=False)
    mr = optimize_mr(
        env,
        src,
        dst,
        cfg.radio,
        array,
        cfg.step_m,
        policy=cfg.policy,
        threshold_model=cfg.threshold_model,
        include_map=False,
    )

    def best_tuple(result) -> tuple[float, float, float] | None:
        if result.best is None:
            return None
        pos = result.best.pose.position
        return (pos.x, pos.y, result.best.snr_db)

    return RunRecord(
        run_id=run_id,
        env_size_m=env_size,
        n_elements=n_elements,
        src=src,
        dst=dst,
        irs_best=best_tuple(irs),
        mr_best=best_tuple(mr),
    )


def _tasks(cfg: ScenarioConfig) -> list[tuple[ScenarioConfig, int, float, int, int]]:
    return [
        (cfg, env_index, env_size, n_elements, run_id)
        for env_index, env_size in enumerate(cfg.env_sizes_m)
        for n_elements in cfg.element_counts
        for run_id in range(cfg.runs)
    ]


def run_campaign(
    cfg: ScenarioConfig,
    n_workers: int = 1,
    progress: Callable[[int, int], None] | None = None,
) -> CampaignResult:
    """Execute the full campaign; results are ordered and worker-count
    independent."""
    tasks = _tasks(cfg)
    records: list[RunRecord] = []
    if n_workers <= 1:
        for i, task in enumerate(tasks):
            records.append(_run_single(task))
            if progress is not None:
                progress(i + 1, len(tasks))
    else:
        with multiprocessing.Pool(processes=n_workers) as pool:
            for i, record in enumerate(
                pool.imap(_run_single, tasks, chunksize=8)
            ):
                records.append(record)
                if progress is not None:
                    progress(i + 1, len(tasks))
    return CampaignResult(
        config=cfg,
        records=tuple(records),
        summary=tuple(summarize(cfg, records)),
    )


def summarize(cfg: ScenarioConfig, records: Iterable[RunRecord]) -> list[SummaryRow]:
    """Per-cell distribution statistics over feasible runs.

    Quartiles use linear interpolation between closest ranks, matching
    numpy's default percentile method.
    """
    records = list(records)
    rows: list[SummaryRow] = []
    for env_size, n_elements in itertools.product(
        cfg.env_sizes_m, cfg.element_counts
    ):
        cell = [
            r
            for r in records
            if r.env_size_m == env_size and r.n_elements == n_elements
        ]
        for tech in (Technology.IRS, Technology.MR):
            values = [
                (r.irs_best if tech is Technology.IRS else r.mr_best)
                for r in cell
            ]
            present = [v[2] for v in values if v is not None]
            n_runs = len(values)
            n_feasible = len(present)
            if n_feasible == 0:
                stats = dict.fromkeys(
                    ("min_db", "q1_db", "median_db", "q3_db", "max_db", "mean_db")
                )
            else:
                arr = np.asarray(present)
                q = np.percentile(arr, [0.0, 25.0, 50.0, 75.0, 100.0])
                stats = {
                    "min_db": float(q[0]),
                    "q1_db": float(q[1]),
                    "median_db": float(q[2]),
                    "q3_db": float(q[3]),
                    "max_db": float(q[4]),
                    "mean_db": float(np.mean(arr)),
                }
            rows.append(
                SummaryRow(
                    env_size_m=env_size,
                    n_elements=n_elements,
                    technology=tech,
                    feasible_rate=n_feasible / n_runs if n_runs else 0.0,
                    n_runs=n_runs,
                    n_excluded=n_runs - n_feasible,
                    **stats,
                )
            )
    return rows
