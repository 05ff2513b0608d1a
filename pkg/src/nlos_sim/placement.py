"""Exhaustive placement search over candidate panel and relay positions.

Both optimizers share the same shape: enumerate candidates, evaluate
the technology's SNR at each, mark infeasible candidates, and return
the argmax over the feasible ones (ties resolved toward the earlier
candidate in traversal order).  Infeasible entries carry a sentinel
dB value in exported maps; the sentinel never participates in the
argmax itself.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .direct_link import ThresholdModel, feasibility_ceiling
from .geometry import (
    ANGLE_GUARD,
    DegenerateGeometryError,
    Environment,
    PanelPose,
    Point2,
    grid_candidates,
    wall_candidates,
)
from .irs_channel import ArrayConfig, _gain_array, element_grid
from .mr_channel import MrOrientationPolicy, relay_gain_array
from .radio import RadioConfig

# Exported dB value for candidates with no usable link.
SENTINEL_DB = -10.0

# Relay candidates closer than this to either endpoint are rejected;
# the aperture formulas blow past their validity range at contact.
MIN_ENDPOINT_DISTANCE_M = 0.01

_HALF_PI_GUARDED = math.pi / 2.0 - ANGLE_GUARD


class Technology(enum.Enum):
    IRS = "irs"
    MR = "mr"


@dataclass(frozen=True)
class LinkEvaluation:
    """Outcome of evaluating one candidate position."""

    pose: PanelPose
    snr_linear: float | None
    snr_db: float
    feasible: bool

    @staticmethod
    def of(pose: PanelPose, snr_linear: float) -> "LinkEvaluation":
        return LinkEvaluation(
            pose=pose,
            snr_linear=snr_linear,
            snr_db=10.0 * math.log10(snr_linear),
            feasible=True,
        )

    @staticmethod
    def infeasible(pose: PanelPose) -> "LinkEvaluation":
        return LinkEvaluation(pose=pose, snr_linear=None, snr_db=SENTINEL_DB, feasible=False)


@dataclass(frozen=True)
class PlacementResult:
    technology: Technology
    best: LinkEvaluation | None
    map: tuple[LinkEvaluation, ...] = field(repr=False)
    candidates_evaluated: int
    infeasible_count: int

    @property
    def has_feasible(self) -> bool:
        return self.best is not None


def _check_endpoints(env: Environment, src: Point2, dst: Point2) -> None:
    for name, p in (("src", src), ("dst", dst)):
        if not env.contains_interior(p):
            raise ValueError(
                f"{name} {p!r} must lie strictly inside the {env.side_length} m room"
            )
    if src.distance_to(dst) < 1e-12:
        raise DegenerateGeometryError(f"src and dst coincide at {src!r}")


def _pick_best(
    evaluations: list[LinkEvaluation],
) -> LinkEvaluation | None:
    best: LinkEvaluation | None = None
    for ev in evaluations:
        if not ev.feasible:
            continue
        if best is None or ev.snr_linear > best.snr_linear:
            best = ev
    return best


def optimize_irs(
    env: Environment,
    src: Point2,
    dst: Point2,
    radio: RadioConfig,
    array: ArrayConfig,
    step: float,
    include_map: bool = True,
) -> PlacementResult:
    """Best wall position for the reflective surface.

    Candidates where either endpoint sits at a grazing angle or behind
    the panel are infeasible; every other candidate gets the coherent
    reflected SNR.
    """
    _check_endpoints(env, src, dst)
    array.warn_if_coarse(radio.wavelength_m)
    candidates = wall_candidates(env, step)
    poses = candidates.poses
    n_cand = len(poses)

    px = np.array([p.position.x for p in poses])
    py = np.array([p.position.y for p in poses])
    nx = np.array([p.normal[0] for p in poses])
    ny = np.array([p.normal[1] for p in poses])

    snr = np.full(n_cand, np.nan)
    feasible = np.zeros(n_cand, dtype=bool)

    dist = {}
    ang = {}
    for key, endpoint in (("src", src), ("dst", dst)):
        dx = endpoint.x - px
        dy = endpoint.y - py
        dist[key] = np.hypot(dx, dy)
        ang[key] = np.arctan2(nx * dy - ny * dx, nx * dx + ny * dy)

    ok = (
        (np.abs(ang["src"]) < _HALF_PI_GUARDED)
        & (np.abs(ang["dst"]) < _HALF_PI_GUARDED)
        & (dist["src"] > 0.0)
        & (dist["dst"] > 0.0)
    )

    if np.any(ok):
        ex, ey = element_grid(array)
        a = array.element_side_m
        # Amplitude products must pair element-by-element before the
        # coherent sum, so compute both endpoint gain matrices first.
        d_s = dist["src"][ok][:, None]
        t_s = ang["src"][ok][:, None]
        d_d = dist["dst"][ok][:, None]
        t_d = ang["dst"][ok][:, None]
        g_s = _gain_array(d_s * np.sin(t_s), 0.0, d_s * np.cos(t_s), ex[None, :], ey[None, :], a)
        g_d = _gain_array(d_d * np.sin(t_d), 0.0, d_d * np.cos(t_d), ex[None, :], ey[None, :], a)
        coherent = np.sum(np.sqrt(g_s) * np.sqrt(g_d), axis=1)
        snr[ok] = (radio.tx_power_eff_w / radio.noise_power_w) * coherent * coherent
        feasible[ok] = snr[ok] > 0.0

    return _assemble(Technology.IRS, poses, snr, feasible, include_map)


def optimize_mr(
    env: Environment,
    src: Point2,
    dst: Point2,
    radio: RadioConfig,
    array: ArrayConfig,
    step: float,
    policy: MrOrientationPolicy = MrOrientationPolicy.BORESIGHT_PER_HOP,
    threshold_model: ThresholdModel = ThresholdModel.APERTURE,
    include_map: bool = True,
) -> PlacementResult:
    """Best interior grid position for the decode-and-forward relay.

    A candidate is infeasible when it sits on top of an endpoint, when
    the orientation policy leaves a hop at a grazing angle, or when
    its two-hop SNR exceeds the configured single-hop reference
    ceiling (see direct_link.feasibility_ceiling).
    """
    _check_endpoints(env, src, dst)
    array.warn_if_coarse(radio.wavelength_m)
    candidates = grid_candidates(env, step)
    poses = candidates.poses
    n_cand = len(poses)

    rx = np.array([p.position.x for p in poses])
    ry = np.array([p.position.y for p in poses])

    d_src = np.hypot(src.x - rx, src.y - ry)
    d_dst = np.hypot(dst.x - rx, dst.y - ry)
    ok = (d_src >= MIN_ENDPOINT_DISTANCE_M) & (d_dst >= MIN_ENDPOINT_DISTANCE_M)

    if policy is MrOrientationPolicy.BORESIGHT_PER_HOP:
        eta_src = np.zeros(n_cand)
        eta_dst = np.zeros(n_cand)
    else:
        theta_src = np.arctan2(src.y - ry, src.x - rx)
        theta_dst = np.arctan2(dst.y - ry, dst.x - rx)
        if policy is MrOrientationPolicy.BISECTOR:
            half = np.abs(_wrap(theta_src - theta_dst)) / 2.0
            eta_src = half
            eta_dst = -half
        elif policy is MrOrientationPolicy.FIXED_NORMAL:
            t_n = np.arctan2(
                np.array([p.normal[1] for p in poses]),
                np.array([p.normal[0] for p in poses]),
            )
            eta_src = _wrap(theta_src - t_n)
            eta_dst = _wrap(theta_dst - t_n)
        else:
            raise ValueError(f"unknown orientation policy {policy!r}")

    ok &= (np.abs(eta_src) < _HALF_PI_GUARDED) & (np.abs(eta_dst) < _HALF_PI_GUARDED)

    snr = np.full(n_cand, np.nan)
    if np.any(ok):
        g_src = relay_gain_array(d_src[ok], eta_src[ok], array)
        g_dst = relay_gain_array(d_dst[ok], eta_dst[ok], array)
        noise = radio.noise_power_w
        snr_first = radio.tx_power_eff_w * g_src / noise
        snr_second = radio.mr_power_eff_w * g_dst / noise
        snr[ok] = np.minimum(snr_first, snr_second)

    ceiling = feasibility_ceiling(src, dst, radio, array, threshold_model)
    feasible = ok.copy()
    with np.errstate(invalid="ignore"):
        feasible &= snr > 0.0
        if ceiling is not None:
            feasible &= ~(snr > ceiling)

    return _assemble(Technology.MR, poses, snr, feasible, include_map)


def _wrap(angles: np.ndarray) -> np.ndarray:
    wrapped = np.mod(angles + np.pi, 2.0 * np.pi) - np.pi
    return np.where(wrapped == -np.pi, np.pi, wrapped)


def _assemble(
    tech: Technology,
    poses: tuple[PanelPose, ...],
    snr: np.ndarray,
    feasible: np.ndarray,
    include_map: bool,
) -> PlacementResult:
    n_cand = len(poses)
    evaluations: list[LinkEvaluation] = []
    if include_map:
        for i, pose in enumerate(poses):
            if feasible[i]:
                evaluations.append(LinkEvaluation.of(pose, float(snr[i])))
            else:
                evaluations.append(LinkEvaluation.infeasible(pose))
        best = _pick_best(evaluations)
    else:
        best = None
        if np.any(feasible):
            masked = np.where(feasible, snr, -np.inf)
            idx = int(np.argmax(masked))
            best = LinkEvaluation.of(poses[idx], float(snr[idx]))
    infeasible_count = int(n_cand - np.count_nonzero(feasible))
    return PlacementResult(
        technology=tech,
        best=best,
        map=tuple(evaluations),
        candidates_evaluated=n_cand,
        infeasible_count=infeasible_count,
    )


def snr_map_export(result: PlacementResult) -> list[tuple[float, float, float, bool]]:
    """Rows of (x, y, snr_db, feasible) for CSV export.

    Infeasible candidates carry the sentinel dB value; the flag lets
    consumers separate "weak link" from "no link" without magic-number
    comparisons.
    """
    return [
        (ev.pose.position.x, ev.pose.position.y, ev.snr_db, ev.feasible)
        for ev in result.map
    ]
