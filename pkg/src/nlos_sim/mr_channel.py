"""Channel model for a mobile decode-and-forward relay.

The relay carries the same N-element square aperture used by the
reflective surface, but acts as an active endpoint: it decodes the
first hop and retransmits on the second.  Each hop's aggregate gain
over the whole aperture has a closed form driven by the dimensionless
ratio B = N*A / (4 d^2 cos^2(eta)), where d is the hop distance and
eta the angle off the array boresight.  The end-to-end SNR of the
two-hop link is the minimum of the per-hop SNRs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    ANGLE_GUARD,
    DegenerateGeometryError,
    Point2,
    RelativeGeometry,
)
from .irs_channel import ArrayConfig

_SIX_PI = 6.0 * math.pi
_THIRD_PI_INV = 1.0 / (3.0 * math.pi)


class MrOrientationPolicy(enum.Enum):
    """How the relay aims its aperture when evaluating a candidate spot.

    BORESIGHT_PER_HOP: each hop is evaluated with the array facing that
        hop's endpoint dead-on (a relay free to steer per hop).
    BISECTOR: one physical orientation along the bisector of the two
        endpoint directions; both hops pay the same off-axis angle.
    FIXED_NORMAL: the array keeps the candidate pose's stored normal.
    """

    BORESIGHT_PER_HOP = "boresight_per_hop"
    BISECTOR = "bisector"
    FIXED_NORMAL = "fixed_normal"


@dataclass(frozen=True)
class HopGeometry:
    """One hop as the aperture model sees it."""

    distance: float
    angle: float
    aperture_ratio: float  # B = N*A / (4 d^2 cos^2 angle)


def describe_hop(distance: float, angle: float, cfg: ArrayConfig) -> HopGeometry:
    _check_hop(distance, angle)
    cos_a = math.cos(angle)
    ratio = cfg.n_elements * cfg.element_area_m2 / (4.0 * distance * distance * cos_a * cos_a)
    return HopGeometry(distance=distance, angle=angle, aperture_ratio=ratio)


def _check_hop(distance: float, angle: float) -> None:
    if distance <= 0.0:
        raise DegenerateGeometryError(f"hop distance must be positive, got {distance!r}")
    if abs(angle) >= math.pi / 2.0 - ANGLE_GUARD:
        raise DegenerateGeometryError(
            f"hop angle {angle!r} is grazing or behind the aperture"
        )


def relay_gain_array(
    distance: np.ndarray, angle: np.ndarray, cfg: ArrayConfig
) -> np.ndarray:
    """Vectorised aggregate aperture gain; no degeneracy guards."""
    distance = np.asarray(distance, dtype=np.float64)
    angle = np.asarray(angle, dtype=np.float64)
    cos_a = np.cos(angle)
    b = cfg.n_elements * cfg.element_area_m2 / (4.0 * distance * distance * cos_a * cos_a)
    tan_a = np.tan(angle)
    root_b = np.sqrt(b)
    total = np.zeros(np.broadcast(distance, angle).shape)
    for sign in (-1.0, 1.0):
        num = b + sign * root_b * tan_a
        den = np.sqrt(2.0 * b + tan_a * tan_a + 1.0 + 2.0 * sign * root_b * tan_a)
        total = total + num / (_SIX_PI * (b + 1.0) * den) + _THIRD_PI_INV * np.arctan(num / den)
    # Same cancellation hazard as the per-element four-corner sum: at
    # near-grazing angles the two sign branches differ by less than fp
    # noise, so keep the rounding residue out of negative territory.
    return np.maximum(total, 0.0)


def relay_gain(distance: float, angle: float, cfg: ArrayConfig) -> float:
    """Aggregate power gain of the whole aperture for one hop.

    Equals the sum of per-element free-space gains over the full
    N-element square surface and stays inside [0, 1/3); the 1/3
    ceiling is the normal-incidence saturation limit as the aperture
    fills the hemisphere, and zero only appears where floating-point
    cancellation at grazing angles is clamped.
    """
    _check_hop(distance, angle)
    return float(relay_gain_array(np.float64(distance), np.float64(angle), cfg))


def snr_hop(p_eff_w: float, noise_w: float, gain: float) -> float:
    if p_eff_w <= 0.0 or noise_w <= 0.0:
        raise ValueError("power and noise must be positive")
    if gain < 0.0:
        raise ValueError(f"gain must be non-negative, got {gain!r}")
    return p_eff_w * gain / noise_w


def snr_end_to_end(snr_first_hop: float, snr_second_hop: float) -> float:
    """Decode-and-forward bottleneck: the weaker hop limits the link."""
    if snr_first_hop < 0.0 or snr_second_hop < 0.0:
        raise ValueError("hop SNRs must be non-negative")
    return min(snr_first_hop, snr_second_hop)


def _wrap_angle(angle: float) -> float:
    wrapped = math.fmod(angle + math.pi, 2.0 * math.pi)
    if wrapped < 0.0:
        wrapped += 2.0 * math.pi
    wrapped -= math.pi
    # Keep the contract range (-pi, pi]: exactly-behind maps to +pi.
    return math.pi if wrapped == -math.pi else wrapped


def resolve_orientation(
    policy: MrOrientationPolicy,
    relay: Point2,
    src: Point2,
    dst: Point2,
    normal: tuple[float, float] = (1.0, 0.0),
) -> tuple[RelativeGeometry, RelativeGeometry]:
    """Angles and distances of both hops under an orientation policy.

    Returns (source hop, destination hop) geometry relative to the
    relay's aperture.  Collinear endpoint geometries under BISECTOR
    produce right-angle hops; the caller's grazing-angle guard then
    classifies the candidate as infeasible rather than erroring here.
    """
    d_src = relay.distance_to(src)
    d_dst = relay.distance_to(dst)
    if d_src < 1e-12 or d_dst < 1e-12:
        raise DegenerateGeometryError(
            f"relay position {relay!r} coincides with an endpoint"
        )

    if policy is MrOrientationPolicy.BORESIGHT_PER_HOP:
        return (
            RelativeGeometry(distance=d_src, angle=0.0),
            RelativeGeometry(distance=d_dst, angle=0.0),
        )

    theta_src = math.atan2(src.y - relay.y, src.x - relay.x)
    theta_dst = math.atan2(dst.y - relay.y, dst.x - relay.x)

    if policy is MrOrientationPolicy.BISECTOR:
        half = abs(_wrap_angle(theta_src - theta_dst)) / 2.0
        return (
            RelativeGeometry(distance=d_src, angle=half),
            RelativeGeometry(distance=d_dst, angle=-half),
        )

    if policy is MrOrientationPolicy.FIXED_NORMAL:
        theta_n = math.atan2(normal[1], normal[0])
        return (
            RelativeGeometry(distance=d_src, angle=_wrap_angle(theta_src - theta_n)),
            RelativeGeometry(distance=d_dst, angle=_wrap_angle(theta_dst - theta_n)),
        )

    raise ValueError(f"unknown orientation policy {policy!r}")
