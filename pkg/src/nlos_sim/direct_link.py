"""Direct source-to-destination link and the relay feasibility ceiling.

Two reference models are available:

* FRIIS: plain free-space budget between two low-gain antennas,
  SNR = P * g_tx * g_rx * (lambda / 4 pi d)^2 / sigma^2.
* APERTURE: what a one-hop link would deliver into the same N-element
  aperture the relay carries, SNR = P * zeta(d, 0, N) / sigma^2.

The relay optimizer discards candidate positions whose two-hop SNR
exceeds the reference value: a relayed link pretending to beat a
single hop over the full separation is operating the aperture model
outside its trustworthy range.  FRIIS is far below any aperture-based
hop at these scales and empties the candidate set in typical rooms, so
APERTURE is the default ceiling; FRIIS remains the model of the plain
snr_direct_los() budget and can be selected explicitly.
"""

from __future__ import annotations

import enum
import math

from .geometry import DegenerateGeometryError, Point2
from .irs_channel import ArrayConfig
from .mr_channel import relay_gain
from .radio import RadioConfig, db_to_linear


class ThresholdModel(enum.Enum):
    """Reference model for the relay feasibility ceiling."""

    FRIIS = "friis"
    APERTURE = "aperture"
    NONE = "none"  # diagnostics only: no ceiling applied


def snr_direct_los(src: Point2, dst: Point2, radio: RadioConfig) -> float:
    """Line-of-sight SNR of the plain direct link (linear scale)."""
    d = src.distance_to(dst)
    if d < 1e-12:
        raise DegenerateGeometryError(
            f"source {src!r} and destination {dst!r} coincide"
        )
    path = radio.wavelength_m / (4.0 * math.pi * d)
    return (
        radio.tx_power_eff_w
        * db_to_linear(radio.rx_gain_dbi)
        * path
        * path
        / radio.noise_power_w
    )


def feasibility_ceiling(
    src: Point2,
    dst: Point2,
    radio: RadioConfig,
    array: ArrayConfig,
    model: ThresholdModel = ThresholdModel.APERTURE,
) -> float | None:
    """Linear SNR cap applied to relayed links, or None for no cap."""
    if model is ThresholdModel.NONE:
        return None
    if model is ThresholdModel.FRIIS:
        return snr_direct_los(src, dst, radio)
    if model is ThresholdModel.APERTURE:
        d = src.distance_to(dst)
        if d < 1e-12:
            raise DegenerateGeometryError(
                f"source {src!r} and destination {dst!r} coincide"
            )
        gain = relay_gain(d, 0.0, array)
        return radio.tx_power_eff_w * gain / radio.noise_power_w
    raise ValueError(f"unknown threshold model {model!r}")
