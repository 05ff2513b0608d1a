"""Near-field channel model for a passive reflective surface.

The surface is a square grid of N lossless elements, each a square
aperture of area A, lying in the z = 0 plane and centred on the origin.
The free-space power gain between a point transmitter and one element
is the exact integral of the received power density over the element
face, which reduces to a four-corner double sum evaluated at the
element boundaries.  Summing amplitude contributions over all elements
with ideal phase alignment gives the end-to-end reflected SNR.

Geometry convention: an endpoint described by (distance, angle) relative
to the panel maps to the 3-D point (d*sin(angle), 0, d*cos(angle)), so
oblique incidence shows up as a lateral x-offset of the transmitter.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .geometry import ANGLE_GUARD, DegenerateGeometryError, RelativeGeometry

_FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class ArrayConfig:
    """Element layout of a square reflective surface.

    n_elements must be a perfect square; element_area is the face area
    of one element in m^2.  Elements tile the surface edge to edge, so
    the full aperture is a square of area n_elements * element_area.
    """

    n_elements: int
    element_area_m2: float

    def __post_init__(self) -> None:
        if self.n_elements < 1:
            raise ValueError(f"n_elements must be >= 1, got {self.n_elements!r}")
        if math.isqrt(self.n_elements) ** 2 != self.n_elements:
            raise ValueError(
                f"n_elements must be a perfect square, got {self.n_elements!r}"
            )
        if self.element_area_m2 <= 0.0:
            raise ValueError(
                f"element_area_m2 must be positive, got {self.element_area_m2!r}"
            )

    @property
    def side_count(self) -> int:
        return math.isqrt(self.n_elements)

    @property
    def element_side_m(self) -> float:
        return math.sqrt(self.element_area_m2)

    def warn_if_coarse(self, wavelength_m: float) -> None:
        """Flag element sides above half a wavelength.

        The aperture integral stays valid, but such elements are
        coarser than the usual sub-wavelength regime, so surprising
        inputs get a warning instead of a hard failure.
        """
        if self.element_side_m > wavelength_m / 2.0:
            warnings.warn(
                f"element side {self.element_side_m:.4g} m exceeds half the "
                f"wavelength ({wavelength_m / 2.0:.4g} m)",
                stacklevel=2,
            )


@dataclass(frozen=True)
class ElementCoord:
    """In-plane centre coordinates of one element."""

    x: float
    y: float


def element_grid(cfg: ArrayConfig) -> tuple[np.ndarray, np.ndarray]:
    """Centre coordinates of all elements in row-major order.

    Element 1 sits at the top-left corner of the surface; indices walk
    left to right along each row, then top to bottom.
    """
    m = cfg.side_count
    s = cfg.element_side_m
    idx = np.arange(cfg.n_elements)
    half_span = (m - 1) * s / 2.0
    xs = -half_span + s * (idx % m)
    ys = half_span - s * (idx // m)
    return xs, ys


def element_coords(cfg: ArrayConfig, n: int) -> ElementCoord:
    """Centre of element n (1-based, row-major from the top-left)."""
    if not 1 <= n <= cfg.n_elements:
        raise ValueError(
            f"element index {n!r} outside 1..{cfg.n_elements}"
        )
    m = cfg.side_count
    s = cfg.element_side_m
    half_span = (m - 1) * s / 2.0
    x = -half_span + s * ((n - 1) % m)
    y = half_span - s * ((n - 1) // m)
    return ElementCoord(x=x, y=y)


def _corner_sum(x: np.ndarray, y: np.ndarray, d: np.ndarray) -> np.ndarray:
    """One term of the aperture integral, evaluated at corner offsets."""
    xr = x / d
    yr = y / d
    root = np.sqrt(xr * xr + yr * yr + 1.0)
    frac = xr * yr
    return frac / (3.0 * (yr * yr + 1.0) * root) + (2.0 / 3.0) * np.arctan(frac / root)


def _gain_array(
    tx_x: np.ndarray,
    tx_y: np.ndarray,
    tx_z: np.ndarray,
    elem_x: np.ndarray,
    elem_y: np.ndarray,
    a: float,
) -> np.ndarray:
    """Vectorised free-space gain; inputs broadcast elementwise."""
    half = a / 2.0
    x_lo = half + elem_x - tx_x
    x_hi = half - elem_x + tx_x
    y_lo = half + elem_y - tx_y
    y_hi = half - elem_y + tx_y
    total = (
        _corner_sum(x_lo, y_lo, tx_z)
        + _corner_sum(x_lo, y_hi, tx_z)
        + _corner_sum(x_hi, y_lo, tx_z)
        + _corner_sum(x_hi, y_hi, tx_z)
    )
    # Near grazing incidence the corner terms cancel almost exactly and
    # rounding can leave a negative residue around 1e-19; the exact
    # integral is positive, so clamp instead of letting sqrt() see it.
    return np.maximum(total / _FOUR_PI, 0.0)


def free_space_gain(
    tx_x: float, tx_y: float, tx_z: float, elem: ElementCoord, a: float
) -> float:
    """Fraction of isotropically radiated power captured by one element.

    The transmitter sits at (tx_x, tx_y, tx_z) with tx_z > 0 the
    perpendicular distance to the surface plane; the element is a
    square of side a centred at (elem.x, elem.y, 0).  The exact
    aperture integral lies strictly inside (0, 1/3); in floating point
    the result is clamped at zero where near-grazing cancellation
    would otherwise leave a negative rounding residue.
    """
    if tx_z <= 0.0:
        raise DegenerateGeometryError(
            f"transmitter height above the panel plane must be positive, got {tx_z!r}"
        )
    if a <= 0.0:
        raise ValueError(f"element side must be positive, got {a!r}")
    result = _gain_array(
        np.float64(tx_x),
        np.float64(tx_y),
        np.float64(tx_z),
        np.float64(elem.x),
        np.float64(elem.y),
        a,
    )
    return float(result)


def _endpoint_to_plane(geom: RelativeGeometry) -> tuple[float, float]:
    """Map (distance, angle) to (lateral offset, height) over the panel."""
    if geom.distance <= 0.0:
        raise DegenerateGeometryError(
            f"endpoint distance must be positive, got {geom.distance!r}"
        )
    if abs(geom.angle) >= math.pi / 2.0 - ANGLE_GUARD:
        raise DegenerateGeometryError(
            f"endpoint angle {geom.angle!r} is grazing or behind the panel"
        )
    return geom.distance * math.sin(geom.angle), geom.distance * math.cos(geom.angle)


def irs_endpoint_gain(
    geom_src: RelativeGeometry,
    geom_dst: RelativeGeometry,
    cfg: ArrayConfig,
) -> tuple[np.ndarray, np.ndarray]:
    """Per-element amplitude gains seen from the two endpoints.

    Returns (source amplitudes, destination amplitudes), each of length
    n_elements; entry n is the square root of the element gain for that
    endpoint, ready for coherent summation.
    """
    src_x, src_z = _endpoint_to_plane(geom_src)
    dst_x, dst_z = _endpoint_to_plane(geom_dst)
    ex, ey = element_grid(cfg)
    a = cfg.element_side_m
    amps_src = np.sqrt(_gain_array(src_x, 0.0, src_z, ex, ey, a))
    amps_dst = np.sqrt(_gain_array(dst_x, 0.0, dst_z, ex, ey, a))
    return amps_src, amps_dst


def snr_irs(
    p_tx_eff_w: float,
    noise_w: float,
    amps_src: np.ndarray,
    amps_dst: np.ndarray,
) -> float:
    """Reflected-link SNR with ideal per-element phase alignment.

    With every element co-phased, amplitudes add before squaring:
    SNR = (P / sigma^2) * (sum_n |a_n| |b_n|)^2.  Summation runs in
    element index order (numpy pairwise) so results are reproducible
    bit for bit.
    """
    if p_tx_eff_w <= 0.0 or noise_w <= 0.0:
        raise ValueError("power and noise must be positive")
    amps_src = np.asarray(amps_src, dtype=np.float64)
    amps_dst = np.asarray(amps_dst, dtype=np.float64)
    if amps_src.shape != amps_dst.shape:
        raise ValueError(
            f"amplitude lists differ in length: {amps_src.shape} vs {amps_dst.shape}"
        )
    coherent = float(np.sum(amps_src * amps_dst))
    return (p_tx_eff_w / noise_w) * coherent * coherent
