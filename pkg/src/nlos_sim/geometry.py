"""Room geometry: candidate panel poses and panel-relative coordinates.

The room is the square [0, L] x [0, L].  Reflective panels live on the
walls, relay candidates on an interior grid.  Channel models never see
absolute coordinates; they work from (distance, signed angle) pairs
relative to a panel's surface normal, produced by relative_geometry().
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

# Angles at or beyond (pi/2 - ANGLE_GUARD) count as grazing/behind the
# panel; callers treat such links as infeasible rather than evaluating
# an aperture model outside its validity range.
ANGLE_GUARD = 1e-6

_UNIT_NORM_TOL = 1e-12
_COINCIDENT_TOL = 1e-12


class DegenerateGeometryError(ValueError):
    """Raised for geometry a channel model cannot evaluate (coincident
    points, non-positive distances, grazing or behind-panel angles)."""


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def distance_to(self, other: "Point2") -> float:
        return math.hypot(other.x - self.x, other.y - self.y)


@dataclass(frozen=True)
class Environment:
    """Square room of a given side length in metres."""

    side_length: float

    def __post_init__(self) -> None:
        if self.side_length <= 0.0:
            raise ValueError(f"side_length must be positive, got {self.side_length!r}")

    def contains_interior(self, p: Point2) -> bool:
        """True when p is strictly inside the room (walls excluded)."""
        return 0.0 < p.x < self.side_length and 0.0 < p.y < self.side_length


@dataclass(frozen=True)
class PanelPose:
    """A candidate panel position with its facing direction."""

    position: Point2
    normal: tuple[float, float]

    def __post_init__(self) -> None:
        nx, ny = self.normal
        if abs(math.hypot(nx, ny) - 1.0) > _UNIT_NORM_TOL:
            raise ValueError(f"normal must be a unit vector, got {self.normal!r}")


@dataclass(frozen=True)
class RelativeGeometry:
    """Panel-relative polar coordinates of an endpoint.

    distance is the Euclidean separation; angle is the signed angle in
    (-pi, pi] between the panel normal and the direction to the
    endpoint (positive counterclockwise).
    """

    distance: float
    angle: float

    def faces_panel(self) -> bool:
        """True when the endpoint lies safely in front of the panel."""
        return abs(self.angle) < math.pi / 2.0 - ANGLE_GUARD


@dataclass(frozen=True)
class CandidateSet:
    step: float
    poses: tuple[PanelPose, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.poses)


def _offset_count(side: float, step: float) -> int:
    # 1e-9 slack keeps e.g. 10 / 0.1 from flooring to 99.
    return int(math.floor(side / step + 1e-9))


def _snap(value: float, side: float) -> float:
    # Accumulated float drift (k * 0.1) must not split a corner into
    # two distinct keys, so clamp near-corner offsets exactly.
    if abs(value) < 1e-9:
        return 0.0
    if abs(value - side) < 1e-9:
        return side
    return value


def wall_candidates(env: Environment, step: float) -> CandidateSet:
    """Enumerate panel poses along all four walls at a fixed spacing.

    Walls are traversed counterclockwise starting from the wall y = 0
    at the corner (0, 0); normals point into the room.  Corners shared
    by two walls appear once, owned by the wall that reaches them
    first.
    """
    side = env.side_length
    if step <= 0.0 or step > side:
        raise ValueError(f"step must satisfy 0 < step <= side_length, got {step!r}")

    count = _offset_count(side, step)
    offsets = [_snap(k * step, side) for k in range(count + 1)]

    walls = (
        (lambda t: (t, 0.0), (0.0, 1.0)),       # bottom, left to right
        (lambda t: (side, t), (-1.0, 0.0)),     # right, bottom to top
        (lambda t: (side - t, side), (0.0, -1.0)),  # top, right to left
        (lambda t: (0.0, side - t), (1.0, 0.0)),    # left, top to bottom
    )

    seen: set[tuple[float, float]] = set()
    poses: list[PanelPose] = []
    for to_xy, normal in walls:
        for t in offsets:
            xy = to_xy(t)
            if xy in seen:
                continue
            seen.add(xy)
            poses.append(PanelPose(Point2(*xy), normal))
    return CandidateSet(step=step, poses=tuple(poses))


def grid_candidates(env: Environment, step: float) -> CandidateSet:
    """Enumerate relay candidate positions on a row-major interior grid.

    Positions are (i*step, j*step) for i, j = 0 .. floor(L/step), with
    i varying slowest.  The stored normal is a +x placeholder; the
    relay orientation policy overrides it at evaluation time.
    """
    side = env.side_length
    if step <= 0.0 or step > side:
        raise ValueError(f"step must satisfy 0 < step <= side_length, got {step!r}")

    count = _offset_count(side, step)
    offsets = [_snap(k * step, side) for k in range(count + 1)]
    poses = [
        PanelPose(Point2(x, y), (1.0, 0.0))
        for x in offsets
        for y in offsets
    ]
    return CandidateSet(step=step, poses=tuple(poses))


def relative_geometry(panel: PanelPose, endpoint: Point2) -> RelativeGeometry:
    """Express an endpoint in a panel's (distance, signed angle) frame."""
    dx = endpoint.x - panel.position.x
    dy = endpoint.y - panel.position.y
    distance = math.hypot(dx, dy)
    if distance < _COINCIDENT_TOL:
        raise DegenerateGeometryError(
            f"endpoint {endpoint!r} coincides with panel position {panel.position!r}"
        )
    nx, ny = panel.normal
    angle = math.atan2(nx * dy - ny * dx, nx * dx + ny * dy)
    if angle <= -math.pi:
        angle = math.pi
    return RelativeGeometry(distance=distance, angle=angle)
