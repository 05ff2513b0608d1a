"""Link-level simulator for indoor mmWave NLoS avoidance.

Compares two ways of routing around a blocked line-of-sight path in a
square room: a passive reflective surface mounted on a wall, and a
mobile decode-and-forward relay placed on an interior grid.  Both use
the same near-field aperture physics; an exhaustive search returns the
best placement for each, and a Monte Carlo campaign aggregates best
SNRs over random endpoint geometries.
"""

__version__ = "0.1.0"

from .direct_link import ThresholdModel, feasibility_ceiling, snr_direct_los
from .geometry import (
    DegenerateGeometryError,
    Environment,
    PanelPose,
    Point2,
    RelativeGeometry,
    grid_candidates,
    relative_geometry,
    wall_candidates,
)
from .irs_channel import (
    ArrayConfig,
    ElementCoord,
    element_coords,
    free_space_gain,
    irs_endpoint_gain,
    snr_irs,
)
from .montecarlo import (
    CampaignResult,
    RunRecord,
    ScenarioConfig,
    SummaryRow,
    rng_for_run,
    run_campaign,
    sample_endpoints,
    summarize,
)
from .mr_channel import (
    HopGeometry,
    MrOrientationPolicy,
    describe_hop,
    relay_gain,
    resolve_orientation,
    snr_end_to_end,
    snr_hop,
)
from .placement import (
    SENTINEL_DB,
    LinkEvaluation,
    PlacementResult,
    Technology,
    optimize_irs,
    optimize_mr,
    snr_map_export,
)
from .radio import RadioConfig

__all__ = [
    "ArrayConfig",
    "CampaignResult",
    "DegenerateGeometryError",
    "ElementCoord",
    "Environment",
    "HopGeometry",
    "LinkEvaluation",
    "MrOrientationPolicy",
    "PanelPose",
    "PlacementResult",
    "Point2",
    "RadioConfig",
    "RelativeGeometry",
    "RunRecord",
    "ScenarioConfig",
    "SENTINEL_DB",
    "SummaryRow",
    "Technology",
    "ThresholdModel",
    "describe_hop",
    "element_coords",
    "feasibility_ceiling",
    "free_space_gain",
    "grid_candidates",
    "irs_endpoint_gain",
    "optimize_irs",
    "optimize_mr",
    "relative_geometry",
    "relay_gain",
    "resolve_orientation",
    "rng_for_run",
    "run_campaign",
    "sample_endpoints",
    "snr_direct_los",
    "snr_end_to_end",
    "snr_hop",
    "snr_irs",
    "snr_map_export",
    "summarize",
    "wall_candidates",
]
