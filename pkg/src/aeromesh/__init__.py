"""Deterministic planning toolkit for airborne backbone networks.

Platforms fly circular orbits; links exist while pairwise distance
stays within a threshold.  The toolkit certifies all-time connectivity
of the resulting dynamic graph, solves for minimum transmission range
and feasible shared velocity, routes with the fewest path switches,
and places orbits to guarantee all-time 3D coverage of an air
corridor.
"""

from .connectivity import (
    ConnectivityReport,
    RangeSolution,
    VelocitySolution,
    check_connectivity,
    component_partition,
    solve_min_range,
    solve_velocity,
)
from .coverage import (
    Corridor,
    CoverageCheck,
    CoveragePlan,
    CylinderSpec,
    LeafGeometry,
    cylinder_for,
    leaf_geometry,
    plan_connected_coverage,
    plan_coverage,
    platforms_from_plan,
    verify_coverage,
)
from .errors import AeromeshError, CoverageGapError, InfeasibleError, ScenarioError
from .intervals import IntervalSet, TimeInterval
from .kinematics import (
    PlatformSpec,
    Scenario,
    pair_distance,
    pair_distance_extrema,
    position_at,
)
from .routing import (
    PathLifetime,
    RoutePlan,
    enumerate_paths,
    min_switch_route,
    route,
)
from .timeline import (
    LinkTimeline,
    TimelineDecomposition,
    build_link_timelines,
    decompose_timeline,
    link_live_intervals,
)

__version__ = "0.1.0"

__all__ = [
    "AeromeshError",
    "ConnectivityReport",
    "Corridor",
    "CoverageCheck",
    "CoverageGapError",
    "CoveragePlan",
    "CylinderSpec",
    "InfeasibleError",
    "IntervalSet",
    "LeafGeometry",
    "LinkTimeline",
    "PathLifetime",
    "PlatformSpec",
    "RangeSolution",
    "RoutePlan",
    "Scenario",
    "ScenarioError",
    "TimeInterval",
    "TimelineDecomposition",
    "VelocitySolution",
    "build_link_timelines",
    "check_connectivity",
    "component_partition",
    "cylinder_for",
    "decompose_timeline",
    "enumerate_paths",
    "leaf_geometry",
    "link_live_intervals",
    "min_switch_route",
    "pair_distance",
    "pair_distance_extrema",
    "plan_connected_coverage",
    "plan_coverage",
    "platforms_from_plan",
    "position_at",
    "route",
    "solve_min_range",
    "solve_velocity",
    "verify_coverage",
]
