"""All-time 3D coverage of an air corridor by orbiting platforms.

Geometry
--------
The corridor is the box [0, L] x [0, W] x [-H, 0]; orbits sit on its
top surface (z = 0).  Each platform carries a coverage sphere of radius
``r_s``.  As the n platforms of an orbit of radius ``r_o`` sweep
around, the intersection lens ("leaf") of adjacent spheres sweeps too,
and a cylinder centered on the orbit stays covered at every phase:

    radius      r_c = 2 * r_o * cos(pi / n)
    half-height h_c = sqrt(r_s^2 - r_o^2)

The worst point of that cylinder (rim, full depth, angularly midway
between adjacent platforms) sits at distance exactly ``r_s`` from the
nearest platform, which is what makes the bound tight.

Placement
---------
Covering the corridor means stacking such cylinders from the top
surface: pick ``r_o`` as large as the height constraint h_c >= H
allows, then tile the L x W surface with the footprint inscribed in
the cylinder's circle.  Strategy 1 uses the inscribed square; strategy
2 the inscribed rectangle matching the corridor's aspect ratio.  The
ceiling-laden objective is piecewise constant in n, so the optimizer
enumerates integer n exactly instead of calling a nonlinear solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .connectivity import RangeSolution, solve_min_range
from .errors import InfeasibleError, ScenarioError
from .intervals import TimeInterval
from .kinematics import TWO_PI, PlatformSpec

#: Default shared angular velocity (rad/s) when a coverage plan is
#: turned into a flying scenario; one period is ~10.5 minutes.
DEFAULT_PLAN_OMEGA = 0.01

DEFAULT_N_MAX = 100


@dataclass(frozen=True)
class Corridor:
    """Rectangular-parallelepiped air-corridor section, meters."""

    length: float
    width: float
    height: float

    def __post_init__(self) -> None:
        for name in ("length", "width", "height"):
            if not (getattr(self, name) > 0.0):
                raise ScenarioError(f"corridor {name} must be > 0", field=f"corridor.{name}")


@dataclass(frozen=True)
class LeafGeometry:
    """Lens of two adjacent coverage spheres on one orbit (top view).

    ``half_length`` is half the lens' long axis, ``width`` the lens
    width along the line of sphere centers, ``center_offset`` the
    distance from the orbit center to the lens' inner tip.
    """

    half_length: float
    width: float
    center_offset: float


@dataclass(frozen=True)
class CylinderSpec:
    """Invariant coverage cylinder of one orbit."""

    radius: float
    half_height: float

    @property
    def volume(self) -> float:
        return math.pi * self.radius * self.radius * self.half_height


def leaf_geometry(r_s: float, r_o: float, n: int) -> LeafGeometry:
    """Leaf parameters for n spheres of radius ``r_s`` on an orbit ``r_o``."""
    _validate_orbit_geometry(r_s, r_o, n)
    theta = math.pi / n
    width = r_s - r_o * math.sin(theta)
    half_length = math.sqrt(width * (2.0 * r_s - width))
    center_offset = half_length - (r_s - width) / math.tan(theta)
    return LeafGeometry(half_length=half_length, width=width, center_offset=center_offset)


def cylinder_for(r_s: float, r_o: float, n: int) -> CylinderSpec:
    """Invariant cylinder for the given sphere/orbit geometry.

    Degenerate at r_o == r_s (spheres meet in a point on the orbit
    plane, zero height); no cylinder exists for r_o > r_s.
    """
    _validate_orbit_geometry(r_s, r_o, n)
    radius = 2.0 * r_o * math.cos(math.pi / n)
    half_height = math.sqrt(r_s * r_s - r_o * r_o)
    return CylinderSpec(radius=radius, half_height=half_height)


def _validate_orbit_geometry(r_s: float, r_o: float, n: int) -> None:
    if not (r_s > 0.0):
        raise ScenarioError(f"coverage radius must be > 0, got {r_s}", field="coverage_radius")
    if not (0.0 < r_o):
        raise ScenarioError(f"orbit radius must be > 0, got {r_o}", field="orbit_radius")
    if r_o > r_s:
        raise ScenarioError(
            f"no invariant cylinder: orbit radius {r_o} exceeds coverage radius {r_s}",
            field="orbit_radius",
        )
    if n < 3:
        raise ScenarioError(f"platforms per orbit must be >= 3, got {n}", field="n")


@dataclass(frozen=True)
class CoveragePlan:
    """Solution of the corridor-coverage optimization.

    ``centers`` are orbit centers on the top surface, laid on the
    strategy's tile grid anchored at the corridor's min corner; the last
    row/column of tiles may overhang the corridor.
    """

    platforms_per_orbit: int
    orbit_radius: float
    orbit_count: int
    centers: tuple[tuple[float, float], ...]
    strategy: int
    platform_phases: tuple[float, ...]
    tile_length: float
    tile_width: float

    @property
    def total(self) -> int:
        return self.orbit_count * self.platforms_per_orbit


@dataclass(frozen=True)
class CoverageCheck:
    """Monte-Carlo verification outcome.

    The worst witness is the sampled (point, phase) pair with the
    largest distance to its nearest platform; phase plays the role of
    time via t = phase / omega under a shared angular velocity.
    """

    fraction: float
    worst_point: tuple[float, float, float]
    worst_phase: float
    worst_min_distance: float


def _tile_size(strategy: int, r_c: float, corridor: Corridor) -> tuple[float, float]:
    # The aspect-matched inscribed rectangle of a square corridor IS the
    # inscribed square; route through one expression so the strategies
    # coincide exactly (not merely to rounding) in that case.
    if strategy == 1 or corridor.length == corridor.width:
        side = math.sqrt(2.0) * r_c
        return side, side
    diag = math.hypot(corridor.length, corridor.width)
    return 2.0 * r_c * corridor.length / diag, 2.0 * r_c * corridor.width / diag


def plan_coverage(
    corridor: Corridor,
    r_s: float,
    strategy: int = 1,
    n_max: int = DEFAULT_N_MAX,
) -> CoveragePlan:
    """Fewest-platform plan covering the corridor at all times.

    The orbit radius is pinned at the largest feasible value
    ``sqrt(r_s^2 - H^2)`` (the cylinder footprint grows with it, and
    the orbit count never benefits from a smaller footprint); the
    platforms-per-orbit count is then enumerated exactly.  Ties prefer
    fewer platforms per orbit.
    """
    if strategy not in (1, 2):
        raise ScenarioError(f"strategy must be 1 or 2, got {strategy}", field="strategy")
    if n_max < 3:
        raise ScenarioError(f"n_max must be >= 3, got {n_max}", field="n_max")
    if not (r_s > corridor.height):
        raise InfeasibleError(
            f"infeasible: coverage radius {r_s:.9g} <= corridor height {corridor.height:.9g}"
        )
    r_o = math.sqrt(r_s * r_s - corridor.height * corridor.height)

    best: tuple[int, int, int] | None = None  # (total, n, m)
    for n in range(3, n_max + 1):
        r_c = 2.0 * r_o * math.cos(math.pi / n)
        a, b = _tile_size(strategy, r_c, corridor)
        m = math.ceil(corridor.length / a) * math.ceil(corridor.width / b)
        total = m * n
        if best is None or total < best[0]:
            best = (total, n, m)
    assert best is not None
    _, n, m = best

    r_c = 2.0 * r_o * math.cos(math.pi / n)
    a, b = _tile_size(strategy, r_c, corridor)
    cols = math.ceil(corridor.length / a)
    rows = math.ceil(corridor.width / b)
    centers = tuple(
        ((i + 0.5) * a, (j + 0.5) * b) for j in range(rows) for i in range(cols)
    )
    phases = tuple((TWO_PI * k) / n for k in range(n))
    return CoveragePlan(
        platforms_per_orbit=n,
        orbit_radius=r_o,
        orbit_count=m,
        centers=centers,
        strategy=strategy,
        platform_phases=phases,
        tile_length=a,
        tile_width=b,
    )


def verify_coverage(
    plan: CoveragePlan,
    corridor: Corridor,
    r_s: float,
    time_samples: int = 64,
    point_samples: int = 1024,
    seed: int = 0,
) -> CoverageCheck:
    """Seeded Monte-Carlo check that the plan covers the corridor.

    Draws ``point_samples`` uniform corridor points and
    ``time_samples`` uniform phases (a shared rotation applied to every
    orbit) and tests every (point, phase) pair: covered means the
    nearest platform is within ``r_s``.
    """
    if time_samples < 1 or point_samples < 1:
        raise ScenarioError("need at least one time and one point sample", field="samples")
    rng = np.random.default_rng(seed)
    pts = np.empty((point_samples, 3))
    pts[:, 0] = rng.uniform(0.0, corridor.length, point_samples)
    pts[:, 1] = rng.uniform(0.0, corridor.width, point_samples)
    pts[:, 2] = rng.uniform(-corridor.height, 0.0, point_samples)
    phases = rng.uniform(0.0, TWO_PI, time_samples)

    base = np.array(plan.platform_phases)
    centers = np.array(plan.centers, dtype=float).reshape(-1, 2)
    covered = 0
    worst_d2 = -1.0
    worst: tuple[float, float, float] = (0.0, 0.0, 0.0)
    worst_phase = 0.0
    z2 = pts[:, 2] ** 2
    for phase in phases:
        angles = base + phase
        offsets = plan.orbit_radius * np.stack([np.cos(angles), np.sin(angles)], axis=1)
        # (orbits*n, 2) platform positions on the top surface
        plats = (centers[:, None, :] + offsets[None, :, :]).reshape(-1, 2)
        d2min = np.full(point_samples, np.inf)
        for px, py in plats:
            d2 = (pts[:, 0] - px) ** 2 + (pts[:, 1] - py) ** 2 + z2
            np.minimum(d2min, d2, out=d2min)
        covered += int(np.count_nonzero(d2min <= r_s * r_s))
        i = int(np.argmax(d2min))
        if d2min[i] > worst_d2:
            worst_d2 = float(d2min[i])
            worst = (float(pts[i, 0]), float(pts[i, 1]), float(pts[i, 2]))
            worst_phase = float(phase)
    return CoverageCheck(
        fraction=covered / (time_samples * point_samples),
        worst_point=worst,
        worst_phase=worst_phase,
        worst_min_distance=math.sqrt(worst_d2),
    )


def platforms_from_plan(
    plan: CoveragePlan,
    omega: float = DEFAULT_PLAN_OMEGA,
    altitude: float = 0.0,
    orbit_phase_offsets: tuple[float, ...] | None = None,
) -> tuple[PlatformSpec, ...]:
    """Materialize a plan as orbiting platforms (ids ``o<i>p<j>``).

    All platforms share ``omega``; per-orbit phase offsets default to
    aligned (zero), which keeps every pairwise distance constant.
    """
    if orbit_phase_offsets is None:
        orbit_phase_offsets = tuple(0.0 for _ in plan.centers)
    if len(orbit_phase_offsets) != len(plan.centers):
        raise ScenarioError(
            "orbit_phase_offsets length must match orbit count", field="orbit_phase_offsets"
        )
    out = []
    for i, ((cx, cy), offset) in enumerate(zip(plan.centers, orbit_phase_offsets)):
        for j, phase in enumerate(plan.platform_phases):
            out.append(
                PlatformSpec(
                    id=f"o{i}p{j}",
                    center_x=cx,
                    center_y=cy,
                    altitude=altitude,
                    orbit_radius=plan.orbit_radius,
                    angular_velocity=omega,
                    initial_phase=phase + offset,
                )
            )
    return tuple(out)


def plan_connected_coverage(
    corridor: Corridor,
    r_s: float,
    strategy: int = 1,
    t_max: float = 0.0,
    *,
    omega: float = DEFAULT_PLAN_OMEGA,
    n_max: int = DEFAULT_N_MAX,
    eps_r: float = 1e-3,
    orbit_phase_offsets: tuple[float, ...] | None = None,
) -> tuple[CoveragePlan, RangeSolution]:
    """Two-phase connected coverage: place orbits, then size the radios.

    Phase 1 solves the coverage placement; phase 2 flies the plan at a
    shared ``omega`` and binary-searches the smallest transmission
    range keeping the backbone connected over one common period.
    """
    plan = plan_coverage(corridor, r_s, strategy, n_max)
    platforms = platforms_from_plan(plan, omega, 0.0, orbit_phase_offsets)
    period = TWO_PI / abs(omega) if omega != 0.0 else 0.0
    window = TimeInterval(0.0, period)
    solution = solve_min_range(platforms, window, t_max, eps_r)
    return plan, solution
