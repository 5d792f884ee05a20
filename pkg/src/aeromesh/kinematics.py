"""Circular-orbit kinematics of backbone platforms.

Each platform flies a horizontal circle of radius ``orbit_radius``
around ``(center_x, center_y)`` at its own ``altitude``, with signed
angular velocity (sign = direction of travel) and an initial phase
angle measured about the orbit center at t = 0.

Positions come from the closed form

    x(t) = center_x + r * cos(phase + omega * t)
    y(t) = center_y + r * sin(phase + omega * t)
    z(t) = altitude

and pairwise distance is the plain 3D Euclidean norm of the position
difference.  The distance is computed from Cartesian positions rather
than a pre-expanded trigonometric polynomial: the vector form is
unambiguous and exact to machine precision.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import ScenarioError
from .intervals import TimeInterval

TWO_PI = 2.0 * math.pi

#: Angular-rate floor (rad/s) so sampling grids stay finite for static
#: or near-static pairs.
OMEGA_FLOOR = 1e-3

#: Oversampling fraction of the fastest oscillation of the squared
#: distance between a pair.
GRID_FRACTION = math.pi / 16.0


@dataclass(frozen=True)
class PlatformSpec:
    """One orbiting node.

    Angles are radians; the initial phase is normalized to [0, 2*pi) at
    construction so long mission windows do not accumulate drift.
    Linear speed is derived (``abs(omega) * r``), never stored.
    """

    id: str
    center_x: float
    center_y: float
    altitude: float
    orbit_radius: float
    angular_velocity: float
    initial_phase: float = 0.0

    def __post_init__(self) -> None:
        if not self.id:
            raise ScenarioError("platform id must be non-empty", field="id")
        if not (self.orbit_radius > 0.0):
            raise ScenarioError(
                f"orbit_radius must be > 0, got {self.orbit_radius}", field="orbit_radius"
            )
        if not math.isfinite(self.angular_velocity):
            raise ScenarioError(
                f"angular_velocity must be finite, got {self.angular_velocity}",
                field="angular_velocity",
            )
        for name in ("center_x", "center_y", "altitude", "orbit_radius", "initial_phase"):
            if not math.isfinite(getattr(self, name)):
                raise ScenarioError(f"{name} must be finite", field=name)
        object.__setattr__(self, "initial_phase", self.initial_phase % TWO_PI)

    @classmethod
    def from_polar_center(
        cls,
        id: str,
        center_distance: float,
        center_angle: float,
        altitude: float,
        orbit_radius: float,
        angular_velocity: float,
        initial_phase: float = 0.0,
    ) -> "PlatformSpec":
        """Build from a polar orbit-center description (r, alpha)."""
        return cls(
            id=id,
            center_x=center_distance * math.cos(center_angle),
            center_y=center_distance * math.sin(center_angle),
            altitude=altitude,
            orbit_radius=orbit_radius,
            angular_velocity=angular_velocity,
            initial_phase=initial_phase,
        )

    @property
    def speed(self) -> float:
        """Linear speed along the orbit, meters/second."""
        return abs(self.angular_velocity) * self.orbit_radius


@dataclass(frozen=True)
class Scenario:
    """A set of platforms, a mission window, and a shared link threshold."""

    platforms: tuple[PlatformSpec, ...]
    window_start: float
    window_end: float
    comm_threshold: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "platforms", tuple(self.platforms))
        ids = [p.id for p in self.platforms]
        if len(set(ids)) != len(ids):
            dup = next(i for i in ids if ids.count(i) > 1)
            raise ScenarioError(f"duplicate platform id {dup!r}", field="platforms")
        if not (self.window_start <= self.window_end):
            raise ScenarioError(
                f"window_start {self.window_start} exceeds window_end {self.window_end}",
                field="window_start",
            )
        if not (self.comm_threshold > 0.0):
            raise ScenarioError(
                f"comm_threshold must be > 0, got {self.comm_threshold}",
                field="comm_threshold",
            )

    @property
    def window(self) -> TimeInterval:
        return TimeInterval(self.window_start, self.window_end)

    def platform(self, id: str) -> PlatformSpec:
        for p in self.platforms:
            if p.id == id:
                return p
        raise ScenarioError(f"unknown platform id {id!r}", field="platforms")


def position_at(p: PlatformSpec, t: float) -> tuple[float, float, float]:
    """Exact position of ``p`` at time ``t`` (meters)."""
    angle = p.initial_phase + p.angular_velocity * t
    return (
        p.center_x + p.orbit_radius * math.cos(angle),
        p.center_y + p.orbit_radius * math.sin(angle),
        p.altitude,
    )


def positions_at(p: PlatformSpec, ts: np.ndarray) -> np.ndarray:
    """Vectorized :func:`position_at`; returns an (n, 3) array."""
    ts = np.asarray(ts, dtype=float)
    angles = p.initial_phase + p.angular_velocity * ts
    out = np.empty(ts.shape + (3,))
    out[..., 0] = p.center_x + p.orbit_radius * np.cos(angles)
    out[..., 1] = p.center_y + p.orbit_radius * np.sin(angles)
    out[..., 2] = p.altitude
    return out


def pair_distance_squared(p: PlatformSpec, q: PlatformSpec, ts: np.ndarray) -> np.ndarray:
    """Squared pair distance sampled at ``ts`` (vectorized)."""
    ts = np.asarray(ts, dtype=float)
    ap = p.initial_phase + p.angular_velocity * ts
    aq = q.initial_phase + q.angular_velocity * ts
    dx = (p.center_x - q.center_x) + p.orbit_radius * np.cos(ap) - q.orbit_radius * np.cos(aq)
    dy = (p.center_y - q.center_y) + p.orbit_radius * np.sin(ap) - q.orbit_radius * np.sin(aq)
    dz = p.altitude - q.altitude
    return dx * dx + dy * dy + dz * dz


def pair_distance(p: PlatformSpec, q: PlatformSpec, t: float) -> float:
    """Euclidean 3D distance between ``p`` and ``q`` at time ``t``."""
    xp, yp, zp = position_at(p, t)
    xq, yq, zq = position_at(q, t)
    return math.sqrt((xp - xq) ** 2 + (yp - yq) ** 2 + (zp - zq) ** 2)


def pair_rate_scale(p: PlatformSpec, q: PlatformSpec) -> float:
    """Fastest angular frequency present in the pair's squared distance."""
    wp, wq = p.angular_velocity, q.angular_velocity
    return max(abs(wp), abs(wq), abs(wp - wq), OMEGA_FLOOR)


def pair_distance_squared_scalar(p: PlatformSpec, q: PlatformSpec, t: float) -> float:
    """Scalar s^2(t); fast path for bisection and refinement loops."""
    ap = p.initial_phase + p.angular_velocity * t
    aq = q.initial_phase + q.angular_velocity * t
    dx = (p.center_x - q.center_x) + p.orbit_radius * math.cos(ap) - q.orbit_radius * math.cos(aq)
    dy = (p.center_y - q.center_y) + p.orbit_radius * math.sin(ap) - q.orbit_radius * math.sin(aq)
    dz = p.altitude - q.altitude
    return dx * dx + dy * dy + dz * dz


def squared_distance_slope_bound(p: PlatformSpec, q: PlatformSpec) -> float:
    """Tight global bound on |d/dt s^2(t)|.

    With dc the center offset, u and v the rotating orbit vectors,
    s^2 = |dc|^2 + |u - v|^2 + 2 Re(conj(dc) (u - v)), giving sinusoids
    at frequencies w_p, w_q and w_p - w_q with known amplitudes.  When
    the rates coincide, u - v rotates rigidly and the cross term is a
    single sinusoid whose amplitude captures the exact cancellation
    (constant-distance formations get a bound of zero).
    """
    dcx = p.center_x - q.center_x
    dcy = p.center_y - q.center_y
    dc = math.hypot(dcx, dcy)
    wp, wq = p.angular_velocity, q.angular_velocity
    rp, rq = p.orbit_radius, q.orbit_radius
    if wp == wq:
        ax = rp * math.cos(p.initial_phase) - rq * math.cos(q.initial_phase)
        ay = rp * math.sin(p.initial_phase) - rq * math.sin(q.initial_phase)
        return 2.0 * dc * math.hypot(ax, ay) * abs(wp)
    return 2.0 * (dc * rp * abs(wp) + dc * rq * abs(wq) + rp * rq * abs(wp - wq))


def sample_times(p: PlatformSpec, q: PlatformSpec, window: TimeInterval) -> np.ndarray:
    """Uniform grid over ``window`` fine enough to isolate every sign
    change of s(t) - D for any threshold D.

    Step is ``(pi/16) / Omega`` with Omega the fastest frequency in the
    pair's squared-distance trigonometric polynomial.
    """
    span = window.length
    if span == 0.0:
        return np.array([window.start])
    step = GRID_FRACTION / pair_rate_scale(p, q)
    n = max(1, math.ceil(span / step))
    return np.linspace(window.start, window.end, n + 1)


def _golden_min(f, a: float, b: float) -> float:
    """Golden-section minimum of f on [a, b]."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(200):
        if b - a <= 1e-12 * max(1.0, abs(a), abs(b)):
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    return min(fc, fd)


def _certified_extremum(
    p: PlatformSpec,
    q: PlatformSpec,
    ts: np.ndarray,
    gs: np.ndarray,
    sign: float,
    eps_d: float,
) -> float:
    """Extremal value of s^2 over the sampled window, certified.

    Branch-and-bound on the sampling cells with the Lipschitz bound on
    d(s^2)/dt guarantees no narrow dip between samples is missed; the
    winning cell is then polished by golden-section.  ``sign`` +1 finds
    the minimum, -1 the maximum.  Returns the signed-back s^2 value.
    """

    def f(t: float) -> float:
        return sign * pair_distance_squared_scalar(p, q, t)

    slope = squared_distance_slope_bound(p, q)
    vals = sign * gs
    best_idx = int(np.argmin(vals))
    best = float(vals[best_idx])
    bracket = (
        float(ts[max(best_idx - 1, 0)]),
        float(ts[min(best_idx + 1, len(ts) - 1)]),
    )
    heap: list[tuple[float, float, float, float, float]] = []
    for i in range(len(ts) - 1):
        a, b = float(ts[i]), float(ts[i + 1])
        bound = min(float(vals[i]), float(vals[i + 1])) - 0.5 * slope * (b - a)
        heapq.heappush(heap, (bound, a, float(vals[i]), b, float(vals[i + 1])))
    while heap:
        g_best = max(sign * best, 0.0)
        tol = eps_d * (eps_d + 2.0 * math.sqrt(g_best))
        bound, a, va, b, vb = heapq.heappop(heap)
        if bound >= best - tol:
            break
        if b - a <= 1e-12 * max(1.0, abs(a), abs(b)):
            continue
        m = 0.5 * (a + b)
        vm = f(m)
        if vm < best:
            best, bracket = vm, (a, b)
        for xa, fa, xb, fb in ((a, va, m, vm), (m, vm, b, vb)):
            child = min(fa, fb) - 0.5 * slope * (xb - xa)
            heapq.heappush(heap, (child, xa, fa, xb, fb))
    if bracket[1] > bracket[0]:
        best = min(best, _golden_min(f, bracket[0], bracket[1]))
    return sign * best


def pair_distance_extrema(
    p: PlatformSpec, q: PlatformSpec, window: TimeInterval, *, eps_d: float = 1e-6
) -> tuple[float, float]:
    """Tight (min, max) of the pair distance over ``window``.

    Uses the link-lifetime sampling grid plus Lipschitz-certified
    branch-and-bound, so the result is within ``eps_d`` of the true
    extrema even when an extremum hides between grid samples.
    """
    ts = sample_times(p, q, window)
    gs = pair_distance_squared(p, q, ts)
    if len(ts) == 1:
        s = math.sqrt(max(0.0, float(gs[0])))
        return s, s
    lo = _certified_extremum(p, q, ts, gs, +1.0, eps_d)
    hi = _certified_extremum(p, q, ts, gs, -1.0, eps_d)
    return math.sqrt(max(0.0, lo)), math.sqrt(max(0.0, hi))


def iter_pairs(platforms: tuple[PlatformSpec, ...]):
    """All unordered platform pairs, in deterministic id order."""
    ordered = sorted(platforms, key=lambda p: p.id)
    for i in range(len(ordered)):
        for j in range(i + 1, len(ordered)):
            yield ordered[i], ordered[j]
