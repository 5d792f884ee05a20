"""Link lifetimes and atomic timeline decomposition.

A link between two platforms is live whenever their distance is at or
below the communication threshold (closed condition: equality counts).
Lifetimes are found by sampling the squared-distance curve on a grid
that oversamples its fastest oscillation, then bisecting each bracketed
threshold crossing.  The mission window is then cut at every interval
endpoint into atomic slices, each carrying a constant live-edge set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ScenarioError
from .intervals import EPS_T, IntervalSet, TimeInterval
from .kinematics import (
    PlatformSpec,
    Scenario,
    iter_pairs,
    pair_distance_squared,
    pair_distance_squared_scalar,
    sample_times,
    squared_distance_slope_bound,
)

#: Distance tolerance (meters) for refined crossing times.
EPS_D = 1e-6

_MAX_BISECT = 200


def pair_key(a: str, b: str) -> tuple[str, str]:
    """Canonical unordered pair key."""
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class LinkTimeline:
    """Live intervals of one (unordered) platform pair."""

    pair: tuple[str, str]
    live: IntervalSet

    def __post_init__(self) -> None:
        object.__setattr__(self, "pair", pair_key(*self.pair))


@dataclass(frozen=True)
class TimelineDecomposition:
    """Atomic slices partitioning the window, each with its live edges.

    Consecutive slices differ in edge set; every surviving boundary is
    an endpoint of some link interval (or a window end).
    """

    slices: tuple[tuple[TimeInterval, frozenset[tuple[str, str]]], ...]
    window: TimeInterval

    def slice_at(self, t: float) -> tuple[TimeInterval, frozenset[tuple[str, str]]]:
        for iv, edges in self.slices:
            if iv.contains(t):
                return iv, edges
        raise ValueError(f"time {t} outside window [{self.window.start}, {self.window.end}]")


def _bisect_crossing(
    p: PlatformSpec,
    q: PlatformSpec,
    threshold: float,
    lo: float,
    hi: float,
    f_lo: float,
    f_hi: float,
    eps_t: float,
    eps_d: float,
) -> float:
    """Locate the crossing of f(t) = s^2(t) - D^2 inside [lo, hi].

    The bracket must change liveness (sign of f, zero counting as live).
    Stops once the bracket is narrower than ``eps_t`` AND the distance
    at the returned instant is within ``eps_d`` of the threshold.
    """
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi

    def f(t: float) -> float:
        return pair_distance_squared_scalar(p, q, t) - threshold * threshold

    mid = 0.5 * (lo + hi)
    for _ in range(_MAX_BISECT):
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_hi > 0.0):
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
        mid = 0.5 * (lo + hi)
        if hi - lo <= eps_t and abs(math.sqrt(f(mid) + threshold * threshold) - threshold) <= eps_d:
            break
    return mid


def link_live_intervals(
    p: PlatformSpec,
    q: PlatformSpec,
    window: TimeInterval,
    threshold: float,
    *,
    eps_t: float = EPS_T,
    eps_d: float = EPS_D,
) -> IntervalSet:
    """Maximal intervals of ``window`` where the pair distance <= threshold.

    Crossing times are located by bisection on s^2 - D^2; sub-``eps_t``
    intervals (tangential grazes) are dropped and gaps below ``eps_t``
    are merged.
    """
    if not (threshold > 0.0):
        raise ScenarioError(f"threshold must be > 0, got {threshold}", field="comm_threshold")

    # Conservative reachability bounds let constant and far/near pairs
    # skip root isolation entirely.
    dxy = math.hypot(p.center_x - q.center_x, p.center_y - q.center_y)
    dz = p.altitude - q.altitude
    reach = p.orbit_radius + q.orbit_radius
    farthest = math.hypot(dxy + reach, dz)
    closest = math.hypot(max(0.0, dxy - reach), dz)
    if farthest <= threshold:
        return IntervalSet((window,))
    if closest > threshold:
        return IntervalSet()

    if window.length == 0.0:
        t0 = window.start
        live = pair_distance_squared(p, q, np.array([t0]))[0] <= threshold * threshold
        return IntervalSet((window,)) if live else IntervalSet()

    grid = sample_times(p, q, window)
    fs = pair_distance_squared(p, q, grid) - threshold * threshold
    ts, f = _certified_sign_grid(p, q, threshold, grid, fs, eps_t)
    live = [v <= 0.0 for v in f]

    spans: list[tuple[float, float]] = []
    cur_start = ts[0] if live[0] else None
    for i in range(len(ts) - 1):
        if live[i] == live[i + 1]:
            continue
        tau = _bisect_crossing(
            p, q, threshold, ts[i], ts[i + 1], f[i], f[i + 1], eps_t, eps_d
        )
        if live[i + 1]:
            cur_start = tau
        else:
            spans.append((cur_start, tau))
            cur_start = None
    if cur_start is not None:
        spans.append((cur_start, ts[-1]))
    return IntervalSet.from_pairs(spans, eps=eps_t)


def _certified_sign_grid(
    p: PlatformSpec,
    q: PlatformSpec,
    threshold: float,
    ts: np.ndarray,
    fs: np.ndarray,
    eps_t: float,
) -> tuple[list[float], list[float]]:
    """Refine the sampling grid until its sign structure is certain.

    A same-sign cell could still hide a brief excursion across the
    threshold; by the Lipschitz bound B on d(s^2)/dt, a crossing inside
    [a, b] forces |f(a)| + |f(b)| <= B * (b - a).  Cells failing that
    certificate are split until it holds, the signs differ, or the cell
    is narrower than ``eps_t`` (an excursion that brief is dropped as a
    graze anyway).
    """
    slope = squared_distance_slope_bound(p, q)
    d2 = threshold * threshold

    def f(t: float) -> float:
        return pair_distance_squared_scalar(p, q, t) - d2

    out_t: list[float] = [float(ts[0])]
    out_f: list[float] = [float(fs[0])]
    for i in range(len(ts) - 1):
        stack = [(float(ts[i]), float(fs[i]), float(ts[i + 1]), float(fs[i + 1]))]
        while stack:
            a, fa, b, fb = stack.pop()
            certain = (
                (fa > 0.0) != (fb > 0.0)
                or fa == 0.0
                or fb == 0.0
                or b - a <= eps_t
                or abs(fa) + abs(fb) > slope * (b - a)
            )
            if certain:
                out_t.append(b)
                out_f.append(fb)
                continue
            m = 0.5 * (a + b)
            fm = f(m)
            stack.append((m, fm, b, fb))
            stack.append((a, fa, m, fm))
    return out_t, out_f


def build_link_timelines(
    platforms: Sequence[PlatformSpec],
    window: TimeInterval,
    default_threshold: float,
    pair_thresholds: Mapping[tuple[str, str], float] | None = None,
) -> list[LinkTimeline]:
    """Timelines for every unordered pair, in deterministic id order.

    ``pair_thresholds`` overrides the shared threshold for named pairs.
    """
    overrides = pair_thresholds or {}
    out = []
    for p, q in iter_pairs(tuple(platforms)):
        d = overrides.get(pair_key(p.id, q.id), default_threshold)
        out.append(LinkTimeline((p.id, q.id), link_live_intervals(p, q, window, d)))
    return out


def scenario_link_timelines(scenario: Scenario) -> list[LinkTimeline]:
    """Timelines of every pair of a scenario at its shared threshold."""
    return build_link_timelines(scenario.platforms, scenario.window, scenario.comm_threshold)


def decompose_timeline(
    timelines: Iterable[LinkTimeline], window: TimeInterval
) -> TimelineDecomposition:
    """Cut ``window`` at every link-interval endpoint (Fig.-6 style).

    Each slice's edge set is decided at its midpoint; adjacent slices
    with identical edge sets are merged.
    """
    timelines = [
        LinkTimeline(tl.pair, tl.live.clipped(window.start, window.end)) for tl in timelines
    ]
    cuts = {window.start, window.end}
    for tl in timelines:
        cuts.update(tl.live.endpoints())
    ordered = sorted(cuts)

    def edges_at(t: float) -> frozenset[tuple[str, str]]:
        return frozenset(tl.pair for tl in timelines if tl.live.contains(t))

    if window.length == 0.0:
        return TimelineDecomposition(
            ((window, edges_at(window.start)),), window
        )

    slices: list[tuple[TimeInterval, frozenset[tuple[str, str]]]] = []
    for a, b in zip(ordered, ordered[1:]):
        edges = edges_at(0.5 * (a + b))
        if slices and slices[-1][1] == edges:
            slices[-1] = (TimeInterval(slices[-1][0].start, b), edges)
        else:
            slices.append((TimeInterval(a, b), edges))
    return TimelineDecomposition(tuple(slices), window)
