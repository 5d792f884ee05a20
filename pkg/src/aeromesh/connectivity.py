"""All-time connectivity certification and the range/velocity solvers.

Connectivity over a window reduces to a finite check: decompose the
window into atomic slices with constant edge sets, then test each
slice's graph.  The minimum-range solver binary-searches the threshold
(valid because the live-edge set grows monotonically with it).  The
velocity solver deliberately does NOT binary-search: feasibility is not
monotone in the shared angular rate, so it grid-samples and refines the
winning sample against its nearest infeasible neighbor.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import InfeasibleError, ScenarioError
from .intervals import TimeInterval
from .kinematics import PlatformSpec, Scenario
from .timeline import (
    LinkTimeline,
    TimelineDecomposition,
    decompose_timeline,
    scenario_link_timelines,
)


@dataclass(frozen=True)
class ConnectivityReport:
    """Outcome of an all-time connectivity check.

    ``first_violation`` is the earliest slice whose graph is
    disconnected, together with the connected-component partition of
    platform ids; it is None exactly when ``connected_throughout``.
    """

    connected_throughout: bool
    first_violation: tuple[TimeInterval, tuple[tuple[str, ...], ...]] | None = None


@dataclass(frozen=True)
class RangeSolution:
    min_range: float
    certificate: ConnectivityReport


@dataclass(frozen=True)
class VelocitySolution:
    chosen_omega: float
    objective: str  # "minimum" | "closest-to-optimal"
    certificate: ConnectivityReport


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def component_partition(
    ids: Sequence[str], edges: Sequence[tuple[str, str]]
) -> tuple[tuple[str, ...], ...]:
    """Connected components as sorted tuples, sorted by first member."""
    uf = _UnionFind(ids)
    for a, b in edges:
        uf.union(a, b)
    groups: dict[str, list[str]] = {}
    for x in ids:
        groups.setdefault(uf.find(x), []).append(x)
    return tuple(sorted(tuple(sorted(g)) for g in groups.values()))


def connectivity_from_timelines(
    ids: Sequence[str],
    timelines: Sequence[LinkTimeline],
    window: TimeInterval,
) -> tuple[ConnectivityReport, TimelineDecomposition]:
    """Slice-by-slice check; also returns the decomposition it used."""
    if not ids:
        raise ScenarioError("empty network", field="platforms")
    decomp = decompose_timeline(timelines, window)
    for interval, edges in decomp.slices:
        partition = component_partition(ids, sorted(edges))
        if len(partition) > 1:
            return ConnectivityReport(False, (interval, partition)), decomp
    return ConnectivityReport(True, None), decomp


def check_connectivity(scenario: Scenario) -> ConnectivityReport:
    """Certify the backbone graph is connected in every atomic slice."""
    ids = sorted(p.id for p in scenario.platforms)
    if not ids:
        raise ScenarioError("empty network", field="platforms")
    if len(ids) == 1:
        return ConnectivityReport(True, None)
    report, _ = connectivity_from_timelines(
        ids, scenario_link_timelines(scenario), scenario.window
    )
    return report


def solve_min_range(
    platforms: Sequence[PlatformSpec],
    window: TimeInterval,
    t_max: float,
    eps_r: float = 1e-3,
) -> RangeSolution:
    """Smallest threshold keeping the network connected over ``window``.

    Binary search on [0, t_max]; returns the feasible upper bracket end
    once the bracket is narrower than ``eps_r``.
    """
    if not (t_max > 0.0):
        raise ScenarioError(f"t_max must be > 0, got {t_max}", field="t_max")
    if not (eps_r > 0.0):
        raise ScenarioError(f"eps_r must be > 0, got {eps_r}", field="eps_r")
    platforms = tuple(platforms)

    def report_at(d: float) -> ConnectivityReport:
        return check_connectivity(
            Scenario(platforms, window.start, window.end, comm_threshold=d)
        )

    best = report_at(t_max)
    if not best.connected_throughout:
        raise InfeasibleError(f"infeasible at T_max={t_max:.9g}")
    lo, hi = 0.0, t_max
    while hi - lo > eps_r:
        mid = 0.5 * (lo + hi)
        rep = report_at(mid)
        if rep.connected_throughout:
            hi, best = mid, rep
        else:
            lo = mid
    return RangeSolution(min_range=hi, certificate=best)


def _with_uniform_omega(scenario: Scenario, omega: float) -> Scenario:
    return Scenario(
        tuple(replace(p, angular_velocity=omega) for p in scenario.platforms),
        scenario.window_start,
        scenario.window_end,
        scenario.comm_threshold,
    )


def solve_velocity(
    scenario: Scenario,
    omega_min: float,
    omega_max: float,
    grid_points: int = 64,
    omega_optimal: float | None = None,
    omega_tol: float = 1e-9,
) -> VelocitySolution:
    """Pick a shared angular velocity that keeps the network connected.

    Every platform is assigned the same signed omega.  All grid samples
    are checked; the smallest feasible one wins (or, when a preferred
    rate is given, the feasible sample closest to it).  The winner is
    then refined by bisection against its adjacent infeasible sample in
    the improving direction.
    """
    if not (omega_min <= omega_max):
        raise ScenarioError("omega_min exceeds omega_max", field="omega_min")
    if grid_points < 2:
        raise ScenarioError(f"grid_points must be >= 2, got {grid_points}", field="grid_points")

    cache: dict[float, ConnectivityReport] = {}

    def report_at(w: float) -> ConnectivityReport:
        if w not in cache:
            cache[w] = check_connectivity(_with_uniform_omega(scenario, w))
        return cache[w]

    def feasible(w: float) -> bool:
        return report_at(w).connected_throughout

    if omega_optimal is not None:
        target = min(max(omega_optimal, omega_min), omega_max)
        if feasible(target):
            return VelocitySolution(target, "closest-to-optimal", report_at(target))

    omegas = [float(w) for w in np.linspace(omega_min, omega_max, grid_points)]
    flags = [feasible(w) for w in omegas]
    if not any(flags):
        raise InfeasibleError("no feasible velocity on grid")

    def refine(good: float, bad: float) -> float:
        """Move the feasible endpoint toward the infeasible one."""
        while abs(good - bad) > omega_tol:
            mid = 0.5 * (good + bad)
            if feasible(mid):
                good = mid
            else:
                bad = mid
        return good

    if omega_optimal is None:
        i = flags.index(True)
        chosen = omegas[i]
        if i > 0:
            chosen = refine(chosen, omegas[i - 1])
        return VelocitySolution(chosen, "minimum", report_at(chosen))

    target = min(max(omega_optimal, omega_min), omega_max)
    i = min(
        (k for k, ok in enumerate(flags) if ok),
        key=lambda k: (abs(omegas[k] - target), omegas[k]),
    )
    chosen = omegas[i]
    # Step toward the target past the winning sample if the adjacent
    # sample on that side is infeasible.
    if target < chosen and i > 0 and not flags[i - 1]:
        chosen = refine(chosen, max(omegas[i - 1], target))
    elif target > chosen and i + 1 < len(omegas) and not flags[i + 1]:
        chosen = refine(chosen, min(omegas[i + 1], target))
    return VelocitySolution(chosen, "closest-to-optimal", report_at(chosen))
