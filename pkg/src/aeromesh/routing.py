"""Minimum path-switch routing over a dynamic backbone.

Paths of at most k hops are enumerated with their lifetimes (the
intersection of their links' live intervals).  A route over [t1, t2] is
then assembled greedily: at the current frontier, among live intervals
that started at or before it, take the one reaching farthest; this
yields the fewest possible path switches.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import CoverageGapError, ScenarioError
from .intervals import IntervalSet, TimeInterval, intersect_all
from .kinematics import Scenario
from .timeline import LinkTimeline, pair_key, scenario_link_timelines

#: Hard ceiling on enumerated paths; enumeration is O(n^k).
PATH_CEILING = 100_000

DEFAULT_MAX_HOPS = 3


@dataclass(frozen=True)
class PathLifetime:
    """A simple path (source first, destination last) and its live set."""

    nodes: tuple[str, ...]
    live: IntervalSet

    def __post_init__(self) -> None:
        if len(set(self.nodes)) != len(self.nodes):
            raise ScenarioError(f"path nodes must be distinct: {self.nodes}")
        if len(self.nodes) < 2:
            raise ScenarioError("a path needs at least two nodes")

    @property
    def hops(self) -> int:
        return len(self.nodes) - 1

    @property
    def is_empty(self) -> bool:
        """True when the path is never alive inside the window."""
        return self.live.is_empty


@dataclass(frozen=True)
class RoutePlan:
    """Legs (path, use interval) tiling [t1, t2]; switches = legs - 1."""

    legs: tuple[tuple[PathLifetime, TimeInterval], ...]

    @property
    def switch_count(self) -> int:
        return len(self.legs) - 1

    @property
    def paths(self) -> tuple[tuple[str, ...], ...]:
        return tuple(leg[0].nodes for leg in self.legs)


def enumerate_paths(
    timelines: Sequence[LinkTimeline],
    source: str,
    dest: str,
    max_hops: int = DEFAULT_MAX_HOPS,
) -> list[PathLifetime]:
    """All simple source->dest paths of at most ``max_hops`` edges.

    The graph is defined by the timeline pairs (a pair with an empty
    live set is still an edge; the resulting path is retained with an
    empty lifetime).  Output order is lexicographic by node sequence.
    """
    if source == dest:
        raise ScenarioError("source and destination must differ", field="routing.source")
    if max_hops < 1:
        raise ScenarioError(f"max_hops must be >= 1, got {max_hops}", field="routing.max_hops")

    live_by_pair = {tl.pair: tl.live for tl in timelines}
    nodes = sorted({n for tl in timelines for n in tl.pair})
    if source not in nodes or dest not in nodes:
        missing = source if source not in nodes else dest
        raise ScenarioError(f"unknown platform id {missing!r}", field="routing")
    adjacency = {n: [] for n in nodes}
    for a, b in live_by_pair:
        adjacency[a].append(b)
        adjacency[b].append(a)
    for n in adjacency:
        adjacency[n] = sorted(adjacency[n])

    out: list[PathLifetime] = []
    stack = [source]
    on_stack = {source}

    def visit(node: str) -> None:
        if node == dest:
            links = [live_by_pair[pair_key(a, b)] for a, b in zip(stack, stack[1:])]
            out.append(PathLifetime(tuple(stack), intersect_all(links)))
            if len(out) > PATH_CEILING:
                raise ScenarioError(
                    f"path enumeration exceeded {PATH_CEILING} paths; reduce max_hops",
                    field="routing.max_hops",
                )
            return
        if len(stack) - 1 >= max_hops:
            return
        for nxt in adjacency[node]:
            if nxt in on_stack:
                continue
            stack.append(nxt)
            on_stack.add(nxt)
            visit(nxt)
            stack.pop()
            on_stack.remove(nxt)

    visit(source)
    return out


def min_switch_route(paths: Sequence[PathLifetime], t1: float, t2: float) -> RoutePlan:
    """Greedy fewest-switch cover of [t1, t2] by path live intervals.

    At each frontier, among intervals with start <= frontier, the one
    with the greatest finish wins (ties prefer the path already in use,
    then the lexicographically smallest node sequence).  Raises
    :class:`CoverageGapError` at the first instant no interval extends.
    """
    if not (t1 <= t2):
        raise ScenarioError(f"t1 {t1} exceeds t2 {t2}", field="routing.t1")

    if t1 == t2:
        candidates = [
            p for p in paths if any(iv.contains(t1) for iv in p.live)
        ]
        if not candidates:
            raise CoverageGapError(t1)
        best = min(candidates, key=lambda p: p.nodes)
        return RoutePlan(((best, TimeInterval(t1, t1)),))

    legs: list[tuple[PathLifetime, TimeInterval]] = []
    frontier = t1
    current: PathLifetime | None = None
    while frontier < t2:
        best_path: PathLifetime | None = None
        best_finish = frontier
        for p in paths:
            for iv in p.live:
                if iv.start > frontier:
                    break
                if iv.end <= frontier:
                    continue
                better = best_path is None or iv.end > best_finish or (
                    iv.end == best_finish and _prefer(p, best_path, current)
                )
                if better:
                    best_path, best_finish = p, iv.end
        if best_path is None:
            raise CoverageGapError(frontier)
        cut = min(best_finish, t2)
        legs.append((best_path, TimeInterval(frontier, cut)))
        frontier = best_finish
        current = best_path
    return RoutePlan(tuple(legs))


def _prefer(candidate: PathLifetime, incumbent: PathLifetime, current: PathLifetime | None) -> bool:
    """Tie-break among equal finishes: stick with the current path, else
    lexicographically smallest node sequence."""
    if current is not None:
        if candidate.nodes == current.nodes:
            return True
        if incumbent.nodes == current.nodes:
            return False
    return candidate.nodes < incumbent.nodes


def route(
    scenario: Scenario,
    source: str,
    dest: str,
    max_hops: int = DEFAULT_MAX_HOPS,
    t1: float | None = None,
    t2: float | None = None,
) -> RoutePlan:
    """Enumerate paths from the scenario's timelines and route [t1, t2]."""
    scenario.platform(source)
    scenario.platform(dest)
    t1 = scenario.window_start if t1 is None else t1
    t2 = scenario.window_end if t2 is None else t2
    if t1 < scenario.window_start or t2 > scenario.window_end:
        raise ScenarioError(
            f"communication window [{t1}, {t2}] outside mission window",
            field="routing.t1",
        )
    timelines = scenario_link_timelines(scenario)
    paths = enumerate_paths(timelines, source, dest, max_hops)
    return min_switch_route(paths, t1, t2)
