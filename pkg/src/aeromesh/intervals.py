"""Closed time intervals and sorted disjoint interval sets.

These are the currency for link and path lifetimes.  Intervals are
closed on both ends: a boundary instant belongs to the interval.
Normalization merges gaps below a tolerance and drops slivers below the
same tolerance, because measure-zero contacts are physically meaningless
and destabilize downstream set algebra.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Iterable, Iterator

#: Default temporal tolerance (seconds) for drop/merge normalization.
EPS_T = 1e-6


@dataclass(frozen=True, order=True)
class TimeInterval:
    """Closed interval [start, end] in seconds, start <= end."""

    start: float
    end: float

    def __post_init__(self) -> None:
        if not (self.start <= self.end):
            raise ValueError(f"interval start {self.start} exceeds end {self.end}")

    @property
    def length(self) -> float:
        return self.end - self.start

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.start + self.end)

    def contains(self, t: float) -> bool:
        return self.start <= t <= self.end

    def clipped(self, lo: float, hi: float) -> "TimeInterval | None":
        """Intersection with [lo, hi], or None when disjoint."""
        a, b = max(self.start, lo), min(self.end, hi)
        if a > b:
            return None
        return TimeInterval(a, b)


@dataclass(frozen=True)
class IntervalSet:
    """Sorted, pairwise-disjoint closed intervals.

    Construct through :meth:`from_pairs`, which normalizes arbitrary
    input.  The raw constructor trusts its argument.
    """

    intervals: tuple[TimeInterval, ...] = ()

    @classmethod
    def from_pairs(
        cls,
        pairs: Iterable[tuple[float, float]],
        *,
        eps: float = EPS_T,
        min_length: float | None = None,
    ) -> "IntervalSet":
        """Normalize ``pairs`` into a canonical set.

        Overlapping intervals and gaps smaller than ``eps`` are merged;
        intervals shorter than ``min_length`` (defaults to ``eps``) are
        dropped after merging.  Pass ``min_length=0`` to keep degenerate
        single-instant intervals.
        """
        if min_length is None:
            min_length = eps
        items = sorted((float(a), float(b)) for a, b in pairs)
        merged: list[list[float]] = []
        for a, b in items:
            if b < a:
                raise ValueError(f"interval start {a} exceeds end {b}")
            if merged and a - merged[-1][1] < eps:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        kept = tuple(TimeInterval(a, b) for a, b in merged if (b - a) >= min_length)
        return cls(kept)

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def measure(self) -> float:
        return sum(iv.length for iv in self.intervals)

    def contains(self, t: float) -> bool:
        """Closed membership test."""
        i = bisect.bisect_right(self.intervals, t, key=lambda iv: iv.start) - 1
        return i >= 0 and t <= self.intervals[i].end

    def intersection(self, other: "IntervalSet", *, eps: float = EPS_T) -> "IntervalSet":
        """Pointwise intersection; result is re-normalized with ``eps``."""
        out: list[tuple[float, float]] = []
        i = j = 0
        a, b = self.intervals, other.intervals
        while i < len(a) and j < len(b):
            lo = max(a[i].start, b[j].start)
            hi = min(a[i].end, b[j].end)
            if lo <= hi:
                out.append((lo, hi))
            if a[i].end < b[j].end:
                i += 1
            else:
                j += 1
        return IntervalSet.from_pairs(out, eps=eps)

    def union(self, other: "IntervalSet", *, eps: float = EPS_T) -> "IntervalSet":
        pairs = [(iv.start, iv.end) for iv in self.intervals]
        pairs += [(iv.start, iv.end) for iv in other.intervals]
        return IntervalSet.from_pairs(pairs, eps=eps)

    def clipped(self, lo: float, hi: float) -> "IntervalSet":
        out = []
        for iv in self.intervals:
            c = iv.clipped(lo, hi)
            if c is not None:
                out.append(c)
        return IntervalSet(tuple(out))

    def endpoints(self) -> list[float]:
        out: list[float] = []
        for iv in self.intervals:
            out.append(iv.start)
            out.append(iv.end)
        return out

    def __iter__(self) -> Iterator[TimeInterval]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)


def intersect_all(sets: Iterable[IntervalSet], *, eps: float = EPS_T) -> IntervalSet:
    """Intersection of several sets; empty input yields the empty set."""
    result: IntervalSet | None = None
    for s in sets:
        result = s if result is None else result.intersection(s, eps=eps)
        if result.is_empty:
            return result
    return result if result is not None else IntervalSet()
