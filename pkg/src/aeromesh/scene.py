"""Self-contained scene documents for the companion UI.

A scene document carries everything the viewer needs: full kinematic
parameters, per-pair thresholds, precomputed link timelines, atomic
slices with per-slice connectivity, reference positions, and (when the
scenario has a corridor block) the coverage plan.  All values are SI
units, radians and seconds.  Serialization is deterministic: sorted
keys, compact separators, floats rounded to 9 significant digits.
"""

from __future__ import annotations

import json

from .connectivity import component_partition
from .coverage import plan_coverage
from .kinematics import position_at
from .scenario_io import ScenarioFile
from .timeline import build_link_timelines, decompose_timeline

SCENE_SCHEMA_VERSION = 1


def _r9(x: float) -> float:
    """Round to 9 significant digits (deterministic wire precision)."""
    return float(f"{float(x):.9g}")


def build_scene_document(sf: ScenarioFile, revision: int = 0) -> dict:
    """Compute the full scene for a validated scenario."""
    s = sf.scenario
    window = s.window
    overrides = sf.thresholds_map()
    timelines = build_link_timelines(s.platforms, window, s.comm_threshold, overrides)
    decomp = decompose_timeline(timelines, window)
    ids = sorted(p.id for p in s.platforms)

    reference_time = s.window_start
    platforms = []
    for p in sorted(s.platforms, key=lambda p: p.id):
        x, y, z = position_at(p, reference_time)
        platforms.append(
            {
                "id": p.id,
                "center_x": _r9(p.center_x),
                "center_y": _r9(p.center_y),
                "altitude": _r9(p.altitude),
                "orbit_radius": _r9(p.orbit_radius),
                "angular_velocity": _r9(p.angular_velocity),
                "initial_phase": _r9(p.initial_phase),
                "position_at_reference": [_r9(x), _r9(y), _r9(z)],
            }
        )

    pairs = []
    for tl in timelines:
        a, b = tl.pair
        pairs.append(
            {
                "a": a,
                "b": b,
                "threshold": _r9(overrides.get(tl.pair, s.comm_threshold)),
                "live": [[_r9(iv.start), _r9(iv.end)] for iv in tl.live],
            }
        )

    slices = []
    connected_throughout = True
    for interval, edges in decomp.slices:
        connected = len(component_partition(ids, sorted(edges))) <= 1
        connected_throughout = connected_throughout and connected
        slices.append(
            {
                "start": _r9(interval.start),
                "end": _r9(interval.end),
                "edges": sorted([a, b] for a, b in edges),
                "connected": connected,
            }
        )

    doc = {
        "schema_version": SCENE_SCHEMA_VERSION,
        "revision": revision,
        "window": {"start": _r9(s.window_start), "end": _r9(s.window_end)},
        "comm_threshold": _r9(s.comm_threshold),
        "reference_time": _r9(reference_time),
        "platforms": platforms,
        "pairs": pairs,
        "slices": slices,
        "connected_throughout": connected_throughout,
    }

    if sf.corridor is not None:
        cfg = sf.corridor
        plan = plan_coverage(cfg.corridor, cfg.coverage_radius, cfg.strategy)
        doc["coverage_plan"] = {
            "strategy": plan.strategy,
            "platforms_per_orbit": plan.platforms_per_orbit,
            "orbit_count": plan.orbit_count,
            "total": plan.total,
            "orbit_radius": _r9(plan.orbit_radius),
            "coverage_radius": _r9(cfg.coverage_radius),
            "tile_length": _r9(plan.tile_length),
            "tile_width": _r9(plan.tile_width),
            "centers": [[_r9(x), _r9(y)] for x, y in plan.centers],
            "platform_phases": [_r9(v) for v in plan.platform_phases],
            "corridor": {
                "length": _r9(cfg.corridor.length),
                "width": _r9(cfg.corridor.width),
                "height": _r9(cfg.corridor.height),
            },
        }
    return doc


def scene_json_bytes(doc: dict) -> bytes:
    """Deterministic serialization: sorted keys, no whitespace."""
    return (
        json.dumps(doc, sort_keys=True, separators=(",", ":"), allow_nan=False) + "\n"
    ).encode("utf-8")
