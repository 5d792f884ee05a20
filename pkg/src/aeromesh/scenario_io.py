"""Human-edited scenario files and the wire-level scenario model.

File format (line oriented, ``#`` starts a comment)::

    schema_version = 1
    window_start = 0.0
    window_end = 120.0
    comm_threshold = 18.0

    [platforms]
    # id  center_x  center_y  altitude  orbit_radius  omega_deg  phase_deg
    a     0.0       0.0       0.0       2.0           60.0       0.0
    b     10.0      0.0       0.0       2.0           60.0       180.0

    [thresholds]        # optional per-pair overrides
    a  b  12.0

    [corridor]          # optional coverage problem
    length = 100.0
    width = 70.0
    height = 10.0
    coverage_radius = 20.0
    strategy = 1

    [routing]           # optional routing problem
    source = a
    dest = b
    max_hops = 3
    t1 = 0.0
    t2 = 120.0

Angles are degrees in the file for ergonomics (``omega_deg`` in
degrees/second, ``phase_deg`` in degrees) and converted to radians at
this boundary only.  Validation errors name the offending field and
line.  The wire model (HTTP) carries the same content in SI units and
radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .coverage import Corridor
from .errors import ScenarioError
from .kinematics import PlatformSpec, Scenario
from .timeline import pair_key

SCHEMA_VERSION = 1

_PLATFORM_COLUMNS = (
    "id",
    "center_x",
    "center_y",
    "altitude",
    "orbit_radius",
    "omega_deg",
    "phase_deg",
)


@dataclass(frozen=True)
class CorridorConfig:
    corridor: Corridor
    coverage_radius: float
    strategy: int


@dataclass(frozen=True)
class RoutingConfig:
    source: str
    dest: str
    max_hops: int
    t1: float
    t2: float


@dataclass(frozen=True)
class ScenarioFile:
    """Validated scenario document: kinematics plus optional problems."""

    scenario: Scenario
    pair_thresholds: tuple[tuple[str, str, float], ...] = ()
    corridor: CorridorConfig | None = None
    routing: RoutingConfig | None = None
    schema_version: int = SCHEMA_VERSION

    def thresholds_map(self) -> dict[tuple[str, str], float]:
        return {pair_key(a, b): d for a, b, d in self.pair_thresholds}


def _parse_float(raw: str, field: str, line: int) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ScenarioError(f"expected a number, got {raw!r}", field=field, line=line) from None
    if math.isnan(value):
        raise ScenarioError("NaN is not allowed", field=field, line=line)
    return value


def _parse_int(raw: str, field: str, line: int) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ScenarioError(f"expected an integer, got {raw!r}", field=field, line=line) from None


def load_scenario_text(text: str) -> ScenarioFile:
    """Parse and validate scenario text; raises :class:`ScenarioError`."""
    top: dict[str, tuple[str, int]] = {}
    sections: dict[str, list[tuple[int, str]]] = {}
    current: str | None = None
    known_sections = ("platforms", "thresholds", "corridor", "routing")

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ScenarioError("unterminated section header", line=lineno)
            name = line[1:-1].strip()
            if name not in known_sections:
                raise ScenarioError(f"unknown section [{name}]", line=lineno)
            if name in sections:
                raise ScenarioError(f"duplicate section [{name}]", line=lineno)
            sections[name] = []
            current = name
            continue
        if current is None:
            if "=" not in line:
                raise ScenarioError(f"expected 'key = value', got {line!r}", line=lineno)
            key, _, value = line.partition("=")
            key = key.strip()
            if key in top:
                raise ScenarioError(f"duplicate key {key!r}", field=key, line=lineno)
            top[key] = (value.strip(), lineno)
        else:
            sections[current].append((lineno, line))

    for key in top:
        if key not in ("schema_version", "window_start", "window_end", "comm_threshold"):
            raise ScenarioError(f"unknown key {key!r}", field=key, line=top[key][1])
    for key in ("schema_version", "window_start", "window_end", "comm_threshold"):
        if key not in top:
            raise ScenarioError(f"missing required key {key!r}", field=key)
    version = _parse_int(top["schema_version"][0], "schema_version", top["schema_version"][1])
    if version != SCHEMA_VERSION:
        raise ScenarioError(
            f"unsupported schema_version {version} (expected {SCHEMA_VERSION})",
            field="schema_version",
            line=top["schema_version"][1],
        )
    window_start = _parse_float(top["window_start"][0], "window_start", top["window_start"][1])
    window_end = _parse_float(top["window_end"][0], "window_end", top["window_end"][1])
    threshold = _parse_float(top["comm_threshold"][0], "comm_threshold", top["comm_threshold"][1])

    if "platforms" not in sections or not sections["platforms"]:
        raise ScenarioError("scenario needs a non-empty [platforms] section", field="platforms")

    platforms: list[PlatformSpec] = []
    for index, (lineno, row) in enumerate(sections["platforms"]):
        parts = row.split()
        if len(parts) != len(_PLATFORM_COLUMNS):
            raise ScenarioError(
                f"expected {len(_PLATFORM_COLUMNS)} columns "
                f"({' '.join(_PLATFORM_COLUMNS)}), got {len(parts)}",
                field=f"platforms[{index}]",
                line=lineno,
            )
        pid = parts[0]
        values = [
            _parse_float(parts[k], f"platforms[{index}].{_PLATFORM_COLUMNS[k]}", lineno)
            for k in range(1, 7)
        ]
        try:
            platforms.append(
                PlatformSpec(
                    id=pid,
                    center_x=values[0],
                    center_y=values[1],
                    altitude=values[2],
                    orbit_radius=values[3],
                    angular_velocity=math.radians(values[4]),
                    initial_phase=math.radians(values[5]),
                )
            )
        except ScenarioError as e:
            raise ScenarioError(
                e.args[0], field=f"platforms[{index}].{e.field}", line=lineno
            ) from None

    try:
        scenario = Scenario(tuple(platforms), window_start, window_end, threshold)
    except ScenarioError as e:
        line = top.get(e.field or "", (None, None))[1]
        raise ScenarioError(e.args[0], field=e.field, line=line) from None

    ids = {p.id for p in platforms}
    pair_thresholds: list[tuple[str, str, float]] = []
    seen_pairs: set[tuple[str, str]] = set()
    for index, (lineno, row) in enumerate(sections.get("thresholds", [])):
        parts = row.split()
        if len(parts) != 3:
            raise ScenarioError(
                "expected 3 columns (id id threshold)",
                field=f"thresholds[{index}]",
                line=lineno,
            )
        a, b, raw = parts
        for pid in (a, b):
            if pid not in ids:
                raise ScenarioError(
                    f"unknown platform id {pid!r}", field=f"thresholds[{index}]", line=lineno
                )
        if a == b:
            raise ScenarioError(
                "pair must name two distinct platforms",
                field=f"thresholds[{index}]",
                line=lineno,
            )
        value = _parse_float(raw, f"thresholds[{index}].threshold", lineno)
        if not (value > 0.0):
            raise ScenarioError(
                f"threshold must be > 0, got {value}",
                field=f"thresholds[{index}].threshold",
                line=lineno,
            )
        key = pair_key(a, b)
        if key in seen_pairs:
            raise ScenarioError(
                f"duplicate pair {a!r}, {b!r}", field=f"thresholds[{index}]", line=lineno
            )
        seen_pairs.add(key)
        pair_thresholds.append((*key, value))
    pair_thresholds.sort()

    corridor_cfg = _parse_kv_section(sections.get("corridor"), "corridor")
    corridor = None
    if corridor_cfg is not None:
        corridor = CorridorConfig(
            corridor=_build_corridor(corridor_cfg),
            coverage_radius=_require_float(corridor_cfg, "corridor", "coverage_radius"),
            strategy=_require_int(corridor_cfg, "corridor", "strategy", (1, 2)),
        )
        _reject_unknown(corridor_cfg, "corridor",
                        ("length", "width", "height", "coverage_radius", "strategy"))

    routing_cfg = _parse_kv_section(sections.get("routing"), "routing")
    routing = None
    if routing_cfg is not None:
        source = _require_str(routing_cfg, "routing", "source")
        dest = _require_str(routing_cfg, "routing", "dest")
        for who, pid in (("source", source), ("dest", dest)):
            if pid not in ids:
                raise ScenarioError(
                    f"unknown platform id {pid!r}",
                    field=f"routing.{who}",
                    line=routing_cfg[who][1],
                )
        routing = RoutingConfig(
            source=source,
            dest=dest,
            max_hops=_require_int(routing_cfg, "routing", "max_hops"),
            t1=_require_float(routing_cfg, "routing", "t1"),
            t2=_require_float(routing_cfg, "routing", "t2"),
        )
        _reject_unknown(routing_cfg, "routing", ("source", "dest", "max_hops", "t1", "t2"))

    return ScenarioFile(
        scenario=scenario,
        pair_thresholds=tuple(pair_thresholds),
        corridor=corridor,
        routing=routing,
        schema_version=version,
    )


def _parse_kv_section(
    rows: list[tuple[int, str]] | None, section: str
) -> dict[str, tuple[str, int]] | None:
    if rows is None:
        return None
    out: dict[str, tuple[str, int]] = {}
    for lineno, row in rows:
        if "=" not in row:
            raise ScenarioError(
                f"expected 'key = value', got {row!r}", field=section, line=lineno
            )
        key, _, value = row.partition("=")
        key = key.strip()
        if key in out:
            raise ScenarioError(f"duplicate key {key!r}", field=f"{section}.{key}", line=lineno)
        out[key] = (value.strip(), lineno)
    return out


def _require_float(cfg: dict[str, tuple[str, int]], section: str, key: str) -> float:
    if key not in cfg:
        raise ScenarioError(f"missing required key {key!r}", field=f"{section}.{key}")
    return _parse_float(cfg[key][0], f"{section}.{key}", cfg[key][1])


def _require_int(
    cfg: dict[str, tuple[str, int]], section: str, key: str,
    allowed: tuple[int, ...] | None = None,
) -> int:
    if key not in cfg:
        raise ScenarioError(f"missing required key {key!r}", field=f"{section}.{key}")
    value = _parse_int(cfg[key][0], f"{section}.{key}", cfg[key][1])
    if allowed is not None and value not in allowed:
        raise ScenarioError(
            f"must be one of {allowed}, got {value}", field=f"{section}.{key}",
            line=cfg[key][1],
        )
    return value


def _require_str(cfg: dict[str, tuple[str, int]], section: str, key: str) -> str:
    if key not in cfg:
        raise ScenarioError(f"missing required key {key!r}", field=f"{section}.{key}")
    return cfg[key][0]


def _reject_unknown(
    cfg: dict[str, tuple[str, int]], section: str, known: tuple[str, ...]
) -> None:
    for key, (_, lineno) in cfg.items():
        if key not in known:
            raise ScenarioError(
                f"unknown key {key!r}", field=f"{section}.{key}", line=lineno
            )


def _build_corridor(cfg: dict[str, tuple[str, int]]) -> Corridor:
    values = {k: _require_float(cfg, "corridor", k) for k in ("length", "width", "height")}
    try:
        return Corridor(**values)
    except ScenarioError as e:
        key = (e.field or "").removeprefix("corridor.")
        line = cfg.get(key, ("", None))[1]
        raise ScenarioError(e.args[0], field=e.field, line=line) from None


def load_scenario(path: str) -> ScenarioFile:
    with open(path, "r", encoding="utf-8") as fh:
        return load_scenario_text(fh.read())


def _degree_string(radians_value: float) -> str:
    """Degree literal whose parse converts back to exactly this radian value.

    ``degrees`` then ``radians`` is not an exact float round trip, so
    probe ulp neighbors of the naive conversion.
    """
    naive = math.degrees(radians_value)
    candidates = [naive]
    step_up = step_down = naive
    for _ in range(4):
        step_up = math.nextafter(step_up, math.inf)
        step_down = math.nextafter(step_down, -math.inf)
        candidates.extend((step_up, step_down))
    for c in candidates:
        if math.radians(c) == radians_value:
            return repr(c)
    return repr(naive)


def dump_scenario(sf: ScenarioFile) -> str:
    """Canonical text for a validated scenario document.

    ``load_scenario_text(dump_scenario(sf))`` reproduces ``sf`` exactly.
    """
    s = sf.scenario
    lines = [
        f"schema_version = {sf.schema_version}",
        f"window_start = {s.window_start!r}",
        f"window_end = {s.window_end!r}",
        f"comm_threshold = {s.comm_threshold!r}",
        "",
        "[platforms]",
        "# id  center_x  center_y  altitude  orbit_radius  omega_deg  phase_deg",
    ]
    for p in s.platforms:
        lines.append(
            "  ".join(
                (
                    p.id,
                    repr(p.center_x),
                    repr(p.center_y),
                    repr(p.altitude),
                    repr(p.orbit_radius),
                    _degree_string(p.angular_velocity),
                    _degree_string(p.initial_phase),
                )
            )
        )
    if sf.pair_thresholds:
        lines += ["", "[thresholds]"]
        for a, b, d in sf.pair_thresholds:
            lines.append(f"{a}  {b}  {d!r}")
    if sf.corridor is not None:
        c = sf.corridor
        lines += [
            "",
            "[corridor]",
            f"length = {c.corridor.length!r}",
            f"width = {c.corridor.width!r}",
            f"height = {c.corridor.height!r}",
            f"coverage_radius = {c.coverage_radius!r}",
            f"strategy = {c.strategy}",
        ]
    if sf.routing is not None:
        r = sf.routing
        lines += [
            "",
            "[routing]",
            f"source = {r.source}",
            f"dest = {r.dest}",
            f"max_hops = {r.max_hops}",
            f"t1 = {r.t1!r}",
            f"t2 = {r.t2!r}",
        ]
    return "\n".join(lines) + "\n"


def _wire_error(field: str, message: str) -> ScenarioError:
    return ScenarioError(message, field=field)


def _wire_float(obj, field: str) -> float:
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise _wire_error(field, f"expected a number, got {obj!r}")
    value = float(obj)
    if math.isnan(value):
        raise _wire_error(field, "NaN is not allowed")
    return value


def scenario_file_from_wire(body: dict) -> ScenarioFile:
    """Validate a wire scenario (radians/SI) into a :class:`ScenarioFile`.

    Shape::

        {"platforms": [{"id": ..., "center_x": ..., "center_y": ...,
                        "altitude": ..., "orbit_radius": ...,
                        "angular_velocity": ..., "initial_phase": ...}, ...],
         "window": {"start": ..., "end": ...},
         "comm_threshold": ...,
         "pair_thresholds": [{"a": ..., "b": ..., "threshold": ...}, ...]}
    """
    if not isinstance(body, dict):
        raise _wire_error("", "body must be a JSON object")
    unknown = set(body) - {"platforms", "window", "comm_threshold", "pair_thresholds",
                           "schema_version"}
    if unknown:
        raise _wire_error(sorted(unknown)[0], "unknown field")
    version = body.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise _wire_error("schema_version", f"unsupported schema_version {version!r}")

    raw_platforms = body.get("platforms")
    if not isinstance(raw_platforms, list) or not raw_platforms:
        raise _wire_error("platforms", "expected a non-empty list")
    platforms = []
    for i, item in enumerate(raw_platforms):
        if not isinstance(item, dict):
            raise _wire_error(f"platforms[{i}]", "expected an object")
        pid = item.get("id")
        if not isinstance(pid, str) or not pid:
            raise _wire_error(f"platforms[{i}].id", "expected a non-empty string")
        fields = {}
        for key in ("center_x", "center_y", "altitude", "orbit_radius",
                    "angular_velocity", "initial_phase"):
            if key not in item:
                raise _wire_error(f"platforms[{i}].{key}", "missing field")
            fields[key] = _wire_float(item[key], f"platforms[{i}].{key}")
        extra = set(item) - {"id", *fields}
        if extra:
            raise _wire_error(f"platforms[{i}].{sorted(extra)[0]}", "unknown field")
        try:
            platforms.append(PlatformSpec(id=pid, **fields))
        except ScenarioError as e:
            raise _wire_error(f"platforms[{i}].{e.field}", e.args[0]) from None

    window = body.get("window")
    if not isinstance(window, dict) or set(window) != {"start", "end"}:
        raise _wire_error("window", "expected an object with 'start' and 'end'")
    start = _wire_float(window["start"], "window.start")
    end = _wire_float(window["end"], "window.end")
    threshold = _wire_float(body.get("comm_threshold"), "comm_threshold")
    try:
        scenario = Scenario(tuple(platforms), start, end, threshold)
    except ScenarioError as e:
        raise _wire_error(e.field or "", e.args[0]) from None

    ids = {p.id for p in platforms}
    pair_thresholds: list[tuple[str, str, float]] = []
    seen: set[tuple[str, str]] = set()
    for i, item in enumerate(body.get("pair_thresholds") or []):
        if not isinstance(item, dict) or set(item) != {"a", "b", "threshold"}:
            raise _wire_error(
                f"pair_thresholds[{i}]", "expected an object with 'a', 'b', 'threshold'"
            )
        a, b = item["a"], item["b"]
        if a not in ids or b not in ids or a == b:
            raise _wire_error(f"pair_thresholds[{i}]", "must name two distinct platform ids")
        value = _wire_float(item["threshold"], f"pair_thresholds[{i}].threshold")
        if not (value > 0.0):
            raise _wire_error(f"pair_thresholds[{i}].threshold", "must be > 0")
        key = pair_key(a, b)
        if key in seen:
            raise _wire_error(f"pair_thresholds[{i}]", f"duplicate pair {a!r}, {b!r}")
        seen.add(key)
        pair_thresholds.append((*key, value))
    pair_thresholds.sort()

    return ScenarioFile(
        scenario=scenario,
        pair_thresholds=tuple(pair_thresholds),
        schema_version=SCHEMA_VERSION,
    )
