"""Command-line surface.

Exit codes are a stable contract: 0 success / property holds, 1 the
analysis concluded the property cannot hold, 2 bad input.  Every
command echoes a hash of its input so results can be tied back to the
exact scenario that produced them.  ``--format jsonl`` switches the
human text for one JSON object per line.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from .connectivity import connectivity_from_timelines, solve_min_range, solve_velocity
from .coverage import (
    DEFAULT_N_MAX,
    DEFAULT_PLAN_OMEGA,
    Corridor,
    plan_connected_coverage,
    plan_coverage,
    verify_coverage,
)
from .errors import InfeasibleError, ScenarioError
from .plotting import (
    default_plot_step,
    distance_csv,
    distance_plot_svg,
    link_chart_svg,
)
from .routing import DEFAULT_MAX_HOPS, enumerate_paths, min_switch_route
from .scenario_io import ScenarioFile, load_scenario
from .scene import build_scene_document, scene_json_bytes
from .timeline import build_link_timelines, decompose_timeline, pair_key


class _Output:
    """Uniform text / json-lines emission."""

    def __init__(self, fmt: str):
        self.jsonl = fmt == "jsonl"

    def emit(self, record: dict, text_lines: list[str]) -> None:
        if self.jsonl:
            print(json.dumps(record, sort_keys=True))
        else:
            for line in text_lines:
                print(line)


def _input_hash(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()[:16]


def _load(args) -> tuple[ScenarioFile, str]:
    if not args.scenario:
        raise ScenarioError("--scenario is required for this command", field="scenario")
    return load_scenario(args.scenario), _input_hash(args.scenario)


def _violation_record(report) -> dict | None:
    if report.first_violation is None:
        return None
    interval, partition = report.first_violation
    return {
        "start": interval.start,
        "end": interval.end,
        "partition": [list(g) for g in partition],
    }


def cmd_check(args) -> int:
    sf, digest = _load(args)
    s = sf.scenario
    ids = sorted(p.id for p in s.platforms)
    timelines = build_link_timelines(s.platforms, s.window, s.comm_threshold,
                                     sf.thresholds_map())
    report, _ = connectivity_from_timelines(ids, timelines, s.window)
    out = _Output(args.format)
    record = {
        "type": "check",
        "input_sha256": digest,
        "connected_throughout": report.connected_throughout,
        "violation": _violation_record(report),
    }
    lines = [f"input sha256: {digest}"]
    if report.connected_throughout:
        lines.append("connected throughout: yes")
    else:
        interval, partition = report.first_violation
        lines.append("connected throughout: no")
        lines.append(
            f"first violation: [{interval.start:.9g}, {interval.end:.9g}] "
            f"components: {' | '.join(','.join(g) for g in partition)}"
        )
    out.emit(record, lines)
    return 0 if report.connected_throughout else 1


def cmd_solve_range(args) -> int:
    sf, digest = _load(args)
    s = sf.scenario
    solution = solve_min_range(s.platforms, s.window, args.t_max, args.eps_r)
    _Output(args.format).emit(
        {
            "type": "solve-range",
            "input_sha256": digest,
            "min_range": solution.min_range,
            "t_max": args.t_max,
            "eps_r": args.eps_r,
        },
        [
            f"input sha256: {digest}",
            f"minimum transmission range: {solution.min_range:.9g} m "
            f"(searched up to {args.t_max:.9g}, tolerance {args.eps_r:.9g})",
        ],
    )
    return 0


def cmd_solve_velocity(args) -> int:
    sf, digest = _load(args)
    solution = solve_velocity(
        sf.scenario,
        args.omega_min,
        args.omega_max,
        grid_points=args.grid_points,
        omega_optimal=args.omega_optimal,
    )
    _Output(args.format).emit(
        {
            "type": "solve-velocity",
            "input_sha256": digest,
            "chosen_omega": solution.chosen_omega,
            "objective": solution.objective,
        },
        [
            f"input sha256: {digest}",
            f"chosen angular velocity: {solution.chosen_omega:.9g} rad/s "
            f"({solution.objective})",
        ],
    )
    return 0


def cmd_route(args) -> int:
    sf, digest = _load(args)
    s = sf.scenario
    cfg = sf.routing
    source = args.source or (cfg.source if cfg else None)
    dest = args.dest or (cfg.dest if cfg else None)
    if not source or not dest:
        raise ScenarioError(
            "source/dest required (flags or [routing] block)", field="routing"
        )
    max_hops = args.max_hops if args.max_hops is not None else (
        cfg.max_hops if cfg else DEFAULT_MAX_HOPS
    )
    t1 = args.t1 if args.t1 is not None else (cfg.t1 if cfg else s.window_start)
    t2 = args.t2 if args.t2 is not None else (cfg.t2 if cfg else s.window_end)
    s.platform(source)
    s.platform(dest)

    timelines = build_link_timelines(s.platforms, s.window, s.comm_threshold,
                                     sf.thresholds_map())
    paths = enumerate_paths(timelines, source, dest, max_hops)
    plan = min_switch_route(paths, t1, t2)
    legs = [
        {
            "path": list(p.nodes),
            "start": iv.start,
            "end": iv.end,
        }
        for p, iv in plan.legs
    ]
    lines = [f"input sha256: {digest}", f"switches: {plan.switch_count}"]
    for leg in legs:
        lines.append(
            f"  [{leg['start']:.9g}, {leg['end']:.9g}]  {'-'.join(leg['path'])}"
        )
    _Output(args.format).emit(
        {
            "type": "route",
            "input_sha256": digest,
            "switch_count": plan.switch_count,
            "legs": legs,
        },
        lines,
    )
    return 0


def _corridor_from_args(args, sf: ScenarioFile | None):
    have_flags = all(
        getattr(args, k) is not None
        for k in ("length", "width", "height", "coverage_radius")
    )
    if have_flags:
        corridor = Corridor(args.length, args.width, args.height)
        return corridor, args.coverage_radius, args.strategy or 1
    if sf is not None and sf.corridor is not None:
        cfg = sf.corridor
        return cfg.corridor, cfg.coverage_radius, args.strategy or cfg.strategy
    raise ScenarioError(
        "corridor parameters required (--length/--width/--height/--coverage-radius "
        "or a [corridor] block)",
        field="corridor",
    )


def _plan_record(plan) -> dict:
    return {
        "strategy": plan.strategy,
        "platforms_per_orbit": plan.platforms_per_orbit,
        "orbit_count": plan.orbit_count,
        "total": plan.total,
        "orbit_radius": plan.orbit_radius,
        "tile_length": plan.tile_length,
        "tile_width": plan.tile_width,
        "centers": [list(c) for c in plan.centers],
    }


def _plan_lines(plan, digest: str) -> list[str]:
    return [
        f"input sha256: {digest}",
        f"strategy {plan.strategy}: {plan.orbit_count} orbits x "
        f"{plan.platforms_per_orbit} platforms = {plan.total} total",
        f"orbit radius: {plan.orbit_radius:.9g} m; tile: "
        f"{plan.tile_length:.9g} x {plan.tile_width:.9g} m",
    ]


def cmd_plan_coverage(args) -> int:
    sf = digest = None
    if args.scenario:
        sf, digest = _load(args)
    corridor, r_s, strategy = _corridor_from_args(args, sf)
    if digest is None:
        digest = hashlib.sha256(
            f"{corridor.length!r},{corridor.width!r},{corridor.height!r},{r_s!r},{strategy}".encode()
        ).hexdigest()[:16]
    plan = plan_coverage(corridor, r_s, strategy, args.n_max)
    record = {"type": "plan-coverage", "input_sha256": digest, "plan": _plan_record(plan)}
    lines = _plan_lines(plan, digest)
    if args.verify_point_samples:
        check = verify_coverage(
            plan,
            corridor,
            r_s,
            time_samples=args.verify_time_samples,
            point_samples=args.verify_point_samples,
            seed=args.seed,
        )
        record["verification"] = {
            "fraction": check.fraction,
            "seed": args.seed,
            "worst_min_distance": check.worst_min_distance,
            "worst_point": list(check.worst_point),
            "worst_phase": check.worst_phase,
        }
        lines.append(
            f"verification: fraction {check.fraction:.6f} "
            f"(worst min distance {check.worst_min_distance:.9g} m, seed {args.seed})"
        )
    _Output(args.format).emit(record, lines)
    return 0


def cmd_plan_connected_coverage(args) -> int:
    sf = digest = None
    if args.scenario:
        sf, digest = _load(args)
    corridor, r_s, strategy = _corridor_from_args(args, sf)
    if digest is None:
        digest = hashlib.sha256(
            f"{corridor.length!r},{corridor.width!r},{corridor.height!r},{r_s!r},"
            f"{strategy},{args.t_max!r},{args.omega!r}".encode()
        ).hexdigest()[:16]
    plan, solution = plan_connected_coverage(
        corridor, r_s, strategy, args.t_max, omega=args.omega, n_max=args.n_max
    )
    record = {
        "type": "plan-connected-coverage",
        "input_sha256": digest,
        "plan": _plan_record(plan),
        "min_range": solution.min_range,
        "omega": args.omega,
    }
    lines = _plan_lines(plan, digest)
    lines.append(
        f"minimum transmission range at omega {args.omega:.9g} rad/s: "
        f"{solution.min_range:.9g} m"
    )
    _Output(args.format).emit(record, lines)
    return 0


def cmd_plot(args) -> int:
    sf, digest = _load(args)
    s = sf.scenario
    step = args.plot_step or default_plot_step(s.window)
    out_prefix = args.out or str(Path(args.scenario).with_suffix(""))
    written = []
    if args.link_chart:
        timelines = build_link_timelines(
            s.platforms, s.window, s.comm_threshold, sf.thresholds_map()
        )
        decomp = decompose_timeline(timelines, s.window)
        svg = link_chart_svg(timelines, decomp, s.window)
        path = Path(f"{out_prefix}-links.svg")
        path.write_text(svg, encoding="utf-8")
        written.append(str(path))
    else:
        if not args.pair:
            raise ScenarioError("--pair A,B or --link-chart is required", field="pair")
        names = args.pair.split(",")
        if len(names) != 2:
            raise ScenarioError(f"--pair expects two ids, got {args.pair!r}", field="pair")
        p, q = s.platform(names[0]), s.platform(names[1])
        threshold = sf.thresholds_map().get(pair_key(p.id, q.id), s.comm_threshold)
        svg = distance_plot_svg(p, q, s.window, threshold, step)
        csv = distance_csv(p, q, s.window, step)
        svg_path = Path(f"{out_prefix}-{p.id}-{q.id}.svg")
        csv_path = Path(f"{out_prefix}-{p.id}-{q.id}.csv")
        svg_path.write_text(svg, encoding="utf-8")
        csv_path.write_text(csv, encoding="utf-8")
        written += [str(svg_path), str(csv_path)]
    _Output(args.format).emit(
        {"type": "plot", "input_sha256": digest, "written": written},
        [f"input sha256: {digest}"] + [f"wrote {w}" for w in written],
    )
    return 0


def cmd_export_scene(args) -> int:
    sf, digest = _load(args)
    payload = scene_json_bytes(build_scene_document(sf))
    if args.out:
        Path(args.out).write_bytes(payload)
        _Output(args.format).emit(
            {"type": "export-scene", "input_sha256": digest, "written": args.out},
            [f"input sha256: {digest}", f"wrote {args.out}"],
        )
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return 0


def cmd_serve(args) -> int:
    from .service import serve_scene

    sf, digest = _load(args)
    print(f"input sha256: {digest}")
    serve_scene(sf, host=args.host, port=args.port, ui_dir=args.ui_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aeromesh",
        description="Planning toolkit for airborne backbone networks on circular orbits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def seed(value: str) -> int:
        n = int(value)
        if n < 0:
            raise argparse.ArgumentTypeError("seed must be non-negative")
        return n

    def common(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--scenario", help="scenario file path")
        p.add_argument("--out", help="output path (or prefix for plots)")
        p.add_argument("--seed", type=seed, default=0, help="RNG seed for verification")
        p.add_argument(
            "--format", choices=("text", "jsonl"), default="text",
            help="output style: human text or one JSON object per line",
        )
        return p

    p = common(sub.add_parser("check", help="certify all-time connectivity"))
    p.set_defaults(func=cmd_check)

    p = common(sub.add_parser("solve-range", help="minimum transmission range"))
    p.add_argument("--t-max", type=float, required=True, help="maximum transmission range")
    p.add_argument("--eps-r", type=float, default=1e-3, help="bracket tolerance (m)")
    p.set_defaults(func=cmd_solve_range)

    p = common(sub.add_parser("solve-velocity", help="feasible shared angular velocity"))
    p.add_argument("--omega-min", type=float, required=True)
    p.add_argument("--omega-max", type=float, required=True)
    p.add_argument("--grid-points", type=int, default=64)
    p.add_argument("--omega-optimal", type=float, default=None,
                   help="prefer the feasible omega closest to this")
    p.set_defaults(func=cmd_solve_velocity)

    p = common(sub.add_parser("route", help="fewest-switch route between two platforms"))
    p.add_argument("--source")
    p.add_argument("--dest")
    p.add_argument("--max-hops", type=int, default=None)
    p.add_argument("--t1", type=float, default=None)
    p.add_argument("--t2", type=float, default=None)
    p.set_defaults(func=cmd_route)

    def corridor_flags(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--length", type=float, default=None)
        p.add_argument("--width", type=float, default=None)
        p.add_argument("--height", type=float, default=None)
        p.add_argument("--coverage-radius", type=float, default=None)
        p.add_argument("--strategy", type=int, choices=(1, 2), default=None)
        p.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
        return p

    p = corridor_flags(common(sub.add_parser("plan-coverage", help="corridor coverage plan")))
    p.add_argument("--verify-time-samples", type=int, default=64)
    p.add_argument("--verify-point-samples", type=int, default=0,
                   help="when > 0, Monte-Carlo verify the plan")
    p.set_defaults(func=cmd_plan_coverage)

    p = corridor_flags(
        common(sub.add_parser("plan-connected-coverage", help="coverage + backbone range"))
    )
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--omega", type=float, default=DEFAULT_PLAN_OMEGA)
    p.set_defaults(func=cmd_plan_connected_coverage)

    p = common(sub.add_parser("plot", help="distance plot (SVG+CSV) or link chart"))
    p.add_argument("--pair", help="two platform ids, comma separated")
    p.add_argument("--link-chart", action="store_true")
    p.add_argument("--plot-step", type=float, default=None)
    p.set_defaults(func=cmd_plot)

    p = common(sub.add_parser("export-scene", help="write the scene document JSON"))
    p.set_defaults(func=cmd_export_scene)

    p = common(sub.add_parser("serve", help="local scene service for the UI"))
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8780)
    p.add_argument("--ui-dir", default=None, help="also serve this directory at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except InfeasibleError as e:
        print(f"infeasible: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
