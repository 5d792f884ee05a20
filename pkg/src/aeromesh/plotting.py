"""Distance-vs-time plots and link interval charts as SVG, plus CSV.

SVG is generated directly (no plotting library) so output bytes are a
pure function of the inputs.  The distance chart draws the sampled
curve with the horizontal communication-threshold line; spans where the
link is live are stroked separately so they stand out.  The link chart
draws one bar row per pair with a tick at every atomic slice boundary.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .intervals import TimeInterval
from .kinematics import PlatformSpec, pair_distance_squared
from .timeline import LinkTimeline, TimelineDecomposition, link_live_intervals

_W, _H = 900.0, 420.0
_ML, _MR, _MT, _MB = 70.0, 20.0, 20.0, 50.0


def plot_grid(window: TimeInterval, step: float) -> np.ndarray:
    """Uniform sample times: ceil(window/step)+1 points, last clipped."""
    n = max(1, math.ceil(window.length / step)) if window.length > 0 else 1
    ts = window.start + step * np.arange(n + 1)
    return np.minimum(ts, window.end)


def default_plot_step(window: TimeInterval) -> float:
    return window.length / 2000.0 if window.length > 0 else 1.0


def distance_csv(p: PlatformSpec, q: PlatformSpec, window: TimeInterval, step: float) -> str:
    ts = plot_grid(window, step)
    ss = np.sqrt(pair_distance_squared(p, q, ts))
    lines = ["t,distance"]
    lines += [f"{t:.9g},{s:.9g}" for t, s in zip(ts, ss)]
    return "\n".join(lines) + "\n"


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _x_of(t: float, window: TimeInterval) -> float:
    span = window.length or 1.0
    return _ML + (t - window.start) / span * (_W - _ML - _MR)


def _svg_header(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W:.0f}" height="{_H:.0f}" '
        f'viewBox="0 0 {_W:.0f} {_H:.0f}" font-family="sans-serif" font-size="12">',
        f'<title>{title}</title>',
        f'<rect width="{_W:.0f}" height="{_H:.0f}" fill="white"/>',
    ]


def distance_plot_svg(
    p: PlatformSpec,
    q: PlatformSpec,
    window: TimeInterval,
    threshold: float,
    step: float,
) -> str:
    """Distance curve with the communication threshold line.

    Curve spans at or below the threshold carry class="live"; the rest
    class="dead".  The threshold line carries class="ctl".
    """
    ts = plot_grid(window, step)
    ss = np.sqrt(pair_distance_squared(p, q, ts))
    s_max = max(float(np.max(ss)), threshold) * 1.08
    s_min = 0.0

    def y_of(s: float) -> float:
        return _H - _MB - (s - s_min) / (s_max - s_min or 1.0) * (_H - _MT - _MB)

    live = link_live_intervals(p, q, window, threshold)
    out = _svg_header(f"distance {p.id}-{q.id}")
    out.append(
        f'<line x1="{_fmt(_ML)}" y1="{_fmt(_H - _MB)}" x2="{_fmt(_W - _MR)}" '
        f'y2="{_fmt(_H - _MB)}" stroke="black"/>'
    )
    out.append(
        f'<line x1="{_fmt(_ML)}" y1="{_fmt(_MT)}" x2="{_fmt(_ML)}" '
        f'y2="{_fmt(_H - _MB)}" stroke="black"/>'
    )
    # Axis labels: window ends and max distance.
    out.append(
        f'<text x="{_fmt(_ML)}" y="{_fmt(_H - _MB + 16)}">{window.start:.6g}</text>'
    )
    out.append(
        f'<text x="{_fmt(_W - _MR - 40)}" y="{_fmt(_H - _MB + 16)}">{window.end:.6g}</text>'
    )
    out.append(f'<text x="4" y="{_fmt(y_of(s_max / 1.08) + 4)}">{s_max / 1.08:.6g}</text>')
    out.append(f'<text x="{_fmt(_W / 2 - 40)}" y="{_fmt(_H - 12)}">time (s)</text>')

    # Split the sampled polyline into live/dead runs by segment midpoint.
    runs: list[tuple[bool, list[tuple[float, float]]]] = []
    for i in range(len(ts) - 1):
        flag = live.contains(0.5 * (float(ts[i]) + float(ts[i + 1])))
        seg = (float(ts[i]), float(ss[i]))
        if runs and runs[-1][0] == flag:
            runs[-1][1].append(seg)
        else:
            runs.append((flag, [seg]))
    if runs:
        runs[-1][1].append((float(ts[-1]), float(ss[-1])))
        for k in range(len(runs) - 1):
            runs[k][1].append(runs[k + 1][1][0])
    for flag, pts in runs:
        cls = "live" if flag else "dead"
        color = "#1565c0" if flag else "#9e9e9e"
        path = " ".join(f"{_fmt(_x_of(t, window))},{_fmt(y_of(s))}" for t, s in pts)
        out.append(
            f'<polyline class="{cls}" points="{path}" fill="none" '
            f'stroke="{color}" stroke-width="{2.2 if flag else 1.4}"/>'
        )

    y_ctl = y_of(threshold)
    out.append(
        f'<line class="ctl" x1="{_fmt(_ML)}" y1="{_fmt(y_ctl)}" x2="{_fmt(_W - _MR)}" '
        f'y2="{_fmt(y_ctl)}" stroke="#c62828" stroke-dasharray="6 4" stroke-width="1.6"/>'
    )
    out.append(
        f'<text x="{_fmt(_W - _MR - 64)}" y="{_fmt(y_ctl - 6)}" fill="#c62828">'
        f"D={threshold:.6g}</text>"
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def link_chart_svg(
    timelines: Sequence[LinkTimeline],
    decomposition: TimelineDecomposition,
    window: TimeInterval,
) -> str:
    """Per-link live bars with slice-boundary ticks."""
    rows = list(timelines)
    row_h = (_H - _MT - _MB) / max(1, len(rows))
    out = _svg_header("link lifetimes")
    out.append(
        f'<line x1="{_fmt(_ML)}" y1="{_fmt(_H - _MB)}" x2="{_fmt(_W - _MR)}" '
        f'y2="{_fmt(_H - _MB)}" stroke="black"/>'
    )
    out.append(f'<text x="{_fmt(_ML)}" y="{_fmt(_H - _MB + 16)}">{window.start:.6g}</text>')
    out.append(
        f'<text x="{_fmt(_W - _MR - 40)}" y="{_fmt(_H - _MB + 16)}">{window.end:.6g}</text>'
    )
    for k, tl in enumerate(rows):
        yc = _MT + (k + 0.5) * row_h
        label = f"{tl.pair[0]}-{tl.pair[1]}"
        out.append(f'<text x="4" y="{_fmt(yc + 4)}">{label}</text>')
        out.append(
            f'<line x1="{_fmt(_ML)}" y1="{_fmt(yc)}" x2="{_fmt(_W - _MR)}" y2="{_fmt(yc)}" '
            f'stroke="#e0e0e0"/>'
        )
        for iv in tl.live:
            x0, x1 = _x_of(iv.start, window), _x_of(iv.end, window)
            out.append(
                f'<rect class="bar-live" x="{_fmt(x0)}" y="{_fmt(yc - row_h * 0.28)}" '
                f'width="{_fmt(max(x1 - x0, 0.8))}" height="{_fmt(row_h * 0.56)}" '
                f'fill="#1565c0"/>'
            )
    boundaries = {decomposition.window.start, decomposition.window.end}
    for interval, _ in decomposition.slices:
        boundaries.add(interval.start)
        boundaries.add(interval.end)
    for t in sorted(boundaries):
        x = _x_of(t, window)
        out.append(
            f'<line class="slice-tick" x1="{_fmt(x)}" y1="{_fmt(_MT)}" x2="{_fmt(x)}" '
            f'y2="{_fmt(_H - _MB)}" stroke="#c62828" stroke-dasharray="2 5" '
            f'stroke-width="0.8"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
