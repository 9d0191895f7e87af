"""Minimal standalone SVG log-log line plots (no plotting library needed)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 800, 600
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 90, 200, 50, 70
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf", "#7f7f7f")
DASHED = "6,4"


@dataclass(frozen=True)
class Series:
    """Which record fields to plot, optionally restricted to records matching ``where``."""

    label: str
    x: str
    y: str
    where: dict = field(default_factory=dict)
    dashed: bool = False


@dataclass(frozen=True)
class LogAxes:
    """Affine map from ``(log10 x, log10 y)`` to pixel coordinates."""

    xdec: tuple
    ydec: tuple

    def px(self, x):
        lo, hi = self.xdec
        span = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
        return MARGIN_LEFT + (math.log10(x) - lo) / (hi - lo) * span

    def py(self, y):
        lo, hi = self.ydec
        span = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
        return HEIGHT - MARGIN_BOTTOM - (math.log10(y) - lo) / (hi - lo) * span


def _decades(values):
    if not values:
        return (0, 1)
    lo = math.floor(math.log10(min(values)))
    hi = math.ceil(math.log10(max(values)))
    return (lo, hi if hi > lo else lo + 1)


def _matches(rec, where):
    return all(getattr(rec, key) == val for key, val in where.items())


def series_points(records, spec):
    """Positive ``(x, y)`` pairs for ``spec`` and the number of dropped points."""
    pts, dropped = [], 0
    for rec in records:
        if not _matches(rec, spec.where):
            continue
        x, y = getattr(rec, spec.x), getattr(rec, spec.y)
        if x is None or y is None or x <= 0 or y <= 0:
            dropped += 1
            continue
        pts.append((float(x), float(y)))
    return sorted(pts), dropped


def render_svg_loglog(records, series_spec, title="", xlabel="", ylabel=""):
    collected = [series_points(records, spec) for spec in series_spec]
    dropped = sum(d for _, d in collected)
    xs = [x for pts, _ in collected for x, _ in pts]
    ys = [y for pts, _ in collected for _, y in pts]
    axes = LogAxes(_decades(xs), _decades(ys))

    full_title = title
    if dropped:
        full_title = f"{title} ({dropped} non-positive points omitted)".strip()

    x0, x1 = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
    y0, y1 = HEIGHT - MARGIN_BOTTOM, MARGIN_TOP
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f"<title>{escape(full_title)}</title>",
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{x0}" y="{y1}" width="{x1 - x0}" height="{y0 - y1}" fill="none" stroke="black"/>',
    ]
    for d in range(axes.xdec[0], axes.xdec[1] + 1):
        px = axes.px(10.0**d)
        out.append(f'<line x1="{px:.2f}" y1="{y0}" x2="{px:.2f}" y2="{y1}" stroke="#dddddd"/>')
        out.append(f'<text x="{px:.2f}" y="{y0 + 20}" font-size="12" text-anchor="middle">1e{d}</text>')
    for d in range(axes.ydec[0], axes.ydec[1] + 1):
        py = axes.py(10.0**d)
        out.append(f'<line x1="{x0}" y1="{py:.2f}" x2="{x1}" y2="{py:.2f}" stroke="#dddddd"/>')
        out.append(f'<text x="{x0 - 8}" y="{py + 4:.2f}" font-size="12" text-anchor="end">1e{d}</text>')
    out.append(f'<text x="{(x0 + x1) / 2}" y="{HEIGHT - 20}" font-size="14" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(
        f'<text x="20" y="{(y0 + y1) / 2}" font-size="14" text-anchor="middle" '
        f'transform="rotate(-90 20 {(y0 + y1) / 2})">{escape(ylabel)}</text>'
    )
    out.append(f'<text x="{WIDTH / 2}" y="28" font-size="16" text-anchor="middle">{escape(full_title)}</text>')

    for i, (spec, (pts, _)) in enumerate(zip(series_spec, collected)):
        color = COLORS[i % len(COLORS)]
        dash = f' stroke-dasharray="{DASHED}"' if spec.dashed else ""
        if pts:
            coords = " ".join(f"{axes.px(x):.3f},{axes.py(y):.3f}" for x, y in pts)
            out.append(
                f'<polyline class="series" data-label="{escape(spec.label)}" points="{coords}" '
                f'fill="none" stroke="{color}" stroke-width="2"{dash}/>'
            )
        ly = MARGIN_TOP + 20 + 22 * i
        lx = WIDTH - MARGIN_RIGHT + 15
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 30}" y2="{ly}" stroke="{color}" stroke-width="2"{dash}/>')
        out.append(f'<text x="{lx + 38}" y="{ly + 4}" font-size="12">{escape(spec.label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg_loglog(records, series_spec, path, title="", xlabel="", ylabel=""):
    """Write a log-log plot of ``series_spec`` drawn from ``records`` to ``path``.

    Non-positive values cannot be placed on log axes; they are skipped and
    counted in the title.
    """
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_svg_loglog(records, series_spec, title, xlabel, ylabel))
