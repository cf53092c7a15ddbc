"""CSV and SVG emitters for competition-region diagrams.

The SVG is self-contained: shaded bands for each sustainable firm count,
exact boundary lines clipped to the plot window, axes in $M/year, and
labeled architecture points. The plot frame carries data-* attributes with
the axis ranges so consumers (and tests) can invert the pixel transform
without knowing the renderer's margins.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .region import BoundaryLine, CompetitionRegion, boundary_cost

SVG_WIDTH = 880
SVG_HEIGHT = 600
MARGIN_LEFT = 80
MARGIN_RIGHT = 210
MARGIN_TOP = 48
MARGIN_BOTTOM = 64

_BAND_SAMPLES = 128


def region_to_csv(region: CompetitionRegion) -> str:
    """Grid as CSV with columns RG, C, maxN (one row per grid cell)."""
    lines = ["RG,C,maxN"]
    for j, cost in enumerate(region.cost_values):
        for i, purchases in enumerate(region.purchase_values):
            lines.append(f"{purchases:.10g},{cost:.10g},{region.grid[j][i]}")
    return "\n".join(lines) + "\n"


def _fmt(value: float) -> str:
    return f"{value:.2f}".rstrip("0").rstrip(".")


def _band_fill(count: int, max_firms: int) -> str:
    """Light warm gray for the no-market band, then a blue ramp deepening
    with the sustainable count."""
    if count == 0:
        return "#e8e4e0"
    t = count / max_firms
    r = round(224 - 140 * t)
    g = round(236 - 110 * t)
    b = round(248 - 60 * t)
    return f"#{r:02x}{g:02x}{b:02x}"


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    span = hi - lo
    raw = span / max(target - 1, 1)
    magnitude = 10 ** math.floor(math.log10(raw))
    for mult in (1, 2, 2.5, 5, 10):
        step = mult * magnitude
        if span / step <= target:
            break
    first = math.ceil(lo / step) * step
    ticks = []
    value = first
    while value <= hi + 1e-9 * span:
        ticks.append(round(value, 10))
        value += step
    return ticks


class _Transform:
    def __init__(self, region: CompetitionRegion):
        self.rg_lo, self.rg_hi = region.spec.purchases_range
        self.c_lo, self.c_hi = region.spec.cost_range
        self.x0 = MARGIN_LEFT
        self.y0 = MARGIN_TOP
        self.w = SVG_WIDTH - MARGIN_LEFT - MARGIN_RIGHT
        self.h = SVG_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def x(self, rg: float) -> float:
        return self.x0 + (rg - self.rg_lo) / (self.rg_hi - self.rg_lo) * self.w

    def y(self, cost: float) -> float:
        return self.y0 + (self.c_hi - cost) / (self.c_hi - self.c_lo) * self.h


def _clip_boundary(
    line: BoundaryLine, t: _Transform
) -> tuple[float, float, float, float] | None:
    """Visible segment of a boundary line inside the data window, or None.

    Boundary slopes are positive, so cost is increasing in purchases and the
    window clip reduces to intersecting two intervals on the purchases axis.
    """
    rg_lo, rg_hi = t.rg_lo, t.rg_hi
    # Purchases interval where the line's cost lies inside [c_lo, c_hi].
    if line.slope > 0:
        enter = (t.c_lo - line.intercept) / line.slope
        leave = (t.c_hi - line.intercept) / line.slope
        rg_lo = max(rg_lo, enter)
        rg_hi = min(rg_hi, leave)
    elif not (t.c_lo <= line.intercept <= t.c_hi):
        return None
    if rg_lo >= rg_hi:
        return None
    return rg_lo, boundary_cost(line, rg_lo), rg_hi, boundary_cost(line, rg_hi)


def _band_path(
    region: CompetitionRegion, count: int, t: _Transform
) -> str | None:
    """Fill path for the band where exactly `count` firms are sustainable."""
    spec = region.spec
    lines = {b.firms: b for b in region.boundaries}
    c_lo, c_hi = spec.cost_range

    def upper(rg: float) -> float:
        if count == 0:
            return c_hi
        return min(c_hi, boundary_cost(lines[count], rg))

    def lower(rg: float) -> float:
        if count >= spec.max_firms:
            return c_lo
        below = lines[count + 1] if count > 0 else lines[1]
        return max(c_lo, boundary_cost(below, rg))

    rgs = [
        spec.purchases_range[0]
        + i * (spec.purchases_range[1] - spec.purchases_range[0]) / _BAND_SAMPLES
        for i in range(_BAND_SAMPLES + 1)
    ]
    tops = [max(upper(rg), c_lo) for rg in rgs]
    bottoms = [min(max(lower(rg), c_lo), c_hi) for rg in rgs]
    tops = [min(v, c_hi) for v in tops]
    if all(top <= bottom for top, bottom in zip(tops, bottoms)):
        return None
    forward = [f"{_fmt(t.x(rg))},{_fmt(t.y(top))}" for rg, top in zip(rgs, tops)]
    backward = [
        f"{_fmt(t.x(rg))},{_fmt(t.y(bottom))}"
        for rg, bottom in zip(reversed(rgs), reversed(bottoms))
    ]
    return "M" + " L".join(forward) + " L" + " L".join(backward) + " Z"


def region_to_svg(region: CompetitionRegion, title: str = "") -> str:
    spec = region.spec
    t = _Transform(region)
    parts: list[str] = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" '
        f'height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}" '
        f'font-family="sans-serif">'
    )
    parts.append(f'<rect width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>')
    if title:
        parts.append(
            f'<text x="{MARGIN_LEFT}" y="28" font-size="16" font-weight="bold">'
            f"{escape(title)}</text>"
        )

    # Shaded bands, widest count range first so later bands sit on top.
    for count in range(0, spec.max_firms + 1):
        path = _band_path(region, count, t)
        if path is None:
            continue
        parts.append(
            f'<path d="{path}" fill="{_band_fill(count, spec.max_firms)}" '
            f'data-role="band" data-firms="{count}"/>'
        )

    # Plot frame with the data window recorded for inverse transforms.
    parts.append(
        f'<rect x="{t.x0}" y="{t.y0}" width="{t.w}" height="{t.h}" fill="none" '
        f'stroke="#333" data-role="plot-area" '
        f'data-rg-min="{_fmt(t.rg_lo)}" data-rg-max="{_fmt(t.rg_hi)}" '
        f'data-c-min="{_fmt(t.c_lo)}" data-c-max="{_fmt(t.c_hi)}"/>'
    )

    # Exact boundary lines, clipped to the window.
    for line in region.boundaries:
        seg = _clip_boundary(line, t)
        if seg is None:
            continue
        rg1, c1, rg2, c2 = seg
        parts.append(
            f'<line x1="{_fmt(t.x(rg1))}" y1="{_fmt(t.y(c1))}" '
            f'x2="{_fmt(t.x(rg2))}" y2="{_fmt(t.y(c2))}" '
            f'stroke="#1a355e" stroke-width="1.2" '
            f'data-role="boundary" data-firms="{line.firms}"/>'
        )
        parts.append(
            f'<text x="{_fmt(t.x(rg2) + 4)}" y="{_fmt(t.y(c2) + 4)}" '
            f'font-size="11" fill="#1a355e">n={line.firms}</text>'
        )

    # Axes.
    for tick in _nice_ticks(t.rg_lo, t.rg_hi):
        x = _fmt(t.x(tick))
        parts.append(
            f'<line x1="{x}" y1="{t.y0 + t.h}" x2="{x}" y2="{t.y0 + t.h + 5}" stroke="#333"/>'
        )
        parts.append(
            f'<text x="{x}" y="{t.y0 + t.h + 20}" font-size="11" '
            f'text-anchor="middle">{tick:g}</text>'
        )
    for tick in _nice_ticks(t.c_lo, t.c_hi):
        y = _fmt(t.y(tick))
        parts.append(
            f'<line x1="{t.x0 - 5}" y1="{y}" x2="{t.x0}" y2="{y}" stroke="#333"/>'
        )
        parts.append(
            f'<text x="{t.x0 - 9}" y="{y}" font-size="11" text-anchor="end" '
            f'dominant-baseline="middle">{tick:g}</text>'
        )
    parts.append(
        f'<text x="{t.x0 + t.w / 2}" y="{SVG_HEIGHT - 18}" font-size="13" '
        f'text-anchor="middle">Direct government purchases ($M/year)</text>'
    )
    parts.append(
        f'<text x="20" y="{t.y0 + t.h / 2}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 20 {t.y0 + t.h / 2})">Industry total cost ($M/year)</text>'
    )

    # Architecture points.
    for point in region.points:
        x, y = _fmt(t.x(point.purchases)), _fmt(t.y(point.cost))
        label = f"{point.label} ({'unbounded' if point.unbounded else point.sustainable_firms})"
        parts.append(
            f'<circle cx="{x}" cy="{y}" r="5" fill="#b4231f" stroke="white" '
            f'stroke-width="1.5" data-role="point" data-label="{escape(point.label)}" '
            f'data-firms="{point.sustainable_firms}"/>'
        )
        parts.append(
            f'<text x="{_fmt(t.x(point.purchases) + 9)}" y="{_fmt(t.y(point.cost) - 7)}" '
            f'font-size="12" font-weight="bold" fill="#b4231f">{escape(label)}</text>'
        )

    # Legend.
    legend_x = t.x0 + t.w + 18
    parts.append(
        f'<text x="{legend_x}" y="{t.y0 + 4}" font-size="12" font-weight="bold">'
        f"Sustainable firms</text>"
    )
    for idx, count in enumerate(range(spec.max_firms, -1, -1)):
        y = t.y0 + 16 + idx * 18
        label = str(count) if count < spec.max_firms else f"{count}+"
        parts.append(
            f'<rect x="{legend_x}" y="{y}" width="14" height="14" '
            f'fill="{_band_fill(count, spec.max_firms)}" stroke="#999"/>'
        )
        parts.append(
            f'<text x="{legend_x + 20}" y="{y + 11}" font-size="11">{label}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
