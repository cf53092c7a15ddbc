/**
 * Sustainable-competition diagram rendered from an /api/region response.
 *
 * All geometry (band edges, boundary lines, point positions) comes from the
 * response's boundary parameters, grid, and points; the renderer only maps
 * data coordinates to pixels. Hover classification reads the nearest grid
 * cell rather than recomputing anything.
 */

import type { PinnedScenario, RegionResponse } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 640;
const HEIGHT = 460;
const MARGIN = { left: 64, right: 24, top: 16, bottom: 48 };
const BAND_SAMPLES = 96;

interface Transform {
  x(purchases: number): number;
  y(cost: number): number;
  fromPixels(px: number, py: number): { purchases: number; cost: number };
}

function makeTransform(region: RegionResponse): Transform {
  const [rgLo, rgHi] = region.diagram.purchases_range;
  const [cLo, cHi] = region.diagram.cost_range;
  const w = WIDTH - MARGIN.left - MARGIN.right;
  const h = HEIGHT - MARGIN.top - MARGIN.bottom;
  return {
    x: (rg) => MARGIN.left + ((rg - rgLo) / (rgHi - rgLo)) * w,
    y: (c) => MARGIN.top + ((cHi - c) / (cHi - cLo)) * h,
    fromPixels: (px, py) => ({
      purchases: rgLo + ((px - MARGIN.left) / w) * (rgHi - rgLo),
      cost: cHi - ((py - MARGIN.top) / h) * (cHi - cLo),
    }),
  };
}

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, String(value));
  }
  return node;
}

function bandFill(count: number, maxFirms: number): string {
  if (count === 0) return "#e8e4e0";
  const t = count / maxFirms;
  const r = Math.round(224 - 140 * t);
  const g = Math.round(236 - 110 * t);
  const b = Math.round(248 - 60 * t);
  return `rgb(${r},${g},${b})`;
}

/** Cost on the n-firm break-even line at the given purchases level. */
function lineCost(region: RegionResponse, firms: number, purchases: number): number {
  const line = region.boundaries.find((b) => b.firms === firms);
  if (!line) throw new Error(`no boundary for ${firms} firms`);
  return line.intercept + line.slope * purchases;
}

function bandPath(region: RegionResponse, count: number, t: Transform): string | null {
  const [rgLo, rgHi] = region.diagram.purchases_range;
  const [cLo, cHi] = region.diagram.cost_range;
  const maxFirms = region.diagram.max_firms;
  const clamp = (c: number) => Math.min(cHi, Math.max(cLo, c));
  const upper = (rg: number) => (count === 0 ? cHi : clamp(lineCost(region, count, rg)));
  const lower = (rg: number) =>
    count >= maxFirms
      ? cLo
      : clamp(lineCost(region, count === 0 ? 1 : count + 1, rg));
  const xs: number[] = [];
  for (let i = 0; i <= BAND_SAMPLES; i += 1) {
    xs.push(rgLo + (i * (rgHi - rgLo)) / BAND_SAMPLES);
  }
  if (xs.every((rg) => upper(rg) <= lower(rg))) return null;
  const forward = xs.map((rg) => `${t.x(rg).toFixed(1)},${t.y(upper(rg)).toFixed(1)}`);
  const backward = [...xs]
    .reverse()
    .map((rg) => `${t.x(rg).toFixed(1)},${t.y(lower(rg)).toFixed(1)}`);
  return `M${forward.join(" L")} L${backward.join(" L")} Z`;
}

function ticks(lo: number, hi: number, count = 5): number[] {
  const out: number[] = [];
  for (let i = 0; i <= count; i += 1) out.push(lo + ((hi - lo) * i) / count);
  return out;
}

/** Nearest grid cell's classification, for the hover readout. */
function gridClassification(region: RegionResponse, purchases: number, cost: number): number | null {
  const { purchases: xs, cost: ys, max_firms: grid } = region.grid;
  if (!xs.length || !ys.length) return null;
  const nearest = (values: number[], v: number) => {
    let best = 0;
    for (let i = 1; i < values.length; i += 1) {
      if (Math.abs(values[i] - v) < Math.abs(values[best] - v)) best = i;
    }
    return best;
  };
  return grid[nearest(ys, cost)][nearest(xs, purchases)];
}

export function renderDiagram(
  container: HTMLElement,
  region: RegionResponse | null,
  pinned: PinnedScenario[] = [],
): void {
  container.textContent = "";
  if (!region || region.points.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No region data to display.";
    container.appendChild(empty);
    return;
  }
  const t = makeTransform(region);
  const svg = el("svg", {
    width: WIDTH,
    height: HEIGHT,
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    role: "img",
  });
  svg.dataset.role = "region-diagram";

  for (let count = 0; count <= region.diagram.max_firms; count += 1) {
    const path = bandPath(region, count, t);
    if (!path) continue;
    const band = el("path", { d: path, fill: bandFill(count, region.diagram.max_firms) });
    band.dataset.role = "band";
    band.dataset.firms = String(count);
    svg.appendChild(band);
  }

  const [rgLo, rgHi] = region.diagram.purchases_range;
  const [cLo, cHi] = region.diagram.cost_range;
  for (const line of region.boundaries) {
    // visible stretch of the line inside the window
    let lo = rgLo;
    let hi = rgHi;
    if (line.slope > 0) {
      lo = Math.max(lo, (cLo - line.intercept) / line.slope);
      hi = Math.min(hi, (cHi - line.intercept) / line.slope);
    }
    if (lo >= hi) continue;
    const seg = el("line", {
      x1: t.x(lo).toFixed(1),
      y1: t.y(line.intercept + line.slope * lo).toFixed(1),
      x2: t.x(hi).toFixed(1),
      y2: t.y(line.intercept + line.slope * hi).toFixed(1),
      stroke: "#1a355e",
      "stroke-width": 1,
    });
    seg.dataset.role = "boundary";
    seg.dataset.firms = String(line.firms);
    svg.appendChild(seg);
  }

  svg.appendChild(
    el("rect", {
      x: MARGIN.left,
      y: MARGIN.top,
      width: WIDTH - MARGIN.left - MARGIN.right,
      height: HEIGHT - MARGIN.top - MARGIN.bottom,
      fill: "none",
      stroke: "#333",
    }),
  );

  for (const tick of ticks(rgLo, rgHi)) {
    const label = el("text", {
      x: t.x(tick).toFixed(1),
      y: HEIGHT - MARGIN.bottom + 18,
      "font-size": 10,
      "text-anchor": "middle",
    });
    label.textContent = String(Math.round(tick));
    svg.appendChild(label);
  }
  for (const tick of ticks(cLo, cHi)) {
    const label = el("text", {
      x: MARGIN.left - 6,
      y: t.y(tick).toFixed(1),
      "font-size": 10,
      "text-anchor": "end",
      "dominant-baseline": "middle",
    });
    label.textContent = String(Math.round(tick));
    svg.appendChild(label);
  }
  const xAxis = el("text", {
    x: MARGIN.left + (WIDTH - MARGIN.left - MARGIN.right) / 2,
    y: HEIGHT - 8,
    "font-size": 11,
    "text-anchor": "middle",
  });
  xAxis.textContent = "Direct government purchases ($M/year)";
  svg.appendChild(xAxis);
  const yAxis = el("text", {
    x: 14,
    y: MARGIN.top + (HEIGHT - MARGIN.top - MARGIN.bottom) / 2,
    "font-size": 11,
    "text-anchor": "middle",
    transform: `rotate(-90 14 ${MARGIN.top + (HEIGHT - MARGIN.top - MARGIN.bottom) / 2})`,
  });
  yAxis.textContent = "Industry total cost ($M/year)";
  svg.appendChild(yAxis);

  // Ghost points for pinned scenarios.
  for (const pin of pinned) {
    for (const point of pin.points) {
      const ghost = el("circle", {
        cx: t.x(point.purchases).toFixed(1),
        cy: t.y(point.cost).toFixed(1),
        r: 4,
        fill: "none",
        stroke: "#8a8a8a",
        "stroke-width": 1.5,
      });
      ghost.dataset.role = "ghost-point";
      ghost.dataset.pin = pin.label;
      ghost.dataset.label = point.label;
      svg.appendChild(ghost);
    }
  }

  for (const point of region.points) {
    const dot = el("circle", {
      cx: t.x(point.purchases).toFixed(1),
      cy: t.y(point.cost).toFixed(1),
      r: 5,
      fill: "#b4231f",
      stroke: "white",
      "stroke-width": 1.5,
    });
    dot.dataset.role = "point";
    dot.dataset.label = point.label;
    dot.dataset.firms = String(point.sustainable_firms);
    svg.appendChild(dot);
    const text = el("text", {
      x: (t.x(point.purchases) + 8).toFixed(1),
      y: (t.y(point.cost) - 6).toFixed(1),
      "font-size": 11,
      "font-weight": "bold",
      fill: "#b4231f",
    });
    text.dataset.role = "point-label";
    text.textContent = `${point.label} (${point.unbounded ? "unbounded" : point.sustainable_firms})`;
    svg.appendChild(text);
  }

  const readout = document.createElement("div");
  readout.className = "hover-readout";
  readout.dataset.role = "hover-readout";
  svg.addEventListener("mousemove", (event) => {
    const rect = svg.getBoundingClientRect();
    const { purchases, cost } = t.fromPixels(
      event.clientX - rect.left,
      event.clientY - rect.top,
    );
    if (purchases < rgLo || purchases > rgHi || cost < cLo || cost > cHi) {
      readout.textContent = "";
      return;
    }
    const maxN = gridClassification(region, purchases, cost);
    readout.textContent =
      `purchases ${Math.round(purchases)} $M/yr, cost ${Math.round(cost)} $M/yr` +
      (maxN === null ? "" : ` — sustains ${maxN}`);
  });
  svg.addEventListener("mouseleave", () => {
    readout.textContent = "";
  });

  container.appendChild(svg);
  container.appendChild(readout);
}
