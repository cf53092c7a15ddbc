/**
 * Control panel: sliders and selects for the override-able parameters.
 * Emits (key, value) on every edit; the app decides whether the edit is a
 * no-op. A control can be highlighted when the backend reports it as the
 * binding constraint of an infeasible override.
 */

import type { ControlKey } from "./state.js";
import type { ResolvedParams } from "./types.js";

export interface ControlSpec {
  key: ControlKey;
  label: string;
  min: number;
  max: number;
  step: number;
  format?(value: number): string;
}

export type EditHandler = (key: ControlKey, value: number | string) => void;

const PERCENT = (v: number) => `${(v * 100).toFixed(1)}%`;

export function controlSpecs(baseline: ResolvedParams): ControlSpec[] {
  const budgetCap = Math.max(baseline.budget * 2, 100);
  return [
    {
      key: "market_revenue",
      label: "Market demand ($M/year)",
      min: 0,
      max: Math.max(baseline.market_revenue * 4, 2000),
      step: 10,
    },
    { key: "budget", label: "Program budget ($M/year)", min: 0, max: budgetCap, step: 10 },
    {
      key: "shared_spend",
      label: "Shared infrastructure spending ($M/year)",
      min: 0,
      max: budgetCap,
      step: 1,
    },
    {
      key: "direct_transfers",
      label: "Direct transfers ($M/year)",
      min: 0,
      max: budgetCap,
      step: 10,
    },
    {
      key: "annual_rate",
      label: "Investor return expectation",
      min: 0,
      max: 0.2,
      step: 0.005,
      format: PERCENT,
    },
    { key: "lifetime_years", label: "Asset lifetime (years)", min: 1, max: 30, step: 1 },
    { key: "reference_firms", label: "Desired competitors", min: 1, max: 6, step: 1 },
  ];
}

export function renderControls(
  container: HTMLElement,
  baseline: ResolvedParams,
  onEdit: EditHandler,
  onReset: () => void,
): void {
  container.textContent = "";

  for (const spec of controlSpecs(baseline)) {
    const rowEl = document.createElement("div");
    rowEl.className = "control-row";
    rowEl.dataset.control = spec.key;

    const label = document.createElement("label");
    label.textContent = spec.label;
    label.htmlFor = `control-${spec.key}`;

    const value = document.createElement("span");
    value.className = "control-value";
    value.dataset.role = "control-value";

    const input = document.createElement("input");
    input.type = "range";
    input.id = `control-${spec.key}`;
    input.min = String(spec.min);
    input.max = String(spec.max);
    input.step = String(spec.step);
    const initial = initialValue(baseline, spec.key);
    input.value = String(initial);
    value.textContent = spec.format ? spec.format(initial) : String(initial);

    input.addEventListener("input", () => {
      const next = Number(input.value);
      value.textContent = spec.format ? spec.format(next) : String(next);
      onEdit(spec.key, next);
    });

    rowEl.append(label, input, value);
    container.appendChild(rowEl);
  }

  const scalingRow = document.createElement("div");
  scalingRow.className = "control-row";
  scalingRow.dataset.control = "market_scaling";
  const scalingLabel = document.createElement("label");
  scalingLabel.textContent = "Demand scaling";
  scalingLabel.htmlFor = "control-market_scaling";
  const scaling = document.createElement("select");
  scaling.id = "control-market_scaling";
  for (const mode of ["industry_fixed", "per_firm_fixed"]) {
    const option = document.createElement("option");
    option.value = mode;
    option.textContent = mode === "industry_fixed" ? "fixed industry pool" : "fixed per firm";
    scaling.appendChild(option);
  }
  scaling.value = baseline.market_scaling;
  scaling.addEventListener("change", () => onEdit("market_scaling", scaling.value));
  scalingRow.append(scalingLabel, scaling);
  container.appendChild(scalingRow);

  const reset = document.createElement("button");
  reset.type = "button";
  reset.dataset.role = "reset";
  reset.textContent = "Reset to baseline";
  reset.addEventListener("click", onReset);
  container.appendChild(reset);
}

export function syncControlValues(container: HTMLElement, baseline: ResolvedParams): void {
  for (const spec of controlSpecs(baseline)) {
    const rowEl = container.querySelector<HTMLElement>(`[data-control="${spec.key}"]`);
    const input = rowEl?.querySelector("input");
    const value = rowEl?.querySelector<HTMLElement>('[data-role="control-value"]');
    if (!rowEl || !input || !value) continue;
    const initial = initialValue(baseline, spec.key);
    input.value = String(initial);
    value.textContent = spec.format ? spec.format(initial) : String(initial);
  }
  const scaling = container.querySelector<HTMLSelectElement>("#control-market_scaling");
  if (scaling) scaling.value = baseline.market_scaling;
}

function initialValue(baseline: ResolvedParams, key: ControlKey): number {
  switch (key) {
    case "market_revenue":
      return baseline.market_revenue;
    case "budget":
      return baseline.budget;
    case "shared_spend":
      return baseline.shared_spend ?? 0;
    case "direct_transfers":
      return baseline.direct_transfers ?? 0;
    case "annual_rate":
      return baseline.rate.annual_rate;
    case "lifetime_years":
      return baseline.rate.lifetime_years;
    case "reference_firms":
      return baseline.reference_firms;
    default:
      return 0;
  }
}

export function highlightControl(container: HTMLElement, key: string): void {
  clearHighlights(container);
  const rowEl = container.querySelector<HTMLElement>(`[data-control="${key}"]`);
  rowEl?.classList.add("violates-constraint");
}

export function clearHighlights(container: HTMLElement): void {
  for (const el of container.querySelectorAll(".violates-constraint")) {
    el.classList.remove("violates-constraint");
  }
}
