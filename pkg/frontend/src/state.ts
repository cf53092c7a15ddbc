/**
 * Explorer state: baseline parameters from the backend config, the user's
 * current control values, which controls have been touched, and pinned
 * scenarios for side-by-side comparison.
 *
 * Only touched controls enter the override object, so an untouched program
 * keeps its configured allocation rules (e.g. infra-first shared spending)
 * instead of being pinned to the baseline numbers.
 */

import type { Overrides, PinnedScenario, ResolvedParams } from "./types.js";

export type ControlKey =
  | "market_revenue"
  | "market_scaling"
  | "annual_rate"
  | "lifetime_years"
  | "budget"
  | "shared_spend"
  | "direct_transfers"
  | "reference_firms";

export interface ExplorerState {
  baseline: ResolvedParams;
  values: Record<ControlKey, number | string>;
  touched: Set<ControlKey>;
  pinned: PinnedScenario[];
  selectedArchitecture: string | null;
}

export function initialState(baseline: ResolvedParams): ExplorerState {
  return {
    baseline,
    values: {
      market_revenue: baseline.market_revenue,
      market_scaling: baseline.market_scaling,
      annual_rate: baseline.rate.annual_rate,
      lifetime_years: baseline.rate.lifetime_years,
      budget: baseline.budget,
      shared_spend: baseline.shared_spend ?? 0,
      direct_transfers: baseline.direct_transfers ?? 0,
      reference_firms: baseline.reference_firms,
    },
    touched: new Set(),
    pinned: [],
    selectedArchitecture: null,
  };
}

/**
 * Record an edit. Returns true when the stored value actually changed, so
 * callers can skip the round-trip on no-op edits.
 */
export function setValue(
  state: ExplorerState,
  key: ControlKey,
  value: number | string,
): boolean {
  if (state.values[key] === value && state.touched.has(key)) return false;
  if (state.values[key] === value && !state.touched.has(key)) {
    // writing the baseline value onto an untouched control is a no-op
    return false;
  }
  state.values[key] = value;
  state.touched.add(key);
  return true;
}

export function resetControl(state: ExplorerState, key: ControlKey): void {
  state.touched.delete(key);
  const base = initialState(state.baseline);
  state.values[key] = base.values[key];
}

export function resetAll(state: ExplorerState): void {
  const base = initialState(state.baseline);
  state.values = base.values;
  state.touched.clear();
}

/** Override object containing only the controls the user has touched. */
export function buildOverrides(state: ExplorerState): Overrides {
  const overrides: Overrides = {};
  for (const key of state.touched) {
    const value = state.values[key];
    switch (key) {
      case "market_scaling":
        overrides.market_scaling = String(value);
        break;
      case "reference_firms":
      case "lifetime_years":
        overrides[key] = Number(value);
        break;
      default:
        overrides[key] = Number(value);
    }
  }
  return overrides;
}

export function pinScenario(
  state: ExplorerState,
  label: string,
  scenario: Omit<PinnedScenario, "label">,
): void {
  state.pinned.push({ label, ...scenario });
}

export function unpinScenario(state: ExplorerState, label: string): void {
  state.pinned = state.pinned.filter((p) => p.label !== label);
}
