/**
 * Test helpers: fixtures captured from the live backend, and a fetch mock
 * that routes requests to them so rendered values can be compared against
 * real API bytes.
 */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { RegionResponse } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

// eslint-disable-next-line @typescript-eslint/no-explicit-any
export function fixture<T = any>(name: string): T {
  return JSON.parse(readFileSync(join(here, "fixtures", name), "utf-8")) as T;
}

export const regionBaseline = () => fixture<RegionResponse>("region_baseline.json");
export const regionDemand1000 = () => fixture<RegionResponse>("region_demand_1000.json");
export const regionRate10 = () => fixture<RegionResponse>("region_rate_10.json");

export interface FetchCall {
  url: string;
  // eslint-disable-next-line @typescript-eslint/no-explicit-any
  overrides: any;
}

function jsonResponse(data: unknown, status = 200): Response {
  return new Response(JSON.stringify(data), {
    status,
    headers: { "content-type": "application/json" },
  });
}

/**
 * Replace global fetch with a router over the captured fixtures. Returns the
 * call log so tests can count round-trips and inspect override bodies.
 */
export function installFetchMock(): { calls: FetchCall[] } {
  const calls: FetchCall[] = [];
  globalThis.fetch = (async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    if (url.endsWith("/api/config")) {
      calls.push({ url, overrides: null });
      return jsonResponse(fixture("config.json"));
    }
    if (url.endsWith("/api/region")) {
      const body = init?.body ? JSON.parse(String(init.body)) : {};
      const overrides = body.overrides ?? {};
      calls.push({ url, overrides });
      if (overrides.budget === 400) {
        return jsonResponse(fixture("region_infeasible_budget_400.json"), 422);
      }
      if (overrides.market_revenue === 1000) {
        return jsonResponse(fixture("region_demand_1000.json"));
      }
      if (overrides.annual_rate === 0.1) {
        return jsonResponse(fixture("region_rate_10.json"));
      }
      return jsonResponse(fixture("region_baseline.json"));
    }
    throw new Error(`unexpected fetch: ${url}`);
  }) as typeof fetch;
  return { calls };
}

export function slider(root: HTMLElement, key: string): HTMLInputElement {
  const input = root.querySelector<HTMLInputElement>(`#control-${key}`);
  if (!input) throw new Error(`no control for ${key}`);
  return input;
}

export function drag(input: HTMLInputElement, value: number | string): void {
  input.value = String(value);
  input.dispatchEvent(new Event("input", { bubbles: true }));
}
