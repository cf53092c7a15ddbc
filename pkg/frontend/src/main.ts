/**
 * App wiring: builds the explorer DOM, debounces control edits into API
 * round-trips with last-write-wins sequencing, and re-renders the diagram
 * and P&L cards from each response.
 */

import { ApiClient, ApiError, Sequencer } from "./api.js";
import { renderCards } from "./cards.js";
import {
  clearHighlights,
  highlightControl,
  renderControls,
  syncControlValues,
} from "./controls.js";
import { debounce } from "./debounce.js";
import { renderDiagram } from "./diagram.js";
import {
  ExplorerState,
  buildOverrides,
  initialState,
  resetAll,
  setValue,
  unpinScenario,
} from "./state.js";
import type { RegionResponse } from "./types.js";

export interface AppOptions {
  /** Edit-coalescing window; 250ms keeps the request rate at or under 4/s. */
  debounceMs?: number;
}

export interface App {
  state: ExplorerState;
  /** Force an immediate round-trip with the current override set. */
  refresh(): Promise<void>;
  /** Resolve once no debounce is pending and no request is in flight. */
  settle(): Promise<void>;
  latest(): RegionResponse | null;
}

function section(root: HTMLElement, className: string, role: string): HTMLElement {
  const el = document.createElement("div");
  el.className = className;
  el.dataset.role = role;
  root.appendChild(el);
  return el;
}

export async function initApp(
  root: HTMLElement,
  api: ApiClient = new ApiClient(),
  options: AppOptions = {},
): Promise<App> {
  const debounceMs = options.debounceMs ?? 250;

  const banner = section(root, "error-banner hidden", "error-banner");
  const layout = section(root, "layout", "layout");
  const controlsEl = section(layout, "controls", "controls");
  const mainEl = section(layout, "main", "main");
  const titleEl = section(mainEl, "program-title", "program-title");
  const diagramEl = section(mainEl, "diagram", "diagram");
  const cardsEl = section(mainEl, "cards", "cards");
  const pinsEl = section(mainEl, "pins", "pins");

  const config = await api.config();
  const state = initialState(config.resolved);
  titleEl.textContent = `${config.program}${config.base_year ? ` (base year ${config.base_year})` : ""}`;

  let latest: RegionResponse | null = null;
  const getLatest = (): RegionResponse | null => latest;
  let inflight: Promise<void> | null = null;
  let timerPending = false;
  const sequencer = new Sequencer();

  function showError(err: unknown): void {
    banner.classList.remove("hidden");
    diagramEl.classList.add("stale");
    cardsEl.classList.add("stale");
    if (err instanceof ApiError) {
      banner.textContent = err.body.error;
      if (err.status === 422 && err.body.binding_constraint) {
        highlightControl(controlsEl, err.body.binding_constraint);
      }
    } else {
      banner.textContent = "API request failed; showing stale data.";
    }
  }

  function clearError(): void {
    banner.classList.add("hidden");
    banner.textContent = "";
    diagramEl.classList.remove("stale");
    cardsEl.classList.remove("stale");
    clearHighlights(controlsEl);
  }

  function renderAll(): void {
    renderDiagram(diagramEl, latest, state.pinned);
    renderCards(
      cardsEl,
      latest?.architectures ?? [],
      state.pinned[0] ?? null,
      state.selectedArchitecture,
    );
    renderPins();
  }

  function renderPins(): void {
    pinsEl.textContent = "";
    const pinButton = document.createElement("button");
    pinButton.type = "button";
    pinButton.dataset.role = "pin-scenario";
    pinButton.textContent = "Pin current scenario";
    pinButton.disabled = latest === null;
    pinButton.addEventListener("click", () => {
      if (!latest) return;
      // Capture the API-reported parameters and results, not client state,
      // so the comparison stays reproducible.
      state.pinned.push({
        label: `pin ${state.pinned.length + 1}`,
        resolved: latest.resolved,
        architectures: latest.architectures,
        points: latest.points,
      });
      renderAll();
    });
    pinsEl.appendChild(pinButton);
    for (const pin of state.pinned) {
      const chip = document.createElement("span");
      chip.className = "pin-chip";
      chip.dataset.role = "pin-chip";
      chip.textContent = `${pin.label} (demand ${pin.resolved.market_revenue}, rate ${pin.resolved.rate.annual_rate})`;
      const remove = document.createElement("button");
      remove.type = "button";
      remove.textContent = "×";
      remove.addEventListener("click", () => {
        unpinScenario(state, pin.label);
        renderAll();
      });
      chip.appendChild(remove);
      pinsEl.appendChild(chip);
    }
  }

  async function refresh(): Promise<void> {
    const seq = sequencer.next();
    const overrides = buildOverrides(state);
    const request = (async () => {
      try {
        const region = await api.region(overrides);
        if (!sequencer.isCurrent(seq)) return; // superseded by a newer edit
        latest = region;
        clearError();
        renderAll();
      } catch (err) {
        if (!sequencer.isCurrent(seq)) return;
        showError(err);
      } finally {
        if (sequencer.isCurrent(seq)) inflight = null;
      }
    })();
    inflight = request;
    return request;
  }

  const debouncedRefresh = debounce(() => {
    timerPending = false;
    void refresh();
  }, debounceMs);

  renderControls(
    controlsEl,
    config.resolved,
    (key, value) => {
      if (!setValue(state, key, value)) return; // no-op edit: no request
      timerPending = true;
      debouncedRefresh();
    },
    () => {
      debouncedRefresh.cancel();
      timerPending = false;
      resetAll(state);
      syncControlValues(controlsEl, config.resolved);
      void refresh();
    },
  );

  await refresh();

  // The shared-spend slider starts at the rule-derived level of the most
  // infrastructure-heavy architecture so a first drag moves from there.
  const baselineRegion = getLatest();
  const sharedInput = controlsEl.querySelector<HTMLInputElement>("#control-shared_spend");
  if (sharedInput && baselineRegion && !state.touched.has("shared_spend")) {
    const ruleLevel = Math.max(
      ...baselineRegion.architectures.map((a) => a.allocation.shared_infrastructure),
    );
    sharedInput.value = String(Math.round(ruleLevel));
    const label = controlsEl.querySelector<HTMLElement>(
      '[data-control="shared_spend"] [data-role="control-value"]',
    );
    if (label) label.textContent = "auto (by rule)";
  }

  async function settle(): Promise<void> {
    while (timerPending || inflight) {
      if (timerPending) {
        debouncedRefresh.cancel();
        timerPending = false;
        await refresh();
      } else if (inflight) {
        await inflight;
      }
    }
  }

  return {
    state,
    refresh,
    settle,
    latest: getLatest,
  };
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  void initApp(document.getElementById("app") as HTMLElement);
}
