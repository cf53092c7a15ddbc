/**
 * Per-architecture P&L cards: allocation split, per-firm ledger, industry
 * totals, and the sustainable-competitor classification, with deltas against
 * a pinned baseline.
 *
 * Every figure is printed straight from the API response (the $1M view uses
 * the response's own `rounded` block); deltas are the only client-side
 * subtraction and they difference two API-reported numbers.
 */

import type { ArchitectureBlock, PinnedScenario } from "./types.js";

function row(label: string, value: string, delta?: string): HTMLTableRowElement {
  const tr = document.createElement("tr");
  const name = document.createElement("td");
  name.textContent = label;
  const val = document.createElement("td");
  val.className = "num";
  val.textContent = value;
  tr.append(name, val);
  const d = document.createElement("td");
  d.className = "num delta";
  d.textContent = delta ?? "";
  tr.append(d);
  return tr;
}

function fmtDelta(current: number, pinned: number | undefined): string {
  if (pinned === undefined) return "";
  const diff = current - pinned;
  if (diff === 0) return "±0";
  return `${diff > 0 ? "+" : "−"}${Math.abs(diff)}`;
}

export function renderCards(
  container: HTMLElement,
  architectures: ArchitectureBlock[],
  baseline: PinnedScenario | null,
  selected: string | null,
): void {
  container.textContent = "";
  for (const arch of architectures) {
    const pinnedArch = baseline?.architectures.find((a) => a.name === arch.name);
    const card = document.createElement("section");
    card.className = "card" + (arch.name === selected ? " selected" : "");
    card.dataset.role = "architecture-card";
    card.dataset.name = arch.name;

    const heading = document.createElement("h3");
    heading.textContent = arch.name;
    card.appendChild(heading);

    const badge = document.createElement("p");
    badge.className = "badge";
    badge.dataset.role = "classification";
    badge.textContent = arch.unbounded
      ? `sustains ${arch.sustainable_firms}+ firms (unbounded)`
      : `sustains ${arch.sustainable_firms} firm${arch.sustainable_firms === 1 ? "" : "s"}`;
    card.appendChild(badge);

    const table = document.createElement("table");
    const r = arch.rounded;
    const pinnedRounded = pinnedArch?.rounded;
    table.append(
      row("direct purchases / firm", String(r.per_firm.government_revenue)),
      row("shared infrastructure", String(r.allocation.shared_infrastructure)),
      row("transfer / firm", String(r.per_firm.transfer)),
      row("market revenue / firm", String(r.per_firm.market_revenue)),
      row("gross cost / firm", String(r.per_firm.gross_cost)),
      row(
        "profit / firm",
        String(r.per_firm.profit),
        fmtDelta(r.per_firm.profit, pinnedRounded?.per_firm.profit),
      ),
      row(
        "industry revenues",
        String(r.totals.revenue),
        fmtDelta(r.totals.revenue, pinnedRounded?.totals.revenue),
      ),
      row(
        "industry costs",
        String(r.totals.cost),
        fmtDelta(r.totals.cost, pinnedRounded?.totals.cost),
      ),
      row(
        "industry profits",
        String(r.totals.profit),
        fmtDelta(r.totals.profit, pinnedRounded?.totals.profit),
      ),
    );
    table.querySelector("tr:last-child")?.classList.add("total");
    card.appendChild(table);

    const note = document.createElement("p");
    note.className = "fine-print";
    note.textContent = `full precision: industry profit ${arch.totals.profit}`;
    card.appendChild(note);

    container.appendChild(card);
  }
}
