"""Plain-text and CSV report emitters.

All rounding to the nearest $1M happens here, at emit time; payloads carry
full precision.
"""

from __future__ import annotations

import csv
import io
from typing import Any, Mapping


def _money(value: float) -> str:
    return f"{round(value):d}"


def _line(label: str, value: str, unit: str = "") -> str:
    return f"  {label:<34}{value:>10}  {unit}".rstrip()


def render_text(payload: Mapping[str, Any]) -> str:
    """Per-architecture blocks mirroring the standard parameter table rows."""
    resolved = payload["resolved"]
    rate = resolved["rate"]
    out = [
        f"program: {payload['program']}"
        + (f" (base year {payload['base_year']})" if payload.get("base_year") else ""),
        f"rate: {rate['annual_rate']:.2%}/year over {rate['lifetime_years']} years",
        f"market revenue: {_money(resolved['market_revenue'])} $M/year"
        f" ({resolved['market_scaling']})",
        "",
    ]
    for arch in payload["architectures"]:
        alloc = arch["allocation"]
        per_firm = arch["per_firm"]
        totals = arch["totals"]
        firms = arch["firms"]
        out.append(f"architecture: {arch['name']}")
        out.append(_line("desired competitors", str(firms), "firms"))
        out.append(_line("program budget", _money(alloc["budget"]), "$M/year"))
        out.append(
            _line(
                "direct transfers",
                _money(alloc["direct_transfers"] / firms),
                "$M/year/firm",
            )
        )
        out.append(
            _line(
                "direct purchases",
                _money(alloc["direct_purchases"] / firms),
                "$M/year/firm",
            )
        )
        out.append(
            _line(
                "shared infrastructure spending",
                _money(alloc["shared_infrastructure"]),
                "$M/year",
            )
        )
        out.append(
            _line("market revenue", _money(per_firm["market_revenue"]), "$M/year/firm")
        )
        out.append(
            _line(
                "shared infrastructure value",
                _money(per_firm["infrastructure_benefit"]),
                "$M/year/firm",
            )
        )
        out.append(
            _line("gross total cost", _money(per_firm["gross_cost"]), "$M/year/firm")
        )
        out.append(
            _line(
                "sustainable competitors",
                "unbounded" if arch["unbounded"] else str(arch["sustainable_firms"]),
            )
        )
        out.append("  " + "-" * 46)
        out.append(_line("total industry revenues", _money(totals["revenue"]), "$M/year"))
        out.append(_line("total industry costs", _money(totals["cost"]), "$M/year"))
        out.append(_line("total industry profits", _money(totals["profit"]), "$M/year"))
        out.append("")
    return "\n".join(out)


_CSV_COLUMNS = (
    "architecture",
    "firms",
    "budget",
    "direct_purchases",
    "direct_transfers",
    "shared_infrastructure",
    "market_revenue_per_firm",
    "infrastructure_benefit",
    "gross_cost_per_firm",
    "per_firm_profit",
    "industry_revenue",
    "industry_cost",
    "industry_profit",
    "sustainable_firms",
    "unbounded",
)


def _csv_row(arch: Mapping[str, Any]) -> list:
    alloc, per_firm, totals = arch["allocation"], arch["per_firm"], arch["totals"]
    return [
        arch["name"],
        arch["firms"],
        alloc["budget"],
        alloc["direct_purchases"],
        alloc["direct_transfers"],
        alloc["shared_infrastructure"],
        per_firm["market_revenue"],
        per_firm["infrastructure_benefit"],
        per_firm["gross_cost"],
        per_firm["profit"],
        totals["revenue"],
        totals["cost"],
        totals["profit"],
        arch["sustainable_firms"],
        arch["unbounded"],
    ]


def render_csv(payload: Mapping[str, Any]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(_CSV_COLUMNS)
    for arch in payload["architectures"]:
        writer.writerow(_csv_row(arch))
    return buffer.getvalue()


def render_sweep_csv(payload: Mapping[str, Any]) -> str:
    """One row per scenario per architecture; infeasible scenarios keep their
    row with the error in place of numbers."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("label", "parameter", "value", "error") + _CSV_COLUMNS)
    for scenario in payload["scenarios"]:
        prefix = [
            scenario["label"],
            scenario.get("parameter", ""),
            scenario.get("value", ""),
            scenario.get("error", ""),
        ]
        if scenario.get("error"):
            writer.writerow(prefix + [""] * len(_CSV_COLUMNS))
            continue
        for arch in scenario["architectures"]:
            writer.writerow(prefix + _csv_row(arch))
    return buffer.getvalue()


def render_sweep_text(payload: Mapping[str, Any]) -> str:
    out = [f"sweep over {payload['parameter']}: {payload['values']}", ""]
    for scenario in payload["scenarios"]:
        out.append(f"scenario {scenario['label']}")
        if scenario.get("error"):
            out.append(f"  infeasible: {scenario['error']}")
            out.append("")
            continue
        for arch in scenario["architectures"]:
            status = "unbounded" if arch["unbounded"] else arch["sustainable_firms"]
            out.append(
                f"  {arch['name']:<28} profit {_money(arch['totals']['profit']):>8}"
                f" $M/year   sustains {status}"
            )
        out.append("")
    return "\n".join(out)


def render_threshold_text(payload: Mapping[str, Any]) -> str:
    return (
        f"architecture {payload['architecture']}: {payload['parameter']} must reach "
        f"{payload['value']:.4g} for {payload['target_firms']} sustainable firms "
        f"(searched {payload['bracket']})"
    )
