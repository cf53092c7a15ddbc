"""Shared evaluation core for the CLI and the HTTP API.

Both surfaces build their responses from these payload functions and
serialize with the same to_json, so identical inputs produce byte-identical
JSON numbers. Payloads carry full-precision values plus a display-rounded
view; every response embeds the resolved override-able parameter set, and
feeding that set back as an override reproduces the same results.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .econ_core import InfrastructureValuation
from .program import DiagramWindow, Program, diagram_spec
from .region import DiagramSpec, build_region
from .scenario import (
    ArchitectureOutcome,
    ScenarioOverride,
    ScenarioResult,
    apply_override,
    evaluate_scenario,
    find_threshold,
    run_sweep,
)

_OVERRIDE_KEYS = (
    "market_revenue",
    "market_scaling",
    "annual_rate",
    "lifetime_years",
    "rate",
    "budget",
    "shared_spend",
    "direct_transfers",
    "valuation",
    "reference_firms",
)


def to_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, allow_nan=False)


def override_from_mapping(body: Mapping[str, Any]) -> ScenarioOverride | None:
    """Strictly validated override from a JSON-ish mapping; None when empty.

    Accepts the same shape the `resolved` response block uses (nested rate
    and valuation mappings) plus flat annual_rate / lifetime_years keys.
    """
    if not isinstance(body, Mapping):
        raise ValueError(f"overrides must be a JSON object, got {type(body).__name__}")
    unknown = sorted(set(body) - set(_OVERRIDE_KEYS))
    if unknown:
        raise ValueError(
            f"unknown override key(s) {unknown}; allowed: {sorted(_OVERRIDE_KEYS)}"
        )
    if not body:
        return None

    def number(key: str, value) -> float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f"override {key} must be a number, got {value!r}")
        return float(value)

    kwargs: dict[str, Any] = {}
    if "rate" in body:
        rate = body["rate"]
        if not isinstance(rate, Mapping) or set(rate) - {"annual_rate", "lifetime_years"}:
            raise ValueError(
                "override rate must be an object with annual_rate / lifetime_years"
            )
        if "annual_rate" in rate:
            kwargs["annual_rate"] = number("rate.annual_rate", rate["annual_rate"])
        if "lifetime_years" in rate:
            kwargs["lifetime_years"] = rate["lifetime_years"]
    for key in ("market_revenue", "budget", "shared_spend", "direct_transfers"):
        if key in body:
            kwargs[key] = number(key, body[key])
    if "annual_rate" in body:
        kwargs["annual_rate"] = number("annual_rate", body["annual_rate"])
    if "lifetime_years" in body:
        kwargs["lifetime_years"] = body["lifetime_years"]
    if "market_scaling" in body:
        kwargs["market_scaling"] = body["market_scaling"]
    if "reference_firms" in body:
        kwargs["reference_firms"] = body["reference_firms"]
    if "valuation" in body:
        valuation = body["valuation"]
        if not isinstance(valuation, Mapping) or "form" not in valuation:
            raise ValueError("override valuation must be an object with a form")
        if set(valuation) - {"form", "cap"}:
            raise ValueError("override valuation allows only form and cap")
        kwargs["valuation"] = InfrastructureValuation(
            form=valuation["form"], cap=valuation.get("cap")
        )
    override = ScenarioOverride(**kwargs)
    return None if override.is_empty() else override


def apply_optional_override(
    program: Program, override: ScenarioOverride | None
) -> Program:
    if override is None:
        return program
    return apply_override(program, override)


def resolved_parameters(program: Program) -> dict[str, Any]:
    """The override-able parameter set this evaluation actually used.

    Feeding this mapping back as an override reproduces identical results.
    """
    resolved: dict[str, Any] = {
        "budget": program.budget,
        "market_revenue": program.market_revenue,
        "market_scaling": program.market_scaling,
        "reference_firms": program.reference_firms,
        "rate": {
            "annual_rate": program.rate.annual_rate,
            "lifetime_years": program.rate.lifetime_years,
        },
        "valuation": (
            {"form": program.valuation.form}
            if program.valuation.cap is None
            else {"form": program.valuation.form, "cap": program.valuation.cap}
        ),
    }
    if program.shared_spend_pin is not None:
        resolved["shared_spend"] = program.shared_spend_pin
    if program.transfers_pin is not None:
        resolved["direct_transfers"] = program.transfers_pin
    return resolved


def _rounded(values: Mapping[str, float]) -> dict[str, int]:
    return {key: round(value) for key, value in values.items()}


def _architecture_block(outcome: ArchitectureOutcome) -> dict[str, Any]:
    alloc = outcome.resolved.allocation
    ledger = outcome.account.per_firm
    allocation = {
        "budget": alloc.budget,
        "direct_purchases": alloc.direct_purchases,
        "direct_transfers": alloc.direct_transfers,
        "shared_infrastructure": alloc.shared_infrastructure,
        "slack": alloc.budget - alloc.committed,
    }
    per_firm = {
        "government_revenue": ledger.government_revenue,
        "market_revenue": ledger.market_revenue,
        "transfer": ledger.transfer,
        "infrastructure_benefit": ledger.infrastructure_benefit,
        "gross_cost": ledger.gross_cost,
        "net_cost": ledger.net_cost,
        "profit": ledger.profit,
    }
    totals = {
        "revenue": outcome.account.total_revenue,
        "cost": outcome.account.total_cost,
        "profit": outcome.account.total_profit,
    }
    return {
        "name": outcome.name,
        "firms": outcome.account.firms,
        "allocation": allocation,
        "per_firm": per_firm,
        "totals": totals,
        "sustainable_firms": outcome.sustainable_firms,
        "unbounded": outcome.unbounded,
        "point": {"purchases": outcome.point[0], "cost": outcome.point[1]},
        "rounded": {
            "allocation": _rounded(allocation),
            "per_firm": _rounded(per_firm),
            "totals": _rounded(totals),
        },
    }


def scenario_block(result: ScenarioResult) -> dict[str, Any]:
    block: dict[str, Any] = {"label": result.label}
    if result.parameter is not None:
        block["parameter"] = result.parameter
        block["value"] = result.value
    if result.error is not None:
        block["error"] = result.error
        block["architectures"] = []
        return block
    block["architectures"] = [_architecture_block(o) for o in result.architectures]
    return block


def evaluate_payload(
    program: Program, override: ScenarioOverride | None = None
) -> dict[str, Any]:
    derived = apply_optional_override(program, override)
    result = evaluate_scenario(derived)
    return {
        "program": program.name,
        "base_year": program.base_year,
        "resolved": resolved_parameters(derived),
        "architectures": [_architecture_block(o) for o in result.architectures],
    }


def _diagram_block(spec: DiagramSpec) -> dict[str, Any]:
    return {
        "market_revenue": spec.market_revenue,
        "market_scaling": spec.market_scaling,
        "reference_firms": spec.reference_firms,
        "max_firms": spec.max_firms,
        "purchases_range": list(spec.purchases_range),
        "cost_range": list(spec.cost_range),
        "resolution": list(spec.resolution),
    }


def region_payload(
    program: Program,
    override: ScenarioOverride | None = None,
    window: DiagramWindow | None = None,
) -> dict[str, Any]:
    derived = apply_optional_override(program, override)
    result = evaluate_scenario(derived)
    spec = diagram_spec(derived, window)
    points = [(o.name, o.point[0], o.point[1]) for o in result.architectures]
    region = build_region(spec, points)
    return {
        "program": program.name,
        "resolved": resolved_parameters(derived),
        "diagram": _diagram_block(spec),
        "boundaries": [
            {"firms": b.firms, "slope": b.slope, "intercept": b.intercept}
            for b in region.boundaries
        ],
        "grid": {
            "purchases": list(region.purchase_values),
            "cost": list(region.cost_values),
            "max_firms": [list(row) for row in region.grid],
        },
        "points": [
            {
                "label": p.label,
                "purchases": p.purchases,
                "cost": p.cost,
                "sustainable_firms": p.sustainable_firms,
                "unbounded": p.unbounded,
            }
            for p in region.points
        ],
        "architectures": [_architecture_block(o) for o in result.architectures],
    }


def sweep_payload(
    program: Program, parameter: str, values: list[float]
) -> dict[str, Any]:
    results = run_sweep(program, parameter, values)
    return {
        "program": program.name,
        "parameter": parameter,
        "values": values,
        "resolved": resolved_parameters(program),
        "scenarios": [scenario_block(r) for r in results],
    }


def threshold_payload(
    program: Program,
    architecture: str,
    parameter: str,
    target_firms: int,
    bracket: tuple[float, float],
) -> dict[str, Any]:
    value = find_threshold(program, architecture, parameter, target_firms, bracket)
    return {
        "program": program.name,
        "architecture": architecture,
        "parameter": parameter,
        "target_firms": target_firms,
        "bracket": list(bracket),
        "value": value,
        "resolved": resolved_parameters(program),
    }


def config_payload(program: Program) -> dict[str, Any]:
    """Program summary for clients: names, defaults, and the diagram window."""
    spec = diagram_spec(program)
    return {
        "program": program.name,
        "base_year": program.base_year,
        "resolved": resolved_parameters(program),
        "max_firms": program.max_firms,
        "architectures": [a.name for a in program.architectures],
        "modules": sorted(program.modules),
        "diagram": _diagram_block(spec),
    }
