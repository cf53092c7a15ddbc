"""Itemized cost rollups: element-level capital and operations into per-module
and per-firm gross annual costs.

A module's construction capital is the sum of its element capital plus an
integration surcharge (a fraction of that sum); the surcharge never applies
to operations costs. Per-firm gross cost counts every module the firm's
offering depends on, whether the firm builds it or a program provides it as
shared infrastructure, so the figure is comparable across architectures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .finance import MoneyLump, MoneyPerYear, RateSpec, annuitize


@dataclass(frozen=True)
class CostElement:
    """One line item of a system module: capital outlay and/or annual operations."""

    name: str
    capital: MoneyLump = 0.0
    ops_per_year: MoneyPerYear = 0.0
    notes: str = ""

    def __post_init__(self) -> None:
        if not math.isfinite(self.capital) or self.capital < 0:
            raise ValueError(
                f"element {self.name!r}: capital must be finite and >= 0, "
                f"got {self.capital}"
            )
        if not math.isfinite(self.ops_per_year) or self.ops_per_year < 0:
            raise ValueError(
                f"element {self.name!r}: ops_per_year must be finite and >= 0, "
                f"got {self.ops_per_year}"
            )


@dataclass(frozen=True)
class SystemModuleCost:
    """Rolled-up cost of one module at a given rate; build via rollup_module."""

    name: str
    elements: tuple[CostElement, ...]
    integration_fraction: float
    construction_capital: MoneyLump
    construction_annuity: MoneyPerYear
    ops_annuity: MoneyPerYear

    @property
    def total_annuity(self) -> MoneyPerYear:
        return self.construction_annuity + self.ops_annuity


def rollup_module(
    name: str,
    elements: list[CostElement] | tuple[CostElement, ...],
    integration_fraction: float,
    rate: RateSpec,
) -> SystemModuleCost:
    """Aggregate cost elements into module-level capital and annual costs.

    Capital: sum of element capital times (1 + integration_fraction), then
    annuitized at the given rate. Operations: summed linearly, no surcharge.
    """
    if not math.isfinite(integration_fraction) or integration_fraction < 0:
        raise ValueError(
            f"module {name!r}: integration_fraction must be finite and >= 0, "
            f"got {integration_fraction}"
        )
    elements = tuple(elements)
    capital = sum(e.capital for e in elements) * (1.0 + integration_fraction)
    ops = sum(e.ops_per_year for e in elements)
    return SystemModuleCost(
        name=name,
        elements=elements,
        integration_fraction=integration_fraction,
        construction_capital=capital,
        construction_annuity=annuitize(capital, rate),
        ops_annuity=ops,
    )


def scale_ops_by_share(base_ops: MoneyPerYear, share: float) -> MoneyPerYear:
    """Pro-rate a reference operations budget by a resource share in [0, 1]."""
    if not math.isfinite(base_ops) or base_ops < 0:
        raise ValueError(f"base_ops must be finite and >= 0, got {base_ops}")
    if not math.isfinite(share) or not 0.0 <= share <= 1.0:
        raise ValueError(f"share must be in [0, 1], got {share}")
    return base_ops * share


@dataclass(frozen=True)
class ArchitectureCostSpec:
    """Modules each firm builds for itself plus modules provided as shared
    infrastructure, all priced at one rate."""

    per_firm_modules: tuple[SystemModuleCost, ...]
    shared_modules: tuple[SystemModuleCost, ...]
    rate: RateSpec


def per_firm_gross_cost(spec: ArchitectureCostSpec) -> MoneyPerYear:
    """Gross annual cost per firm: every module's total annuity, shared or not.

    The benefit of shared provision is accounted for separately as a cost
    offset in the profit ledger, never by dropping modules from gross cost.
    """
    return sum(m.total_annuity for m in spec.per_firm_modules) + sum(
        m.total_annuity for m in spec.shared_modules
    )


def shared_infrastructure_annuity(spec: ArchitectureCostSpec) -> MoneyPerYear:
    """Annual cost of the modules provided as shared infrastructure."""
    return sum(m.total_annuity for m in spec.shared_modules)
