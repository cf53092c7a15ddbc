"""Program model: a cost library, candidate architectures with budget
allocation rules, and resolution of everything into evaluated allocations,
scenarios, and diagram specs at the program's configured rate.

Resolution is where allocation rules meet the budget. The infra-first rule
prices the architecture's shared modules, spends that much on shared
infrastructure, pays any configured transfers, and leaves the remainder for
direct purchases; the explicit rule takes all three components as given.
Either way the resolved allocation must fit the budget.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .cost_model import (
    ArchitectureCostSpec,
    CostElement,
    per_firm_gross_cost,
    rollup_module,
    shared_infrastructure_annuity,
)
from .econ_core import (
    BudgetAllocation,
    IndustryScenario,
    InfrastructureValuation,
    check_budget,
)
from .finance import RateSpec
from .region import DEFAULT_MAX_FIRMS, DiagramSpec

ALLOCATION_RULES = ("infra_first", "explicit")


class InfeasibleError(ValueError):
    """An allocation cannot fit the program budget.

    binding_constraint names the violated constraint so callers (CLI exit
    codes, HTTP 422 bodies, UI highlights) can point at the offending input.
    """

    def __init__(self, message: str, binding_constraint: str):
        super().__init__(message)
        self.binding_constraint = binding_constraint


@dataclass(frozen=True)
class ModuleDef:
    """A module's raw cost breakdown, reusable at any rate."""

    name: str
    elements: tuple[CostElement, ...]
    integration_fraction: float = 0.0


@dataclass(frozen=True)
class Allocation:
    """How an architecture splits the program budget.

    infra_first: shared spending equals the shared modules' total annuity,
    transfers are as configured, purchases take the remainder. explicit:
    all three components given outright.
    """

    rule: str = "infra_first"
    direct_purchases: float = 0.0
    direct_transfers: float = 0.0
    shared_infrastructure: float = 0.0

    def __post_init__(self) -> None:
        if self.rule not in ALLOCATION_RULES:
            raise ValueError(
                f"allocation rule must be one of {ALLOCATION_RULES}, got {self.rule!r}"
            )


@dataclass(frozen=True)
class ArchitectureDef:
    name: str
    per_firm_modules: tuple[str, ...]
    shared_modules: tuple[str, ...] = ()
    allocation: Allocation = Allocation()


@dataclass(frozen=True)
class DiagramWindow:
    purchases_range: tuple[float, float]
    cost_range: tuple[float, float]
    resolution: tuple[int, int] = (61, 61)


@dataclass(frozen=True)
class Program:
    """A complete what-if program: budget, rate, cost library, architectures,
    and scenario defaults."""

    name: str
    budget: float
    rate: RateSpec
    modules: dict[str, ModuleDef]
    architectures: tuple[ArchitectureDef, ...]
    market_revenue: float
    market_scaling: str = "industry_fixed"
    reference_firms: int = 2
    max_firms: int = DEFAULT_MAX_FIRMS
    valuation: InfrastructureValuation = field(default_factory=InfrastructureValuation)
    diagram: DiagramWindow | None = None
    base_year: str = ""
    # Set by overrides: pin shared-infrastructure spending and/or transfers
    # for every architecture; purchases then take the budget remainder.
    shared_spend_pin: float | None = None
    transfers_pin: float | None = None

    def __post_init__(self) -> None:
        if self.budget < 0:
            raise ValueError(f"budget must be >= 0, got {self.budget}")
        if not self.architectures:
            raise ValueError("program needs at least one architecture")
        names = [a.name for a in self.architectures]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate architecture names: {names}")
        for arch in self.architectures:
            for module_name in arch.per_firm_modules + arch.shared_modules:
                if module_name not in self.modules:
                    raise ValueError(
                        f"architecture {arch.name!r} references unknown module "
                        f"{module_name!r}"
                    )

    def architecture(self, name: str) -> ArchitectureDef:
        for arch in self.architectures:
            if arch.name == name:
                return arch
        raise KeyError(f"unknown architecture {name!r}")


@dataclass(frozen=True)
class ResolvedArchitecture:
    """An architecture evaluated at the program's rate: priced modules, the
    resolved budget split, and the industry scenario it implies."""

    name: str
    cost: ArchitectureCostSpec
    allocation: BudgetAllocation
    scenario: IndustryScenario


@dataclass(frozen=True)
class ResolvedProgram:
    program: Program
    architectures: tuple[ResolvedArchitecture, ...]

    def architecture(self, name: str) -> ResolvedArchitecture:
        for arch in self.architectures:
            if arch.name == name:
                return arch
        raise KeyError(f"unknown architecture {name!r}")


def _resolve_allocation(
    program: Program, arch: ArchitectureDef, cost: ArchitectureCostSpec
) -> BudgetAllocation:
    rule = arch.allocation
    transfers = (
        program.transfers_pin
        if program.transfers_pin is not None
        else rule.direct_transfers
    )
    pinned = program.shared_spend_pin is not None or program.transfers_pin is not None
    if program.shared_spend_pin is not None:
        shared = program.shared_spend_pin
    elif rule.rule == "infra_first":
        shared = shared_infrastructure_annuity(cost)
    else:
        shared = rule.shared_infrastructure
    if rule.rule == "infra_first" or pinned:
        purchases = program.budget - shared - transfers
    else:
        purchases = rule.direct_purchases
    if purchases < 0:
        raise InfeasibleError(
            f"architecture {arch.name!r}: shared infrastructure ({shared:.1f}) "
            f"plus transfers ({transfers:.1f}) exceed the program budget "
            f"({program.budget:.1f}); no funds remain for direct purchases",
            binding_constraint="budget",
        )
    alloc = BudgetAllocation(
        budget=program.budget,
        direct_purchases=purchases,
        direct_transfers=transfers,
        shared_infrastructure=shared,
    )
    verdict = check_budget(alloc)
    if not verdict.feasible:
        raise InfeasibleError(
            f"architecture {arch.name!r}: purchases + transfers + shared "
            f"infrastructure ({alloc.committed:.1f}) exceed the program budget "
            f"({program.budget:.1f})",
            binding_constraint="budget",
        )
    return alloc


def resolve_program(program: Program) -> ResolvedProgram:
    """Price every architecture's modules at the program rate, resolve its
    budget allocation, and build the industry scenario it implies.

    Raises InfeasibleError when an allocation cannot fit the budget.
    """
    resolved = []
    for arch in program.architectures:
        cost = ArchitectureCostSpec(
            per_firm_modules=tuple(
                rollup_module(
                    name,
                    program.modules[name].elements,
                    program.modules[name].integration_fraction,
                    program.rate,
                )
                for name in arch.per_firm_modules
            ),
            shared_modules=tuple(
                rollup_module(
                    name,
                    program.modules[name].elements,
                    program.modules[name].integration_fraction,
                    program.rate,
                )
                for name in arch.shared_modules
            ),
            rate=program.rate,
        )
        allocation = _resolve_allocation(program, arch, cost)
        scenario = IndustryScenario(
            reference_firms=program.reference_firms,
            gross_cost_per_firm=per_firm_gross_cost(cost),
            market_revenue=program.market_revenue,
            market_scaling=program.market_scaling,
        )
        resolved.append(
            ResolvedArchitecture(
                name=arch.name, cost=cost, allocation=allocation, scenario=scenario
            )
        )
    return ResolvedProgram(program=program, architectures=tuple(resolved))


def diagram_spec(program: Program, window: DiagramWindow | None = None) -> DiagramSpec:
    """Diagram spec from the program's scenario defaults plus a window.

    Without a configured or supplied window, ranges default to generous
    multiples of the budget and the costliest architecture.
    """
    window = window or program.diagram
    if window is None:
        resolved = resolve_program(program)
        max_cost = max(
            a.scenario.reference_firms * a.scenario.gross_cost_per_firm
            for a in resolved.architectures
        )
        window = DiagramWindow(
            purchases_range=(0.0, max(program.budget * 1.25, 100.0)),
            cost_range=(0.0, max(max_cost * 1.3, 100.0)),
        )
    return DiagramSpec(
        market_revenue=program.market_revenue,
        reference_firms=program.reference_firms,
        purchases_range=window.purchases_range,
        cost_range=window.cost_range,
        market_scaling=program.market_scaling,
        max_firms=program.max_firms,
        resolution=window.resolution,
    )


def with_rate(program: Program, rate: RateSpec) -> Program:
    """Program re-priced at a new rate; allocations re-resolve downstream."""
    return replace(program, rate=rate)
