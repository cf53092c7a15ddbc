"""Budget feasibility, shared-infrastructure valuation, and profit accounting
for a symmetric industry supported by a public program.

The program splits an annual budget across direct purchases (revenue on
firms' income statements), direct transfers (unconditional support that
reduces net cost), and shared infrastructure. Shared infrastructure is
non-rival: every firm receives its full valued benefit, which is why a
marginal dollar spent there can support more competitors than a marginal
purchase or transfer dollar. Firms are symmetric and split purchases,
transfers, and (in the industry-pool mode) market revenue equally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .finance import MoneyPerYear

VALUATION_FORMS = ("at_cost", "capped_linear", "saturating")
MARKET_SCALING_MODES = ("industry_fixed", "per_firm_fixed")

# Absolute/relative guard for budget sums reconstructed as B - G_S - G_D;
# float round-off must not flip an exactly exhausted budget to infeasible.
_SLACK_TOL = 1e-9


@dataclass(frozen=True)
class BudgetAllocation:
    """A program's split of its annual budget, all components industry-level."""

    budget: MoneyPerYear
    direct_purchases: MoneyPerYear = 0.0
    direct_transfers: MoneyPerYear = 0.0
    shared_infrastructure: MoneyPerYear = 0.0

    def __post_init__(self) -> None:
        for field in (
            "budget",
            "direct_purchases",
            "direct_transfers",
            "shared_infrastructure",
        ):
            value = getattr(self, field)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{field} must be finite and >= 0, got {value}")

    @property
    def committed(self) -> MoneyPerYear:
        return self.direct_purchases + self.direct_transfers + self.shared_infrastructure


class BudgetCheck(NamedTuple):
    feasible: bool
    slack: MoneyPerYear


def check_budget(alloc: BudgetAllocation) -> BudgetCheck:
    """Verdict on whether the allocation fits the budget; never raises.

    slack = budget - (purchases + transfers + shared infrastructure).
    Infeasibility is a verdict (slack < 0), not an error.
    """
    slack = alloc.budget - alloc.committed
    feasible = slack >= -_SLACK_TOL * max(1.0, abs(alloc.budget))
    return BudgetCheck(feasible, slack)


@dataclass(frozen=True)
class InfrastructureValuation:
    """Maps shared-infrastructure spending to the annual benefit each firm receives.

    Forms:
      at_cost        value(g) = g; firms value shared capability at what it costs.
      capped_linear  value(g) = min(g, cap); linear up to the cost of the
                     shareable essential elements, worthless beyond.
      saturating     value(g) = cap * (1 - exp(-g / cap)); smooth diminishing
                     returns approaching the same ceiling.
    """

    form: str = "at_cost"
    cap: float | None = None

    def __post_init__(self) -> None:
        if self.form not in VALUATION_FORMS:
            raise ValueError(
                f"valuation form must be one of {VALUATION_FORMS}, got {self.form!r}"
            )
        if self.form == "at_cost":
            if self.cap is not None:
                raise ValueError("at_cost valuation takes no cap")
        elif self.cap is None or not math.isfinite(self.cap) or self.cap <= 0:
            raise ValueError(f"{self.form} valuation requires a positive cap")

    def value(self, spending: MoneyPerYear) -> MoneyPerYear:
        """Annual benefit per firm at the given shared spending level."""
        if not math.isfinite(spending) or spending < 0:
            raise ValueError(f"spending must be finite and >= 0, got {spending}")
        if self.form == "at_cost":
            return spending
        if self.form == "capped_linear":
            return min(spending, self.cap)
        return self.cap * -math.expm1(-spending / self.cap)

    def derivative(self, spending: MoneyPerYear) -> float:
        """Marginal benefit per marginal shared dollar."""
        if not math.isfinite(spending) or spending < 0:
            raise ValueError(f"spending must be finite and >= 0, got {spending}")
        if self.form == "at_cost":
            return 1.0
        if self.form == "capped_linear":
            return 1.0 if spending < self.cap else 0.0
        return math.exp(-spending / self.cap)


def at_cost() -> InfrastructureValuation:
    return InfrastructureValuation("at_cost")


def capped_linear(cap: float) -> InfrastructureValuation:
    return InfrastructureValuation("capped_linear", cap)


def saturating(cap: float) -> InfrastructureValuation:
    return InfrastructureValuation("saturating", cap)


@dataclass(frozen=True)
class IndustryScenario:
    """Industry cost structure and market demand around a reference size.

    market_revenue is the industry-wide pool when market_scaling is
    "industry_fixed" (each of n firms takes 1/n of it) or the fixed per-firm
    amount when "per_firm_fixed". Only equal shares are supported.
    """

    reference_firms: int
    gross_cost_per_firm: MoneyPerYear
    market_revenue: MoneyPerYear
    market_scaling: str = "industry_fixed"

    def __post_init__(self) -> None:
        if not isinstance(self.reference_firms, int) or self.reference_firms < 1:
            raise ValueError(
                f"reference_firms must be an integer >= 1, got {self.reference_firms!r}"
            )
        if not math.isfinite(self.gross_cost_per_firm) or self.gross_cost_per_firm < 0:
            raise ValueError(
                f"gross_cost_per_firm must be finite and >= 0, "
                f"got {self.gross_cost_per_firm}"
            )
        if not math.isfinite(self.market_revenue) or self.market_revenue < 0:
            raise ValueError(
                f"market_revenue must be finite and >= 0, got {self.market_revenue}"
            )
        if self.market_scaling not in MARKET_SCALING_MODES:
            raise ValueError(
                f"market_scaling must be one of {MARKET_SCALING_MODES}, "
                f"got {self.market_scaling!r}"
            )

    def market_revenue_per_firm(self, firms: int) -> MoneyPerYear:
        if firms < 1:
            raise ValueError(f"firms must be >= 1, got {firms}")
        if self.market_scaling == "industry_fixed":
            return self.market_revenue / firms
        return self.market_revenue

    def market_revenue_industry(self, firms: int) -> MoneyPerYear:
        return self.market_revenue_per_firm(firms) * firms


@dataclass(frozen=True)
class FirmLedger:
    """Annual income statement for one symmetric firm.

    net_cost = gross_cost - infrastructure_benefit - transfer
    profit   = government_revenue + market_revenue - net_cost
    """

    government_revenue: MoneyPerYear
    market_revenue: MoneyPerYear
    transfer: MoneyPerYear
    infrastructure_benefit: MoneyPerYear
    gross_cost: MoneyPerYear
    net_cost: MoneyPerYear
    profit: MoneyPerYear

    @property
    def revenue(self) -> MoneyPerYear:
        return self.government_revenue + self.market_revenue


@dataclass(frozen=True)
class IndustryAccount:
    """Industry totals for `firms` identical competitors.

    total_revenue = firms * per-firm revenue (purchases + market only);
    total_cost    = firms * per-firm net cost;
    transfers and infrastructure benefits appear as cost reductions.
    """

    firms: int
    per_firm: FirmLedger
    total_revenue: MoneyPerYear
    total_cost: MoneyPerYear
    total_profit: MoneyPerYear


def firm_ledger(
    alloc: BudgetAllocation,
    scenario: IndustryScenario,
    firms: int,
    valuation: InfrastructureValuation,
) -> FirmLedger:
    """Equal-share ledger for one of `firms` symmetric competitors.

    Purchases and transfers split 1/firms; the shared-infrastructure benefit
    is non-rival, so each firm receives the full valuation.
    """
    if not isinstance(firms, int) or firms < 1:
        raise ValueError(f"firms must be an integer >= 1, got {firms!r}")
    government_revenue = alloc.direct_purchases / firms
    transfer = alloc.direct_transfers / firms
    market_revenue = scenario.market_revenue_per_firm(firms)
    benefit = valuation.value(alloc.shared_infrastructure)
    gross = scenario.gross_cost_per_firm
    net = gross - benefit - transfer
    return FirmLedger(
        government_revenue=government_revenue,
        market_revenue=market_revenue,
        transfer=transfer,
        infrastructure_benefit=benefit,
        gross_cost=gross,
        net_cost=net,
        profit=government_revenue + market_revenue - net,
    )


def industry_account(
    alloc: BudgetAllocation,
    scenario: IndustryScenario,
    firms: int,
    valuation: InfrastructureValuation,
) -> IndustryAccount:
    """Aggregate `firms` identical ledgers into industry totals."""
    ledger = firm_ledger(alloc, scenario, firms, valuation)
    revenue = firms * ledger.revenue
    cost = firms * ledger.net_cost
    return IndustryAccount(
        firms=firms,
        per_firm=ledger,
        total_revenue=revenue,
        total_cost=cost,
        total_profit=revenue - cost,
    )


def dominance_margin(
    shared_spend: MoneyPerYear, firms: int, valuation: InfrastructureValuation
) -> float:
    """Marginal-benefit derivative minus 1/firms.

    Positive means a marginal shared-infrastructure dollar raises every
    firm's profit by more than a marginal purchase or transfer dollar would.
    """
    if not isinstance(firms, int) or firms < 1:
        raise ValueError(f"firms must be an integer >= 1, got {firms!r}")
    return valuation.derivative(shared_spend) - 1.0 / firms


def min_sustainable_support(
    scenario: IndustryScenario,
    firms: int,
    valuation: InfrastructureValuation,
    shared_spend: MoneyPerYear,
) -> MoneyPerYear:
    """Smallest industry-level purchases + transfers keeping all firms at
    non-negative profit, given the shared-infrastructure spending level."""
    if not isinstance(firms, int) or firms < 1:
        raise ValueError(f"firms must be an integer >= 1, got {firms!r}")
    shortfall = firms * (
        scenario.gross_cost_per_firm - valuation.value(shared_spend)
    ) - scenario.market_revenue_industry(firms)
    return max(0.0, shortfall)
