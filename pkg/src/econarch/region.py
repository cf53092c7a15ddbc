"""Sustainable-competition diagrams.

Points live in the (direct purchases, industry cost) plane: x is industry-
level program purchases, y is industry net cost at the diagram's reference
firm count, so a point's per-firm net cost is cost / reference_firms. Each
point is classified by the largest number of firms whose equal revenue share
still covers that per-firm cost. Boundary lines, a classified grid, and
labeled architecture points together make up the region geometry handed to
the CSV/SVG emitters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .econ_core import (
    BudgetAllocation,
    IndustryScenario,
    InfrastructureValuation,
    MARKET_SCALING_MODES,
    firm_ledger,
)
from .finance import MoneyPerYear

DEFAULT_MAX_FIRMS = 10


@dataclass(frozen=True)
class DiagramSpec:
    """Axis window, grid resolution, and market context for one diagram."""

    market_revenue: MoneyPerYear
    reference_firms: int
    purchases_range: tuple[float, float]
    cost_range: tuple[float, float]
    market_scaling: str = "industry_fixed"
    max_firms: int = DEFAULT_MAX_FIRMS
    resolution: tuple[int, int] = (61, 61)

    def __post_init__(self) -> None:
        if not math.isfinite(self.market_revenue) or self.market_revenue < 0:
            raise ValueError(
                f"market_revenue must be finite and >= 0, got {self.market_revenue}"
            )
        if not isinstance(self.reference_firms, int) or self.reference_firms < 1:
            raise ValueError(
                f"reference_firms must be an integer >= 1, got {self.reference_firms!r}"
            )
        if not isinstance(self.max_firms, int) or self.max_firms < 1:
            raise ValueError(f"max_firms must be an integer >= 1, got {self.max_firms!r}")
        if self.market_scaling not in MARKET_SCALING_MODES:
            raise ValueError(
                f"market_scaling must be one of {MARKET_SCALING_MODES}, "
                f"got {self.market_scaling!r}"
            )
        for name, lo_hi in (
            ("purchases_range", self.purchases_range),
            ("cost_range", self.cost_range),
        ):
            lo, hi = lo_hi
            if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
                raise ValueError(f"{name} must be a non-degenerate (lo, hi), got {lo_hi}")
        nx, ny = self.resolution
        if nx < 2 or ny < 2:
            raise ValueError(f"resolution must be >= 2 per axis, got {self.resolution}")

    def market_revenue_effective(self, firms: int) -> MoneyPerYear:
        """Industry-level market revenue available with `firms` competitors."""
        if self.market_scaling == "industry_fixed":
            return self.market_revenue
        return self.market_revenue * firms


class Classification(NamedTuple):
    count: int
    unbounded: bool = False


class BoundaryLine(NamedTuple):
    """cost = intercept + slope * purchases separates >= firms from < firms."""

    firms: int
    slope: float
    intercept: float


def classify_point(purchases: float, cost: float, spec: DiagramSpec) -> int:
    """Largest firm count in [1, max_firms] sustainable at this point; 0 if
    even a monopoly loses money; max_firms when cost <= 0 (break-even at any
    size, see classify_point_detail for the explicit unbounded flag).

    A count n is sustainable when (purchases + market revenue at n) / n
    covers the per-firm cost; the comparison is >=, so break-even points on
    a boundary count as sustaining that boundary's firm count.
    """
    if cost <= 0:
        return spec.max_firms
    per_firm_cost = cost / spec.reference_firms
    # Per-firm revenue is non-increasing in n in both scaling modes, so the
    # sustainable set is 1..n*; scan upward until support fails.
    best = 0
    for n in range(1, spec.max_firms + 1):
        revenue_share = (purchases + spec.market_revenue_effective(n)) / n
        if revenue_share >= per_firm_cost:
            best = n
        else:
            break
    return best


def classify_point_detail(purchases: float, cost: float, spec: DiagramSpec) -> Classification:
    return Classification(classify_point(purchases, cost, spec), cost <= 0)


def boundary_line(firms: int, spec: DiagramSpec) -> BoundaryLine:
    """Break-even line for exactly `firms` competitors.

    industry_fixed:  cost = (n0/n) * (purchases + market_revenue)
    per_firm_fixed:  cost = (n0/n) * purchases + n0 * market_revenue
    """
    if firms < 1:
        raise ValueError(f"firms must be >= 1, got {firms}")
    slope = spec.reference_firms / firms
    if spec.market_scaling == "industry_fixed":
        intercept = slope * spec.market_revenue
    else:
        intercept = spec.reference_firms * spec.market_revenue
    return BoundaryLine(firms, slope, intercept)


def boundary_cost(line: BoundaryLine, purchases: float) -> float:
    return line.intercept + line.slope * purchases


def architecture_point(
    alloc: BudgetAllocation,
    scenario: IndustryScenario,
    valuation: InfrastructureValuation,
) -> tuple[float, float]:
    """Diagram coordinates of a program architecture.

    x: industry-level direct purchases. y: industry net cost at the
    reference size (gross cost less the infrastructure benefit, less
    transfers).
    """
    n0 = scenario.reference_firms
    benefit = valuation.value(alloc.shared_infrastructure)
    cost = n0 * (scenario.gross_cost_per_firm - benefit) - alloc.direct_transfers
    return alloc.direct_purchases, cost


def classify_architecture(
    alloc: BudgetAllocation,
    scenario: IndustryScenario,
    valuation: InfrastructureValuation,
    max_firms: int = DEFAULT_MAX_FIRMS,
) -> Classification:
    """Maximum firm count at which every symmetric firm earns non-negative
    profit, found by evaluating the ledger at each candidate size.

    Per-firm profit is non-increasing in the firm count (purchases,
    transfers, and any industry market pool are split more ways), so the
    scan stops at the first loss-making size. The unbounded flag reports
    cost <= 0 at this point's diagram coordinates: transfers plus the
    infrastructure benefit cover gross cost, and the count is capped by
    max_firms rather than by economics.
    """
    if not isinstance(max_firms, int) or max_firms < 1:
        raise ValueError(f"max_firms must be an integer >= 1, got {max_firms!r}")
    _, cost = architecture_point(alloc, scenario, valuation)
    best = 0
    for n in range(1, max_firms + 1):
        if firm_ledger(alloc, scenario, n, valuation).profit >= 0:
            best = n
        else:
            break
    return Classification(best, cost <= 0)


@dataclass(frozen=True)
class RegionPoint:
    label: str
    purchases: float
    cost: float
    sustainable_firms: int
    unbounded: bool = False


@dataclass(frozen=True)
class CompetitionRegion:
    """Region geometry ready for emission: boundary lines for each firm
    count, a classified grid over the diagram window, and labeled points."""

    spec: DiagramSpec
    boundaries: tuple[BoundaryLine, ...]
    purchase_values: tuple[float, ...]
    cost_values: tuple[float, ...]
    grid: tuple[tuple[int, ...], ...]  # grid[j][i] at (purchase_values[i], cost_values[j])
    points: tuple[RegionPoint, ...]


def _linspace(lo: float, hi: float, n: int) -> tuple[float, ...]:
    step = (hi - lo) / (n - 1)
    values = [lo + i * step for i in range(n)]
    values[-1] = hi
    return tuple(values)


def build_region(
    spec: DiagramSpec,
    points: Iterable[tuple[str, float, float]] = (),
) -> CompetitionRegion:
    """Classify the diagram window and carry labeled (purchases, cost) points
    through with their own classifications.

    Grid evaluation order is fixed (row-major over cost then purchases) and
    every cell is independent, so results never depend on scheduling.
    """
    nx, ny = spec.resolution
    purchase_values = _linspace(*spec.purchases_range, nx)
    cost_values = _linspace(*spec.cost_range, ny)
    grid = tuple(
        tuple(classify_point(rg, c, spec) for rg in purchase_values)
        for c in cost_values
    )
    region_points = []
    for label, purchases, cost in points:
        classified = classify_point_detail(purchases, cost, spec)
        region_points.append(
            RegionPoint(label, purchases, cost, classified.count, classified.unbounded)
        )
    boundaries = tuple(boundary_line(n, spec) for n in range(1, spec.max_firms + 1))
    return CompetitionRegion(
        spec=spec,
        boundaries=boundaries,
        purchase_values=purchase_values,
        cost_values=cost_values,
        grid=grid,
        points=tuple(region_points),
    )
