"""Unit tests for competition-region classification and geometry.

The brute-force oracle here recomputes per-firm profit from first principles
(it does not call the library ledger), so classify_architecture is checked
against an independent route.
"""

import math
import random

import pytest

from econarch.econ_core import (
    BudgetAllocation,
    IndustryScenario,
    at_cost,
    capped_linear,
    saturating,
)
from econarch.region import (
    DiagramSpec,
    architecture_point,
    boundary_cost,
    boundary_line,
    build_region,
    classify_architecture,
    classify_point,
    classify_point_detail,
)

X_FIRM = 927.2094621871
CORE_ANNUITY = 508.9247150642


def spec_for(market_revenue, reference_firms, scaling="industry_fixed", max_firms=10):
    return DiagramSpec(
        market_revenue=market_revenue,
        reference_firms=reference_firms,
        purchases_range=(0.0, 1500.0),
        cost_range=(0.0, 2500.0),
        market_scaling=scaling,
        max_firms=max_firms,
    )


class TestDiagramSpec:
    def test_rejects_degenerate_range(self):
        with pytest.raises(ValueError, match="purchases_range"):
            DiagramSpec(500.0, 2, purchases_range=(100.0, 100.0), cost_range=(0.0, 1.0))

    def test_rejects_coarse_resolution(self):
        with pytest.raises(ValueError, match="resolution"):
            DiagramSpec(
                500.0, 2, purchases_range=(0.0, 1.0), cost_range=(0.0, 1.0),
                resolution=(1, 5),
            )


class TestClassifyPoint:
    def test_transfers_only_program_sits_on_duopoly_boundary(self):
        """(0, 1000) with a 1000 market pool and two reference firms: the
        duopoly share 1000/2 exactly covers the per-firm cost 500."""
        assert classify_point(0.0, 1000.0, spec_for(1000, 2)) == 2

    def test_split_program_reaches_triopoly(self):
        assert classify_point(500.0, 1000.0, spec_for(1000, 2)) == 3

    def test_station_free_flyer_is_monopoly_only(self):
        assert classify_point(1000.0, 1854.42, spec_for(500, 2)) == 1

    def test_station_shared_core_sustains_two(self):
        assert classify_point(491.08, 836.57, spec_for(500, 2)) == 2

    def test_no_revenue_positive_cost(self):
        assert classify_point(0.0, 700.0, spec_for(0, 2)) == 0

    def test_zero_cost_is_unbounded(self):
        detail = classify_point_detail(100.0, 0.0, spec_for(0, 2))
        assert detail.count == 10
        assert detail.unbounded

    def test_boundary_inclusion(self):
        """Points exactly on cost = (n0/n)(purchases + market) classify >= n."""
        spec = spec_for(500, 2)
        for n in range(1, 11):
            purchases = 321.0
            cost = boundary_cost(boundary_line(n, spec), purchases)
            assert classify_point(purchases, cost, spec) >= n


class TestClassifyPointInvariants:
    def test_monotone_and_scale_invariant(self):
        rng = random.Random(31)
        for _ in range(1000):
            spec = DiagramSpec(
                market_revenue=rng.uniform(0, 1500),
                reference_firms=rng.randint(1, 6),
                purchases_range=(0.0, 2000.0),
                cost_range=(0.0, 3000.0),
                market_scaling=rng.choice(("industry_fixed", "per_firm_fixed")),
                max_firms=rng.randint(1, 12),
            )
            purchases = rng.uniform(0, 2000)
            cost = rng.uniform(1, 3000)
            base = classify_point(purchases, cost, spec)
            # non-decreasing in purchases, non-increasing in cost
            assert classify_point(purchases + rng.uniform(0, 500), cost, spec) >= base
            assert classify_point(purchases, cost + rng.uniform(0, 500), spec) <= base
            # scaling purchases, cost, and market revenue together changes nothing
            lam = rng.uniform(0.1, 25)
            scaled_spec = DiagramSpec(
                market_revenue=lam * spec.market_revenue,
                reference_firms=spec.reference_firms,
                purchases_range=spec.purchases_range,
                cost_range=spec.cost_range,
                market_scaling=spec.market_scaling,
                max_firms=spec.max_firms,
            )
            assert classify_point(lam * purchases, lam * cost, scaled_spec) == base


class TestBoundaryLines:
    def test_lines_pass_through_market_intercept(self):
        """Industry-pool boundaries all cross (-market_revenue, 0)."""
        spec = spec_for(500, 2)
        for n in range(1, 11):
            line = boundary_line(n, spec)
            assert boundary_cost(line, -500.0) == pytest.approx(0.0, abs=1e-9)

    def test_slopes_ordered_by_firm_count(self):
        spec = spec_for(500, 2)
        slopes = [boundary_line(n, spec).slope for n in range(1, 11)]
        assert slopes == sorted(slopes, reverse=True)
        assert slopes[0] == 2.0  # n0 / 1

    def test_per_firm_fixed_intercept(self):
        """Fixed per-firm demand shifts every boundary up by n0 * revenue."""
        spec = spec_for(250, 2, scaling="per_firm_fixed")
        line = boundary_line(4, spec)
        assert boundary_cost(line, 0.0) == 500.0
        assert line.slope == 0.5


class TestArchitecturePoint:
    def test_station_coordinates(self):
        alloc = BudgetAllocation(
            1000, direct_purchases=1000 - CORE_ANNUITY, shared_infrastructure=CORE_ANNUITY
        )
        scenario = IndustryScenario(2, X_FIRM, 500.0)
        purchases, cost = architecture_point(alloc, scenario, at_cost())
        assert purchases == pytest.approx(491.08, abs=0.01)
        assert cost == pytest.approx(836.57, abs=0.01)

    def test_transfers_reduce_cost_coordinate(self):
        alloc = BudgetAllocation(1000, direct_transfers=1000)
        scenario = IndustryScenario(2, 1000.0, 1000.0)
        assert architecture_point(alloc, scenario, at_cost()) == (0.0, 1000.0)


def oracle_max_firms(alloc, scenario, valuation, max_firms):
    """Independent enumeration: largest n with non-negative per-firm profit,
    with the profit identity written out from scratch."""
    if valuation.form == "at_cost":
        benefit = alloc.shared_infrastructure
    elif valuation.form == "capped_linear":
        benefit = min(alloc.shared_infrastructure, valuation.cap)
    else:
        benefit = valuation.cap * (1 - math.exp(-alloc.shared_infrastructure / valuation.cap))
    best = 0
    for n in range(1, max_firms + 1):
        if scenario.market_scaling == "industry_fixed":
            market = scenario.market_revenue / n
        else:
            market = scenario.market_revenue
        profit = (
            alloc.direct_purchases / n
            + alloc.direct_transfers / n
            + market
            + benefit
            - scenario.gross_cost_per_firm
        )
        if profit >= 0:
            best = n
    return best


class TestClassifyArchitecture:
    def test_station_shared_core(self):
        alloc = BudgetAllocation(
            1000, direct_purchases=1000 - CORE_ANNUITY, shared_infrastructure=CORE_ANNUITY
        )
        scenario = IndustryScenario(2, X_FIRM, 500.0)
        assert classify_architecture(alloc, scenario, at_cost()).count == 2

    def test_free_flyer_with_doubled_demand(self):
        alloc = BudgetAllocation(1000, direct_purchases=1000)
        scenario = IndustryScenario(2, X_FIRM, 1000.0)
        result = classify_architecture(alloc, scenario, at_cost())
        assert result.count == 2
        assert not result.unbounded

    def test_all_zero_economy_is_unbounded(self):
        alloc = BudgetAllocation(0)
        scenario = IndustryScenario(1, 0.0, 0.0)
        result = classify_architecture(alloc, scenario, at_cost())
        assert result.count == 10
        assert result.unbounded

    def test_matches_enumeration_oracle(self):
        """Exact agreement with the independent enumeration over randomized
        allocations, costs, demand modes, and valuation forms."""
        rng = random.Random(32)
        for _ in range(1000):
            budget = rng.uniform(0, 2000)
            split = sorted(rng.uniform(0, 1) for _ in range(2))
            alloc = BudgetAllocation(
                budget,
                direct_purchases=budget * split[0],
                direct_transfers=budget * (split[1] - split[0]),
                shared_infrastructure=budget * (1 - split[1]),
            )
            scenario = IndustryScenario(
                reference_firms=rng.randint(1, 6),
                gross_cost_per_firm=rng.uniform(0, 1500),
                market_revenue=rng.uniform(0, 1500),
                market_scaling=rng.choice(("industry_fixed", "per_firm_fixed")),
            )
            valuation = rng.choice(
                (at_cost(), capped_linear(rng.uniform(1, 800)), saturating(rng.uniform(1, 800)))
            )
            max_firms = rng.randint(1, 12)
            assert (
                classify_architecture(alloc, scenario, valuation, max_firms).count
                == oracle_max_firms(alloc, scenario, valuation, max_firms)
            )

    def test_agrees_with_point_classification_without_transfers(self):
        """With no transfers the diagram-coordinate route gives the same
        answer as ledger enumeration; transfers are the one divergence
        (the diagram folds them in at the reference size, the ledger splits
        them across the actual firm count)."""
        rng = random.Random(33)
        for _ in range(500):
            budget = rng.uniform(0, 2000)
            shared = rng.uniform(0, budget)
            alloc = BudgetAllocation(
                budget, direct_purchases=budget - shared, shared_infrastructure=shared
            )
            scenario = IndustryScenario(
                reference_firms=rng.randint(1, 6),
                gross_cost_per_firm=rng.uniform(0, 1500),
                market_revenue=rng.uniform(0, 1500),
            )
            purchases, cost = architecture_point(alloc, scenario, at_cost())
            spec = DiagramSpec(
                market_revenue=scenario.market_revenue,
                reference_firms=scenario.reference_firms,
                purchases_range=(0.0, 2001.0),
                cost_range=(0.0, 3000.0),
            )
            assert classify_point(purchases, cost, spec) == classify_architecture(
                alloc, scenario, at_cost(), spec.max_firms
            ).count


class TestBuildRegion:
    def test_example_program_points(self):
        region = build_region(
            spec_for(1000, 2),
            points=[("all-transfers", 0.0, 1000.0), ("split", 500.0, 1000.0)],
        )
        by_label = {p.label: p for p in region.points}
        assert by_label["all-transfers"].sustainable_firms == 2
        assert by_label["split"].sustainable_firms == 3

    def test_station_points(self):
        region = build_region(
            spec_for(500, 2),
            points=[("free-flyer", 1000.0, 1854.42), ("shared-core", 491.08, 836.57)],
        )
        by_label = {p.label: p for p in region.points}
        assert by_label["free-flyer"].sustainable_firms == 1
        assert by_label["shared-core"].sustainable_firms == 2

    def test_trivial_grid_is_break_even_indicator(self):
        """With no market revenue, one reference firm, and max_firms 1, the
        grid is the indicator purchases >= cost."""
        spec = DiagramSpec(
            market_revenue=0.0,
            reference_firms=1,
            purchases_range=(0.0, 1.0),
            cost_range=(0.0, 1.0),
            max_firms=1,
            resolution=(2, 2),
        )
        region = build_region(spec)
        for j, cost in enumerate(region.cost_values):
            for i, purchases in enumerate(region.purchase_values):
                assert region.grid[j][i] == (1 if purchases >= cost else 0)

    def test_grid_monotone_along_axes(self):
        region = build_region(spec_for(500, 2))
        for row in region.grid:
            assert list(row) == sorted(row)  # non-decreasing in purchases
        for i in range(len(region.purchase_values)):
            column = [row[i] for row in region.grid]
            # cost ascends with j, so classification must not increase
            assert column == sorted(column, reverse=True)

    def test_rejects_degenerate_spec(self):
        with pytest.raises(ValueError):
            build_region(
                DiagramSpec(500.0, 2, purchases_range=(1.0, 0.0), cost_range=(0.0, 1.0))
            )
