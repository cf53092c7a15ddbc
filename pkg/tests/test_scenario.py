"""Scenario-engine tests: overrides, sweeps, threshold search.

Threshold oracles are closed-form solves of the break-even condition
(purchases + market) / n = per-firm net cost, written out in the tests so
bisection is checked against an independent route.
"""

import dataclasses

import pytest

from econarch.econ_core import saturating
from econarch.program import InfeasibleError, resolve_program
from econarch.scenario import (
    ScenarioOverride,
    apply_override,
    evaluate_scenario,
    find_threshold,
    run_sweep,
)

X_FIRM = 927.2094621871
CORE_ANNUITY = 508.9247150642


def outcome(program, name):
    result = evaluate_scenario(program)
    return next(o for o in result.architectures if o.name == name)


class TestApplyOverride:
    def test_doubled_demand_makes_free_flyers_profitable(self, stations):
        derived = apply_override(stations, ScenarioOverride(market_revenue=1000))
        ff = outcome(derived, "free-flyer")
        assert ff.account.per_firm.profit == pytest.approx(72.79, abs=0.01)
        assert ff.sustainable_firms >= 2

    def test_doubled_rate_collapses_both_to_monopoly(self, stations):
        derived = apply_override(stations, ScenarioOverride(annual_rate=0.10))
        assert outcome(derived, "free-flyer").sustainable_firms == 1
        assert outcome(derived, "shared-core").sustainable_firms == 1

    def test_rate_override_reprices_from_capital(self, stations):
        """At 10% the shared core's annuity is re-derived from the element
        capital (2687.55 * 0.131474 + 250 = 603.34), not scaled from the 5%
        figure, and purchases take the smaller remainder."""
        derived = apply_override(stations, ScenarioOverride(annual_rate=0.10))
        shared = outcome(derived, "shared-core")
        alloc = shared.resolved.allocation
        assert alloc.shared_infrastructure == pytest.approx(603.34, abs=0.01)
        assert alloc.direct_purchases == pytest.approx(1000 - 603.34, abs=0.01)
        assert shared.resolved.scenario.gross_cost_per_firm == pytest.approx(
            1089.57, abs=0.01
        )

    def test_empty_override_is_an_error(self, stations):
        with pytest.raises(ValueError, match="at least one"):
            apply_override(stations, ScenarioOverride())

    def test_override_locality(self, stations):
        """Parameters not named in the override stay bit-identical."""
        derived = apply_override(stations, ScenarioOverride(market_revenue=750))
        assert derived.market_revenue == 750
        assert derived.rate == stations.rate
        assert derived.budget == stations.budget
        assert derived.modules is stations.modules
        assert derived.valuation == stations.valuation
        base_x = resolve_program(stations).architectures[0].scenario.gross_cost_per_firm
        new_x = resolve_program(derived).architectures[0].scenario.gross_cost_per_firm
        assert new_x == base_x

    def test_shared_spend_pin_reaches_free_flyer_numbers(self, stations):
        """Pinning shared spending to zero turns the shared-core architecture
        into the free-flyer allocation."""
        derived = apply_override(stations, ScenarioOverride(shared_spend=0.0))
        shared = outcome(derived, "shared-core")
        free = outcome(stations, "free-flyer")
        assert shared.resolved.allocation == free.resolved.allocation
        assert shared.account.per_firm.profit == pytest.approx(
            free.account.per_firm.profit
        )

    def test_transfers_pin_takes_from_purchases(self, stations):
        """Pinning transfers at 200 shrinks purchases by 200 and leaves the
        per-firm bottom line unchanged (a transfer dollar and a purchase
        dollar support a firm equally)."""
        derived = apply_override(stations, ScenarioOverride(direct_transfers=200.0))
        shared = outcome(derived, "shared-core")
        base = outcome(stations, "shared-core")
        alloc = shared.resolved.allocation
        assert alloc.direct_transfers == 200.0
        assert alloc.direct_purchases == pytest.approx(
            base.resolved.allocation.direct_purchases - 200.0
        )
        assert shared.account.per_firm.profit == pytest.approx(
            base.account.per_firm.profit
        )

    def test_budget_override_below_core_annuity_is_infeasible(self, stations):
        derived = apply_override(stations, ScenarioOverride(budget=400))
        with pytest.raises(InfeasibleError, match="budget"):
            resolve_program(derived)

    def test_valuation_override(self, stations):
        derived = apply_override(stations, ScenarioOverride(valuation=saturating(500.0)))
        shared = outcome(derived, "shared-core")
        assert shared.account.per_firm.infrastructure_benefit < CORE_ANNUITY


class TestRunSweep:
    def test_demand_sweep_reproduces_both_scenarios(self, stations):
        results = run_sweep(stations, "market_revenue", [500, 1000])
        assert [r.value for r in results] == [500, 1000]
        baseline, high = results
        assert {o.name: o.sustainable_firms for o in baseline.architectures} == {
            "free-flyer": 1,
            "shared-core": 2,
        }
        assert {o.name: o.sustainable_firms for o in high.architectures} == {
            "free-flyer": 2,
            "shared-core": 3,
        }

    def test_rate_sweep(self, stations):
        results = run_sweep(stations, "rate", [0.05, 0.10])
        assert {o.name: o.sustainable_firms for o in results[0].architectures} == {
            "free-flyer": 1,
            "shared-core": 2,
        }
        assert {o.name: o.sustainable_firms for o in results[1].architectures} == {
            "free-flyer": 1,
            "shared-core": 1,
        }

    def test_zero_demand(self, stations):
        """Without any market the budget alone carries at most a monopoly."""
        (result,) = run_sweep(stations, "market_revenue", [0])
        assert all(o.sustainable_firms <= 1 for o in result.architectures)

    def test_infeasible_point_reported_in_place(self, stations):
        results = run_sweep(stations, "budget", [2000, 100, 1500])
        assert [r.error is None for r in results] == [True, False, True]
        assert "budget" in results[1].error
        assert results[1].architectures == ()

    def test_unknown_parameter(self, stations):
        with pytest.raises(ValueError, match="parameter"):
            run_sweep(stations, "ops_costs", [1.0])

    def test_determinism(self, stations):
        first = run_sweep(stations, "market_revenue", [250, 750])
        second = run_sweep(stations, "market_revenue", [250, 750])
        for a, b in zip(first, second):
            assert a.label == b.label
            for oa, ob in zip(a.architectures, b.architectures):
                assert oa.account == ob.account
                assert oa.sustainable_firms == ob.sustainable_firms


class TestFindThreshold:
    def test_free_flyer_demand_for_duopoly(self, stations):
        """Closed form: (1000 + rm) / 2 = 927.2095 gives rm = 854.419; the
        search returns the achieving side within $0.1M above it."""
        value = find_threshold(stations, "free-flyer", "market_revenue", 2, (0, 2000))
        oracle = 2 * X_FIRM - 1000
        assert oracle <= value <= oracle + 0.1

    def test_shared_core_demand_for_triopoly(self, stations):
        """Closed form: (491.075 + rm) / 3 = 418.285 gives rm = 763.779."""
        value = find_threshold(stations, "shared-core", "market_revenue", 3, (0, 2000))
        oracle = 3 * (X_FIRM - CORE_ANNUITY) - (1000 - CORE_ANNUITY)
        assert oracle <= value <= oracle + 0.1

    def test_threshold_consistency(self, stations):
        """Classification flips across the returned value within tolerance."""
        from econarch.region import classify_architecture

        value = find_threshold(stations, "free-flyer", "market_revenue", 2, (0, 2000))

        def classification(rm):
            derived = apply_override(stations, ScenarioOverride(market_revenue=rm))
            arch = resolve_program(derived).architecture("free-flyer")
            return classify_architecture(
                arch.allocation, arch.scenario, derived.valuation, derived.max_firms
            ).count

        assert classification(value - 0.2) < 2 <= classification(value + 0.2)

    def test_non_straddling_bracket_is_an_error(self, stations):
        """Duopoly is already sustained everywhere in [400, 500]."""
        with pytest.raises(ValueError, match="straddle"):
            find_threshold(stations, "shared-core", "market_revenue", 2, (400, 500))

    def test_rate_threshold_searches_downward(self, stations):
        """Rising rates destroy viability, so the achieving side is the low
        end; the result is the largest rate that still sustains two firms."""
        value = find_threshold(stations, "shared-core", "rate", 2, (0.05, 0.10))
        assert 0.05 < value < 0.10
        from econarch.region import classify_architecture

        derived = apply_override(stations, ScenarioOverride(annual_rate=value))
        arch = resolve_program(derived).architecture("shared-core")
        assert (
            classify_architecture(
                arch.allocation, arch.scenario, derived.valuation, derived.max_firms
            ).count
            >= 2
        )

    def test_invalid_bracket(self, stations):
        with pytest.raises(ValueError, match="bracket"):
            find_threshold(stations, "free-flyer", "market_revenue", 2, (10, 10))


class TestScenarioResult:
    def test_classifications_match_enumeration(self, stations):
        """The result's classification agrees with brute force over the
        reported ledgers: profit at the classified count is non-negative and
        profit one firm beyond is negative (when below the cap)."""
        from econarch.econ_core import firm_ledger

        for rm in (0, 250, 500, 1000, 2000):
            derived = apply_override(stations, ScenarioOverride(market_revenue=float(rm)))
            result = evaluate_scenario(derived)
            for o in result.architectures:
                n = o.sustainable_firms
                arch = o.resolved
                if n > 0:
                    assert (
                        firm_ledger(arch.allocation, arch.scenario, n, derived.valuation).profit
                        >= 0
                    )
                if n < derived.max_firms:
                    assert (
                        firm_ledger(
                            arch.allocation, arch.scenario, n + 1, derived.valuation
                        ).profit
                        < 0
                    )
