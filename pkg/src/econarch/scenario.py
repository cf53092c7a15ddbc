"""What-if machinery over a base program: parameter overrides, ordered
sweeps, and bisection search for threshold parameter values.

Rate overrides re-annuitize every module from its lump-sum breakdown (the
module definitions carry capital, not annuities, so re-pricing is exact,
never a scaling of existing annuities). Allocations re-resolve after any
override, so an infra-first architecture's shared spending tracks the
re-priced shared modules and purchases take the remainder.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .econ_core import InfrastructureValuation, IndustryAccount, industry_account
from .finance import RateSpec
from .program import (
    InfeasibleError,
    Program,
    ResolvedArchitecture,
    ResolvedProgram,
    diagram_spec,
    resolve_program,
)
from .region import DiagramSpec, architecture_point, classify_architecture

SWEEP_PARAMETERS = ("market_revenue", "rate", "budget", "shared_spend")


@dataclass(frozen=True)
class ScenarioOverride:
    """Optional new values layered over a base program; unset fields keep
    the base value bit-for-bit."""

    market_revenue: float | None = None
    market_scaling: str | None = None
    annual_rate: float | None = None
    lifetime_years: int | None = None
    budget: float | None = None
    shared_spend: float | None = None
    direct_transfers: float | None = None
    valuation: InfrastructureValuation | None = None
    reference_firms: int | None = None

    def is_empty(self) -> bool:
        return all(
            getattr(self, name) is None
            for name in (
                "market_revenue",
                "market_scaling",
                "annual_rate",
                "lifetime_years",
                "budget",
                "shared_spend",
                "direct_transfers",
                "valuation",
                "reference_firms",
            )
        )


def apply_override(program: Program, override: ScenarioOverride) -> Program:
    """Derived program with the override applied; raises on an empty override.

    The result is a full Program, so resolving it re-prices modules and
    re-runs allocation rules; infeasible combinations surface as
    InfeasibleError from resolve_program.
    """
    if override.is_empty():
        raise ValueError("override must set at least one parameter")
    rate = program.rate
    if override.annual_rate is not None or override.lifetime_years is not None:
        rate = RateSpec(
            annual_rate=(
                override.annual_rate
                if override.annual_rate is not None
                else rate.annual_rate
            ),
            lifetime_years=(
                override.lifetime_years
                if override.lifetime_years is not None
                else rate.lifetime_years
            ),
        )
    changes: dict = {"rate": rate}
    if override.market_revenue is not None:
        changes["market_revenue"] = override.market_revenue
    if override.market_scaling is not None:
        changes["market_scaling"] = override.market_scaling
    if override.budget is not None:
        changes["budget"] = override.budget
    if override.shared_spend is not None:
        changes["shared_spend_pin"] = override.shared_spend
    if override.direct_transfers is not None:
        changes["transfers_pin"] = override.direct_transfers
    if override.valuation is not None:
        changes["valuation"] = override.valuation
    if override.reference_firms is not None:
        changes["reference_firms"] = override.reference_firms
    return replace(program, **changes)


@dataclass(frozen=True)
class ArchitectureOutcome:
    """One architecture's evaluation: resolved allocation, industry account
    at the reference size, diagram coordinates, and classification."""

    resolved: ResolvedArchitecture
    account: IndustryAccount
    sustainable_firms: int
    unbounded: bool
    point: tuple[float, float]

    @property
    def name(self) -> str:
        return self.resolved.name


@dataclass(frozen=True)
class ScenarioResult:
    """One evaluated scenario; `error` is set (and architectures empty) when
    the scenario was infeasible."""

    label: str
    parameter: str | None = None
    value: float | None = None
    error: str | None = None
    architectures: tuple[ArchitectureOutcome, ...] = ()
    diagram: DiagramSpec | None = None


def evaluate_architectures(resolved: ResolvedProgram) -> tuple[ArchitectureOutcome, ...]:
    outcomes = []
    program = resolved.program
    for arch in resolved.architectures:
        classification = classify_architecture(
            arch.allocation, arch.scenario, program.valuation, program.max_firms
        )
        outcomes.append(
            ArchitectureOutcome(
                resolved=arch,
                account=industry_account(
                    arch.allocation,
                    arch.scenario,
                    program.reference_firms,
                    program.valuation,
                ),
                sustainable_firms=classification.count,
                unbounded=classification.unbounded,
                point=architecture_point(arch.allocation, arch.scenario, program.valuation),
            )
        )
    return tuple(outcomes)


def evaluate_scenario(program: Program, label: str = "baseline") -> ScenarioResult:
    resolved = resolve_program(program)
    return ScenarioResult(
        label=label,
        architectures=evaluate_architectures(resolved),
        diagram=diagram_spec(program),
    )


def _single_override(parameter: str, value: float) -> ScenarioOverride:
    if parameter == "market_revenue":
        return ScenarioOverride(market_revenue=value)
    if parameter == "rate":
        return ScenarioOverride(annual_rate=value)
    if parameter == "budget":
        return ScenarioOverride(budget=value)
    if parameter == "shared_spend":
        return ScenarioOverride(shared_spend=value)
    raise ValueError(
        f"parameter must be one of {SWEEP_PARAMETERS}, got {parameter!r}"
    )


def run_sweep(
    program: Program, parameter: str, values: list[float] | tuple[float, ...]
) -> list[ScenarioResult]:
    """Evaluate the program at each parameter value, in input order.

    Infeasible points are reported in place via ScenarioResult.error; the
    sweep never aborts. Evaluations are independent, so results are
    deterministic regardless of how callers schedule them.
    """
    if parameter not in SWEEP_PARAMETERS:
        raise ValueError(
            f"parameter must be one of {SWEEP_PARAMETERS}, got {parameter!r}"
        )
    results = []
    for value in values:
        label = f"{parameter}={value:g}"
        try:
            derived = apply_override(program, _single_override(parameter, value))
            result = evaluate_scenario(derived, label=label)
            results.append(replace(result, parameter=parameter, value=value))
        except (InfeasibleError, ValueError) as exc:
            results.append(
                ScenarioResult(label=label, parameter=parameter, value=value, error=str(exc))
            )
    return results


def _classification_at(
    program: Program, architecture: str, parameter: str, value: float
) -> int:
    derived = apply_override(program, _single_override(parameter, value))
    resolved = resolve_program(derived)
    arch = resolved.architecture(architecture)
    return classify_architecture(
        arch.allocation, arch.scenario, derived.valuation, derived.max_firms
    ).count


def find_threshold(
    program: Program,
    architecture: str,
    parameter: str,
    target_firms: int,
    bracket: tuple[float, float],
    tolerance: float | None = None,
) -> float:
    """Parameter value at which the architecture first sustains target_firms,
    located by bisection.

    The bracket endpoints must straddle the target: exactly one end's
    classification reaches it. The returned value is the achieving side of
    the final bracket, so it always classifies >= target_firms and lies
    within `tolerance` of the true threshold (default $0.1M for monetary
    parameters, 1e-4 for rates).
    """
    if tolerance is None:
        tolerance = 1e-4 if parameter == "rate" else 0.1
    lo, hi = bracket
    if not lo < hi:
        raise ValueError(f"bracket must satisfy lo < hi, got {bracket}")
    achieved_lo = _classification_at(program, architecture, parameter, lo) >= target_firms
    achieved_hi = _classification_at(program, architecture, parameter, hi) >= target_firms
    if achieved_lo == achieved_hi:
        state = "reaches" if achieved_lo else "misses"
        raise ValueError(
            f"bracket does not straddle the target: classification {state} "
            f"{target_firms} firms at both ends of [{lo:g}, {hi:g}]"
        )
    while hi - lo > tolerance:
        mid = (lo + hi) / 2.0
        achieved_mid = (
            _classification_at(program, architecture, parameter, mid) >= target_firms
        )
        if achieved_mid == achieved_lo:
            lo = mid
        else:
            hi = mid
    return lo if achieved_lo else hi
