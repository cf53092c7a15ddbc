"""econarch: evaluate economic architectures of market-development programs.

Given a program budget split across direct purchases, direct transfers, and
shared infrastructure, plus industry cost and market-demand parameters, the
toolkit computes per-firm and industry profitability, the maximum sustainable
number of competitors, and sustainable-competition region diagrams, with
scenario overrides, sweeps, and threshold search on top.
"""

from .config import ConfigError, bundled_config_path, load_bundled, load_config, parse_config
from .cost_model import (
    ArchitectureCostSpec,
    CostElement,
    SystemModuleCost,
    per_firm_gross_cost,
    rollup_module,
    scale_ops_by_share,
    shared_infrastructure_annuity,
)
from .econ_core import (
    BudgetAllocation,
    BudgetCheck,
    FirmLedger,
    IndustryAccount,
    IndustryScenario,
    InfrastructureValuation,
    at_cost,
    capped_linear,
    check_budget,
    dominance_margin,
    firm_ledger,
    industry_account,
    min_sustainable_support,
    saturating,
)
from .finance import MoneyLump, MoneyPerYear, RateSpec, annuitize, annuity_factor, present_value_of_annuity
from .program import (
    Allocation,
    ArchitectureDef,
    DiagramWindow,
    InfeasibleError,
    ModuleDef,
    Program,
    ResolvedProgram,
    diagram_spec,
    resolve_program,
)
from .region import (
    BoundaryLine,
    Classification,
    CompetitionRegion,
    DiagramSpec,
    RegionPoint,
    architecture_point,
    boundary_line,
    build_region,
    classify_architecture,
    classify_point,
    classify_point_detail,
)
from .render import region_to_csv, region_to_svg
from .scenario import (
    ScenarioOverride,
    ScenarioResult,
    apply_override,
    evaluate_scenario,
    find_threshold,
    run_sweep,
)

__version__ = "0.1.0"
