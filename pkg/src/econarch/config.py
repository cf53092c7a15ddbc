"""YAML program configs: strict parsing with path/line diagnostics.

The schema is documented in the README and the two bundled example files.
Parsing is strict: unknown keys are fatal so a typo cannot silently change
the economics. Every diagnostic names the config path (dotted, with list
indices), the source line when known, and the violated rule.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

import yaml

from .cost_model import CostElement, scale_ops_by_share
from .econ_core import (
    InfrastructureValuation,
    MARKET_SCALING_MODES,
)
from .finance import RateSpec
from .program import (
    Allocation,
    ArchitectureDef,
    DiagramWindow,
    ModuleDef,
    Program,
    resolve_program,
)


class ConfigError(ValueError):
    def __init__(self, message: str, path: str = "", line: int | None = None):
        self.path = path or "<root>"
        self.line = line
        location = self.path
        if line is not None:
            location += f" (line {line})"
        super().__init__(f"{location}: {message}")


def _index_lines(node, path: str, out: dict[str, int]) -> None:
    """Record the 1-based source line of every config path."""
    out.setdefault(path or "<root>", node.start_mark.line + 1)
    if isinstance(node, yaml.MappingNode):
        for key_node, value_node in node.value:
            key = str(key_node.value)
            child = f"{path}.{key}" if path else key
            out[child] = key_node.start_mark.line + 1
            _index_lines(value_node, child, out)
    elif isinstance(node, yaml.SequenceNode):
        for i, item in enumerate(node.value):
            _index_lines(item, f"{path}[{i}]", out)


class _Parser:
    def __init__(self, text: str):
        try:
            self.data = yaml.safe_load(text)
            node = yaml.compose(text)
        except yaml.YAMLError as exc:
            mark = getattr(exc, "problem_mark", None)
            line = mark.line + 1 if mark else None
            raise ConfigError(f"invalid YAML: {exc}", line=line) from exc
        self.lines: dict[str, int] = {}
        if node is not None:
            _index_lines(node, "", self.lines)

    def line(self, path: str) -> int | None:
        return self.lines.get(path or "<root>")

    def fail(self, message: str, path: str) -> ConfigError:
        return ConfigError(message, path, self.line(path))

    def mapping(self, value, path: str, allowed: tuple[str, ...]) -> dict:
        if not isinstance(value, dict):
            raise self.fail(f"expected a mapping, got {type(value).__name__}", path)
        unknown = sorted(set(value) - set(allowed))
        if unknown:
            raise self.fail(
                f"unknown key(s) {unknown}; allowed: {sorted(allowed)}",
                f"{path}.{unknown[0]}" if path else unknown[0],
            )
        return value

    def sequence(self, value, path: str) -> list:
        if not isinstance(value, list):
            raise self.fail(f"expected a list, got {type(value).__name__}", path)
        return value

    def require(self, mapping: dict, key: str, path: str):
        if key not in mapping:
            raise self.fail(f"missing required key {key!r}", path)
        return mapping[key]

    def number(self, value, path: str) -> float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise self.fail(f"expected a number, got {value!r}", path)
        return float(value)

    def integer(self, value, path: str) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise self.fail(f"expected an integer, got {value!r}", path)
        return value

    def string(self, value, path: str) -> str:
        if not isinstance(value, str):
            raise self.fail(f"expected a string, got {value!r}", path)
        return value

    def domain(self, build, path: str):
        """Run a domain-type constructor, rewrapping its ValueError with
        config location info."""
        try:
            return build()
        except ValueError as exc:
            raise ConfigError(str(exc), path, self.line(path)) from exc


def _parse_ops(parser: _Parser, value, path: str) -> float:
    """Operations cost: a number, or {base, share} pro-rating a reference
    budget (share may be a fraction or a [numerator, denominator] pair)."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    mapping = parser.mapping(value, path, ("base", "share"))
    base = parser.number(parser.require(mapping, "base", path), f"{path}.base")
    share = parser.require(mapping, "share", path)
    if isinstance(share, list):
        if len(share) != 2:
            raise parser.fail("share ratio must be [numerator, denominator]", f"{path}.share")
        num = parser.number(share[0], f"{path}.share[0]")
        den = parser.number(share[1], f"{path}.share[1]")
        if den <= 0:
            raise parser.fail("share denominator must be > 0", f"{path}.share[1]")
        share_value = num / den
    else:
        share_value = parser.number(share, f"{path}.share")
    return parser.domain(lambda: scale_ops_by_share(base, share_value), f"{path}.share")


def _parse_element(parser: _Parser, value, path: str) -> CostElement:
    mapping = parser.mapping(value, path, ("name", "capital", "ops_per_year", "notes"))
    name = parser.string(parser.require(mapping, "name", path), f"{path}.name")
    capital = parser.number(mapping.get("capital", 0.0), f"{path}.capital")
    ops = 0.0
    if "ops_per_year" in mapping:
        ops = _parse_ops(parser, mapping["ops_per_year"], f"{path}.ops_per_year")
    notes = parser.string(mapping.get("notes", ""), f"{path}.notes")
    return parser.domain(
        lambda: CostElement(name=name, capital=capital, ops_per_year=ops, notes=notes),
        path,
    )


def _parse_module(parser: _Parser, name: str, value, path: str) -> ModuleDef:
    mapping = parser.mapping(value, path, ("integration_fraction", "elements"))
    fraction = parser.number(mapping.get("integration_fraction", 0.0), f"{path}.integration_fraction")
    if fraction < 0:
        raise parser.fail("integration_fraction must be >= 0", f"{path}.integration_fraction")
    elements = tuple(
        _parse_element(parser, item, f"{path}.elements[{i}]")
        for i, item in enumerate(
            parser.sequence(parser.require(mapping, "elements", path), f"{path}.elements")
        )
    )
    return ModuleDef(name=name, elements=elements, integration_fraction=fraction)


def _parse_allocation(parser: _Parser, value, path: str) -> Allocation:
    mapping = parser.mapping(
        value,
        path,
        ("rule", "direct_purchases", "direct_transfers", "shared_infrastructure"),
    )
    rule = parser.string(mapping.get("rule", "infra_first"), f"{path}.rule")
    if rule == "infra_first":
        for key in ("direct_purchases", "shared_infrastructure"):
            if key in mapping:
                raise parser.fail(
                    f"{key} cannot be set under the infra_first rule; it is derived",
                    f"{path}.{key}",
                )
    kwargs = {
        key: parser.number(mapping[key], f"{path}.{key}")
        for key in ("direct_purchases", "direct_transfers", "shared_infrastructure")
        if key in mapping
    }
    return parser.domain(lambda: Allocation(rule=rule, **kwargs), path)


def _parse_architecture(parser: _Parser, value, path: str, modules: dict) -> ArchitectureDef:
    mapping = parser.mapping(
        value, path, ("name", "per_firm_modules", "shared_modules", "allocation")
    )
    name = parser.string(parser.require(mapping, "name", path), f"{path}.name")

    def module_list(key: str) -> tuple[str, ...]:
        raw = parser.sequence(mapping.get(key, []), f"{path}.{key}")
        names = tuple(
            parser.string(item, f"{path}.{key}[{i}]") for i, item in enumerate(raw)
        )
        for i, module_name in enumerate(names):
            if module_name not in modules:
                raise parser.fail(
                    f"unknown module {module_name!r}; defined modules: "
                    f"{sorted(modules)}",
                    f"{path}.{key}[{i}]",
                )
        return names

    allocation = Allocation()
    if "allocation" in mapping:
        allocation = _parse_allocation(parser, mapping["allocation"], f"{path}.allocation")
    return ArchitectureDef(
        name=name,
        per_firm_modules=module_list("per_firm_modules"),
        shared_modules=module_list("shared_modules"),
        allocation=allocation,
    )


def _parse_valuation(parser: _Parser, value, path: str) -> InfrastructureValuation:
    mapping = parser.mapping(value, path, ("form", "cap"))
    form = parser.string(parser.require(mapping, "form", path), f"{path}.form")
    cap = None
    if "cap" in mapping:
        cap = parser.number(mapping["cap"], f"{path}.cap")
    return parser.domain(lambda: InfrastructureValuation(form=form, cap=cap), path)


def _parse_range(parser: _Parser, value, path: str) -> tuple[float, float]:
    raw = parser.sequence(value, path)
    if len(raw) != 2:
        raise parser.fail("expected [low, high]", path)
    return (parser.number(raw[0], f"{path}[0]"), parser.number(raw[1], f"{path}[1]"))


def _parse_diagram(parser: _Parser, value, path: str) -> DiagramWindow:
    mapping = parser.mapping(value, path, ("purchases_range", "cost_range", "resolution"))
    purchases = _parse_range(
        parser, parser.require(mapping, "purchases_range", path), f"{path}.purchases_range"
    )
    cost = _parse_range(
        parser, parser.require(mapping, "cost_range", path), f"{path}.cost_range"
    )
    resolution = (61, 61)
    if "resolution" in mapping:
        raw = parser.sequence(mapping["resolution"], f"{path}.resolution")
        if len(raw) != 2:
            raise parser.fail("expected [nx, ny]", f"{path}.resolution")
        resolution = (
            parser.integer(raw[0], f"{path}.resolution[0]"),
            parser.integer(raw[1], f"{path}.resolution[1]"),
        )
    return DiagramWindow(purchases_range=purchases, cost_range=cost, resolution=resolution)


_TOP_KEYS = (
    "name",
    "base_year",
    "budget",
    "rate",
    "market",
    "competition",
    "valuation",
    "modules",
    "architectures",
    "diagram",
)


def parse_config(text: str) -> Program:
    """Parse and fully validate a YAML program config.

    Returns a Program whose every architecture resolves feasibly; raises
    ConfigError with a path/line diagnostic otherwise.
    """
    parser = _Parser(text)
    top = parser.mapping(parser.data, "", _TOP_KEYS)

    name = parser.string(parser.require(top, "name", ""), "name")
    base_year = str(top.get("base_year", ""))
    budget = parser.number(parser.require(top, "budget", ""), "budget")

    rate_map = parser.mapping(
        parser.require(top, "rate", ""), "rate", ("annual_rate", "lifetime_years")
    )
    rate = parser.domain(
        lambda: RateSpec(
            annual_rate=parser.number(
                parser.require(rate_map, "annual_rate", "rate"), "rate.annual_rate"
            ),
            lifetime_years=parser.integer(
                parser.require(rate_map, "lifetime_years", "rate"), "rate.lifetime_years"
            ),
        ),
        "rate",
    )

    market = parser.mapping(
        parser.require(top, "market", ""), "market", ("revenue", "scaling")
    )
    revenue = parser.number(parser.require(market, "revenue", "market"), "market.revenue")
    scaling = parser.string(market.get("scaling", "industry_fixed"), "market.scaling")
    if scaling not in MARKET_SCALING_MODES:
        raise parser.fail(
            f"scaling must be one of {MARKET_SCALING_MODES}, got {scaling!r}",
            "market.scaling",
        )

    competition = parser.mapping(
        parser.require(top, "competition", ""),
        "competition",
        ("reference_firms", "max_firms", "share_mode"),
    )
    reference_firms = parser.integer(
        parser.require(competition, "reference_firms", "competition"),
        "competition.reference_firms",
    )
    max_firms = parser.integer(competition.get("max_firms", 10), "competition.max_firms")
    share_mode = parser.string(competition.get("share_mode", "equal"), "competition.share_mode")
    if share_mode != "equal":
        raise parser.fail(
            f"only equal market shares are supported; asymmetric share splits "
            f"(got {share_mode!r}) are out of scope",
            "competition.share_mode",
        )

    valuation = InfrastructureValuation()
    if "valuation" in top:
        valuation = _parse_valuation(parser, top["valuation"], "valuation")

    modules_map = top.get("modules", {})
    if not isinstance(modules_map, dict):
        raise parser.fail("expected a mapping of module name to definition", "modules")
    modules = {
        module_name: _parse_module(parser, module_name, value, f"modules.{module_name}")
        for module_name, value in modules_map.items()
    }

    arch_list = parser.sequence(parser.require(top, "architectures", ""), "architectures")
    architectures = tuple(
        _parse_architecture(parser, item, f"architectures[{i}]", modules)
        for i, item in enumerate(arch_list)
    )

    diagram = None
    if "diagram" in top:
        diagram = _parse_diagram(parser, top["diagram"], "diagram")

    program = parser.domain(
        lambda: Program(
            name=name,
            budget=budget,
            rate=rate,
            modules=modules,
            architectures=architectures,
            market_revenue=revenue,
            market_scaling=scaling,
            reference_firms=reference_firms,
            max_firms=max_firms,
            valuation=valuation,
            diagram=diagram,
            base_year=base_year,
        ),
        "",
    )

    # Allocation rules must produce budget-feasible splits up front; a config
    # that cannot be evaluated is a config error, with the binding constraint
    # in the message.
    try:
        resolve_program(program)
    except ValueError as exc:
        raise ConfigError(str(exc), "architectures") from exc
    return program


def load_config(path: str | Path) -> Program:
    return parse_config(Path(path).read_text(encoding="utf-8"))


def bundled_config_path(name: str) -> Path:
    """Filesystem path of a bundled example config (without .yaml suffix)."""
    path = resources.files("econarch") / "configs" / f"{name}.yaml"
    return Path(str(path))


def load_bundled(name: str) -> Program:
    return parse_config(bundled_config_path(name).read_text(encoding="utf-8"))
