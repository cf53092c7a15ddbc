"""Command-line interface: evaluate, diagram, sweep, threshold, serve.

Exit codes: 0 success, 2 config/usage errors, 3 infeasible economics,
4 output I/O errors. The default config path comes from $ECONARCH_CONFIG
when --config is omitted.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .config import ConfigError, load_config
from .econ_core import InfrastructureValuation
from .program import DiagramWindow, InfeasibleError, Program, diagram_spec
from .region import build_region
from .render import region_to_csv, region_to_svg
from .report import (
    render_csv,
    render_sweep_csv,
    render_sweep_text,
    render_text,
    render_threshold_text,
)
from .scenario import SWEEP_PARAMETERS, ScenarioOverride, apply_override, evaluate_scenario
from .service import (
    evaluate_payload,
    region_payload,
    sweep_payload,
    threshold_payload,
    to_json,
)

CONFIG_ENV = "ECONARCH_CONFIG"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3
EXIT_IO = 4


def _add_config_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--config",
        default=os.environ.get(CONFIG_ENV),
        help=f"program config path (default: ${CONFIG_ENV})",
    )


def _add_override_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--market-revenue", type=float, help="override market revenue ($M/year)")
    parser.add_argument("--rate", type=float, help="override annual rate (fraction)")
    parser.add_argument("--lifetime", type=int, help="override lifetime (years)")
    parser.add_argument("--budget", type=float, help="override program budget ($M/year)")
    parser.add_argument(
        "--shared-spend", type=float, help="pin shared infrastructure spending ($M/year)"
    )
    parser.add_argument(
        "--valuation",
        help="override valuation form, e.g. at_cost or capped_linear:509",
    )


def _override_from_args(args: argparse.Namespace) -> ScenarioOverride | None:
    valuation = None
    if args.valuation:
        form, _, cap = args.valuation.partition(":")
        valuation = InfrastructureValuation(form=form, cap=float(cap) if cap else None)
    override = ScenarioOverride(
        market_revenue=args.market_revenue,
        annual_rate=args.rate,
        lifetime_years=args.lifetime,
        budget=args.budget,
        shared_spend=args.shared_spend,
        valuation=valuation,
    )
    return None if override.is_empty() else override


def _load(args: argparse.Namespace) -> Program:
    if not args.config:
        raise ConfigError(f"no config given: pass --config or set ${CONFIG_ENV}")
    try:
        return load_config(args.config)
    except OSError as exc:
        raise ConfigError(f"cannot read config {args.config!r}: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_evaluate(args: argparse.Namespace) -> int:
    program = _load(args)
    payload = evaluate_payload(program)
    if args.format == "json":
        _emit(to_json(payload), args.out)
    elif args.format == "csv":
        _emit(render_csv(payload), args.out)
    else:
        _emit(render_text(payload), args.out)
    return EXIT_OK


def _cmd_diagram(args: argparse.Namespace) -> int:
    program = _load(args)
    override = _override_from_args(args)
    if args.format == "json":
        _emit(to_json(region_payload(program, override)), args.out)
        return EXIT_OK
    if override is not None:
        program = apply_override(program, override)
    result = evaluate_scenario(program)
    spec = diagram_spec(program)
    points = [(o.name, o.point[0], o.point[1]) for o in result.architectures]
    region = build_region(spec, points)
    if args.format == "csv":
        _emit(region_to_csv(region), args.out)
    else:
        _emit(region_to_svg(region, title=program.name), args.out)
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    program = _load(args)
    try:
        values = [float(v) for v in args.values.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"--values must be comma-separated numbers, got {args.values!r}")
    if not values:
        raise ConfigError("--values must name at least one value")
    payload = sweep_payload(program, args.param, values)
    if args.format == "json":
        _emit(to_json(payload), args.out)
    elif args.format == "csv":
        _emit(render_sweep_csv(payload), args.out)
    else:
        _emit(render_sweep_text(payload), args.out)
    return EXIT_OK


def _cmd_threshold(args: argparse.Namespace) -> int:
    program = _load(args)
    try:
        lo, hi = (float(v) for v in args.bracket.split(","))
    except ValueError:
        raise ConfigError(f"--bracket must be 'low,high', got {args.bracket!r}")
    payload = threshold_payload(program, args.arch, args.param, args.target_n, (lo, hi))
    if args.format == "json":
        _emit(to_json(payload), args.out)
    else:
        _emit(render_threshold_text(payload), args.out)
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .api import create_app

    program = _load(args)
    static_dir = Path(args.static_dir) if args.static_dir else None
    app = create_app(program, static_dir=static_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="econarch",
        description=(
            "Evaluate economic architectures of market-development programs: "
            "profitability, sustainable-competition diagrams, scenarios."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("evaluate", help="per-architecture profitability report")
    _add_config_arg(p_eval)
    p_eval.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_eval.add_argument("--out", help="write to file instead of stdout")
    p_eval.set_defaults(func=_cmd_evaluate)

    p_diag = sub.add_parser("diagram", help="sustainable-competition diagram")
    _add_config_arg(p_diag)
    p_diag.add_argument("--format", choices=("svg", "csv", "json"), default="svg")
    p_diag.add_argument("--out", help="output path (stdout if omitted)")
    _add_override_args(p_diag)
    p_diag.set_defaults(func=_cmd_diagram)

    p_sweep = sub.add_parser("sweep", help="evaluate across a list of parameter values")
    _add_config_arg(p_sweep)
    p_sweep.add_argument("--param", choices=SWEEP_PARAMETERS, required=True)
    p_sweep.add_argument("--values", required=True, help="comma-separated values")
    p_sweep.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_sweep.add_argument("--out")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_thr = sub.add_parser(
        "threshold", help="bisect for the parameter value sustaining a target firm count"
    )
    _add_config_arg(p_thr)
    p_thr.add_argument("--arch", required=True, help="architecture name")
    p_thr.add_argument("--param", choices=SWEEP_PARAMETERS, required=True)
    p_thr.add_argument("--target-n", type=int, required=True)
    p_thr.add_argument("--bracket", required=True, help="low,high")
    p_thr.add_argument("--format", choices=("text", "json"), default="text")
    p_thr.add_argument("--out")
    p_thr.set_defaults(func=_cmd_threshold)

    p_serve = sub.add_parser("serve", help="run the JSON HTTP API (and UI when built)")
    _add_config_arg(p_serve)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument(
        "--static-dir",
        default="frontend/dist" if Path("frontend/dist").is_dir() else None,
        help="directory with the built what-if UI",
    )
    p_serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
