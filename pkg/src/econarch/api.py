"""JSON-over-HTTP API exposing evaluation, region, and threshold operations.

Handlers are pure functions of (program, request body); there is no shared
mutable state and no per-request config editing, so concurrent requests are
safe and a config change requires a restart. Responses are serialized with
the same to_json the CLI uses, so the two surfaces emit identical bytes for
identical inputs.

Status codes: 400 for a malformed body or invalid parameters, 422 for an
override that is syntactically fine but economically infeasible (the body
names the binding constraint), 404 for unknown architectures.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles

from .program import DiagramWindow, InfeasibleError, Program
from .service import (
    config_payload,
    evaluate_payload,
    override_from_mapping,
    region_payload,
    sweep_payload,
    threshold_payload,
    to_json,
)


def _json_response(payload: Any, status_code: int = 200) -> Response:
    return Response(
        content=to_json(payload),
        status_code=status_code,
        media_type="application/json",
    )


def _error(message: str, status_code: int, **extra: Any) -> Response:
    return _json_response({"error": message, **extra}, status_code)


async def _read_body(request: Request) -> dict:
    raw = await request.body()
    if not raw:
        return {}
    try:
        body = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValueError(f"request body is not valid JSON: {exc}") from exc
    if not isinstance(body, dict):
        raise ValueError("request body must be a JSON object")
    return body


def _window_from_body(diagram: Mapping[str, Any] | None) -> DiagramWindow | None:
    if diagram is None:
        return None
    if not isinstance(diagram, Mapping):
        raise ValueError("diagram must be a JSON object")
    unknown = sorted(set(diagram) - {"purchases_range", "cost_range", "resolution"})
    if unknown:
        raise ValueError(f"unknown diagram key(s) {unknown}")
    if "purchases_range" not in diagram or "cost_range" not in diagram:
        raise ValueError("diagram needs purchases_range and cost_range")

    def pair(key: str) -> tuple[float, float]:
        value = diagram[key]
        if not isinstance(value, (list, tuple)) or len(value) != 2:
            raise ValueError(f"diagram {key} must be [low, high]")
        return float(value[0]), float(value[1])

    resolution = (61, 61)
    if "resolution" in diagram:
        raw = diagram["resolution"]
        if not isinstance(raw, (list, tuple)) or len(raw) != 2:
            raise ValueError("diagram resolution must be [nx, ny]")
        resolution = (int(raw[0]), int(raw[1]))
    return DiagramWindow(
        purchases_range=pair("purchases_range"),
        cost_range=pair("cost_range"),
        resolution=resolution,
    )


def create_app(program: Program, static_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="economic architecture service", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/api/config")
    async def get_config() -> Response:
        return _json_response(config_payload(program))

    @app.post("/api/evaluate")
    async def evaluate(request: Request) -> Response:
        try:
            body = await _read_body(request)
            override = override_from_mapping(body)
        except ValueError as exc:
            return _error(str(exc), 400)
        try:
            return _json_response(evaluate_payload(program, override))
        except InfeasibleError as exc:
            return _error(str(exc), 422, binding_constraint=exc.binding_constraint)
        except ValueError as exc:
            return _error(str(exc), 400)

    @app.post("/api/region")
    async def region(request: Request) -> Response:
        try:
            body = await _read_body(request)
            override = override_from_mapping(body.get("overrides", {}))
            window = _window_from_body(body.get("diagram"))
            unknown = sorted(set(body) - {"overrides", "diagram"})
            if unknown:
                raise ValueError(f"unknown key(s) {unknown}; allowed: overrides, diagram")
        except ValueError as exc:
            return _error(str(exc), 400)
        try:
            return _json_response(region_payload(program, override, window))
        except InfeasibleError as exc:
            return _error(str(exc), 422, binding_constraint=exc.binding_constraint)
        except ValueError as exc:
            return _error(str(exc), 400)

    @app.post("/api/threshold")
    async def threshold(request: Request) -> Response:
        try:
            body = await _read_body(request)
            unknown = sorted(
                set(body) - {"architecture", "parameter", "target_firms", "bracket"}
            )
            if unknown:
                raise ValueError(f"unknown key(s) {unknown}")
            for key in ("architecture", "parameter", "target_firms", "bracket"):
                if key not in body:
                    raise ValueError(f"missing required key {key!r}")
            bracket = body["bracket"]
            if not isinstance(bracket, (list, tuple)) or len(bracket) != 2:
                raise ValueError("bracket must be [low, high]")
            architecture = body["architecture"]
            if architecture not in [a.name for a in program.architectures]:
                return _error(f"unknown architecture {architecture!r}", 404)
        except ValueError as exc:
            return _error(str(exc), 400)
        try:
            payload = threshold_payload(
                program,
                architecture,
                body["parameter"],
                int(body["target_firms"]),
                (float(bracket[0]), float(bracket[1])),
            )
            return _json_response(payload)
        except InfeasibleError as exc:
            return _error(str(exc), 422, binding_constraint=exc.binding_constraint)
        except ValueError as exc:
            return _error(str(exc), 400)

    @app.post("/api/sweep")
    async def sweep(request: Request) -> Response:
        try:
            body = await _read_body(request)
            unknown = sorted(set(body) - {"parameter", "values"})
            if unknown:
                raise ValueError(f"unknown key(s) {unknown}")
            parameter = body.get("parameter")
            values = body.get("values")
            if not isinstance(values, list) or not values:
                raise ValueError("values must be a non-empty list of numbers")
            return _json_response(
                sweep_payload(program, parameter, [float(v) for v in values])
            )
        except ValueError as exc:
            return _error(str(exc), 400)

    if static_dir is not None and static_dir.is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
