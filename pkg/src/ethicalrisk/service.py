"""Stateless HTTP scoring service.

All bodies are JSON with weights as decimal strings. No audit is ever
persisted and responses carry no timestamps, so identical requests yield
byte-identical responses. Frameworks are loaded once at startup and
shared immutably across requests.
"""

from __future__ import annotations

import json
from importlib.metadata import PackageNotFoundError, version as pkg_version

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from .consensus import ConsensusWeights, trace_audit
from .fileio import DocumentError, audit_from_payload, framework_to_payload
from .fixedpoint import WeightError, Weight
from .formula import QuestionTag
from .model import MODES, FrameworkDefinition
from .registry import FrameworkRegistry, UnknownFrameworkError
from .render import (
    document_bytes,
    render_machine,
    shipped_example_notices,
    whatif_document,
)
from .scoring import (
    AuditValidationError,
    dimension_extrema,
    max_possible_total,
    score_audit,
    validate_audit,
    what_if,
)


def service_version() -> str:
    try:
        return pkg_version("ethicalrisk")
    except PackageNotFoundError:
        return "0.0.0-dev"


class RequestError(ValueError):
    def __init__(self, status: int, message: str):
        self.status = status
        self.message = message
        super().__init__(message)


def _json_response(payload: dict, status: int = 200) -> Response:
    return Response(content=document_bytes(payload), status_code=status,
                    media_type="application/json")


def _parse_weights(raw: object) -> ConsensusWeights:
    if raw is None:
        return ConsensusWeights.default()
    if not isinstance(raw, dict):
        raise RequestError(400, "weights must be an object of level -> decimal string")
    try:
        defaults = ConsensusWeights.default().as_mapping()
        merged = {k: Weight.parse(str(raw.get(k, str(v)))) for k, v in defaults.items()}
        return ConsensusWeights(merged["D"], merged["C"], merged["I"], merged["N"])
    except (WeightError, ValueError) as exc:
        raise RequestError(400, f"bad consensus weights: {exc}") from exc


def _unwrap_audit_request(body: object) -> tuple[dict, str | None, object]:
    """Accept either a bare audit document or {audit, mode, weights}."""
    if not isinstance(body, dict):
        raise RequestError(400, "request body must be a JSON object")
    if "answers" in body:
        return body, body.get("mode"), None
    if "audit" not in body:
        raise RequestError(400, "request body must be an audit document or carry an 'audit' key")
    mode = body.get("mode")
    if mode is not None and mode not in MODES:
        raise RequestError(400, f"mode must be one of {MODES}")
    return body["audit"], mode, body.get("weights")


def _load_audit(raw: object):
    try:
        return audit_from_payload(raw)
    except DocumentError as exc:
        raise RequestError(400, str(exc)) from exc


def _issues_payload(fw: FrameworkDefinition, issues) -> dict:
    return {
        "framework": {"id": fw.id, "version": fw.version},
        "errors": [
            {"kind": i.kind, "tag": None if i.tag is None else str(i.tag),
             "message": i.message}
            for i in issues
        ],
    }


def _framework_document(fw: FrameworkDefinition) -> dict:
    payload = framework_to_payload(fw)
    computed = {}
    for mode in MODES:
        maxima = {
            d.symbol: str(dimension_extrema(fw, d, mode).maximum)
            for d in fw.dimensions
        }
        total = max_possible_total(fw, mode)
        computed[mode] = {
            "dimension_max": maxima,
            "max_possible_total": str(total.value),
        }
    payload["computed"] = computed
    return payload


def create_app(registry: FrameworkRegistry | None = None) -> FastAPI:
    registry = registry or FrameworkRegistry()
    app = FastAPI(title="ethicalrisk scoring service", version=service_version())
    # local audit tool; the questionnaire UI is served from a separate origin
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
                       allow_headers=["*"])

    async def read_body(request: Request) -> object:
        raw = await request.body()
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise RequestError(400, f"request body is not valid JSON: {exc}") from exc

    def lookup(framework_id: str) -> FrameworkDefinition:
        try:
            return registry.get(framework_id)
        except UnknownFrameworkError as exc:
            raise RequestError(404, str(exc)) from exc

    @app.exception_handler(RequestError)
    async def handle_request_error(_request: Request, exc: RequestError) -> Response:
        return _json_response({"error": exc.message}, status=exc.status)

    @app.get("/v1/health")
    async def health() -> Response:
        return _json_response({"status": "ok", "version": service_version()})

    @app.get("/v1/frameworks")
    async def list_frameworks() -> Response:
        return _json_response({
            "frameworks": [{"id": fw.id, "version": fw.version} for fw in registry.all()],
        })

    @app.get("/v1/frameworks/{framework_id}")
    async def get_framework(framework_id: str) -> Response:
        fw = lookup(framework_id)
        return _json_response(_framework_document(fw))

    @app.post("/v1/frameworks/{framework_id}/score")
    async def score(framework_id: str, request: Request) -> Response:
        fw = lookup(framework_id)
        raw_audit, mode, raw_weights = _unwrap_audit_request(await read_body(request))
        audit = _load_audit(raw_audit)
        weights = _parse_weights(raw_weights)
        try:
            report = score_audit(fw, audit, mode)
        except AuditValidationError as exc:
            return _json_response(_issues_payload(fw, exc.issues), status=422)
        trace = trace_audit(fw, audit, report, weights)
        notices = shipped_example_notices(fw, audit)
        rendered = render_machine(report, trace, notices)
        return Response(content=rendered.body, media_type="application/json")

    @app.post("/v1/frameworks/{framework_id}/whatif")
    async def whatif(framework_id: str, request: Request) -> Response:
        fw = lookup(framework_id)
        body = await read_body(request)
        if not isinstance(body, dict) or "audit" not in body:
            raise RequestError(400, "what-if body needs keys audit, question, answer")
        for key in ("question", "answer"):
            if not isinstance(body.get(key), str):
                raise RequestError(400, f"what-if body needs a string {key!r}")
        mode = body.get("mode")
        if mode is not None and mode not in MODES:
            raise RequestError(400, f"mode must be one of {MODES}")
        audit = _load_audit(body["audit"])
        try:
            tag = QuestionTag.parse(body["question"])
        except ValueError as exc:
            raise RequestError(400, str(exc)) from exc
        try:
            delta = what_if(fw, audit, tag, body["answer"], mode)
        except AuditValidationError as exc:
            return _json_response(_issues_payload(fw, exc.issues), status=422)
        return _json_response(whatif_document(delta))

    @app.post("/v1/frameworks/{framework_id}/validate")
    async def validate(framework_id: str, request: Request) -> Response:
        fw = lookup(framework_id)
        raw_audit, _mode, _weights = _unwrap_audit_request(await read_body(request))
        audit = _load_audit(raw_audit)
        issues = validate_audit(fw, audit)
        return _json_response(_issues_payload(fw, issues))

    return app


def serve(port: int = 8000, bind: str = "127.0.0.1",
          registry: FrameworkRegistry | None = None) -> None:
    """Run the service until interrupted; binds loopback by default."""
    import uvicorn

    uvicorn.run(create_app(registry), host=bind, port=port, log_level="info")
