"""HTTP JSON API and static hosting for the Discover UI.

Every endpoint is a thin serialization of a service call; the error table
below is the single mapping from module errors to (status, code) pairs.
Review decisions are guarded by a shared secret when the
INCIDENTDB_REVIEW_SECRET environment variable is set: requests must send
the same value in the X-Review-Secret header.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import errors, views
from .index import Query
from .models import parse_draft
from .service import IncidentDatabase

REVIEW_SECRET_ENV = "INCIDENTDB_REVIEW_SECRET"

# module error -> (http status, machine-readable code)
ERROR_MAP: dict[type[errors.IncidentDbError], tuple[int, str]] = {
    errors.ValidationError: (422, "validation_error"),
    errors.DuplicateUrl: (409, "duplicate_url"),
    errors.DuplicateReport: (409, "duplicate_report"),
    errors.UnknownReport: (404, "unknown_report"),
    errors.UnknownIncident: (404, "unknown_incident"),
    errors.WouldOrphanIncident: (409, "would_orphan_incident"),
    errors.DuplicateNamespace: (409, "duplicate_namespace"),
    errors.InvalidName: (422, "invalid_name"),
    errors.UnknownNamespace: (404, "unknown_namespace"),
    errors.UnknownTag: (404, "unknown_tag"),
    errors.DuplicateClassification: (409, "duplicate_classification"),
    errors.UnknownClassification: (404, "unknown_classification"),
    errors.UnknownSubmission: (404, "unknown_submission"),
    errors.AlreadyDecided: (409, "already_decided"),
    errors.UnknownView: (404, "unknown_view"),
    errors.IngestError: (400, "ingest_error"),
    errors.StorageError: (500, "storage_error"),
    errors.CorruptLog: (500, "corrupt_log"),
}


def error_response(exc: errors.IncidentDbError) -> JSONResponse:
    status, code = ERROR_MAP[type(exc)]
    body: dict[str, Any] = {"error": {"code": code, "message": str(exc)}}
    if isinstance(exc, errors.ValidationError):
        body["error"]["fieldErrors"] = exc.field_errors
    return JSONResponse(status_code=status, content=body)


def parse_facet_params(params: list[str]) -> tuple[dict[str, frozenset[str]], list[str]]:
    filters: dict[str, set[str]] = {}
    warnings = []
    for param in params:
        key, separator, value = param.partition(":")
        if not separator or not key or not value:
            warnings.append(f"malformed facet filter ignored: {param}")
            continue
        filters.setdefault(key, set()).add(value)
    return {k: frozenset(v) for k, v in filters.items()}, warnings


def create_app(db: IncidentDatabase, ui_dir: Path | str | None = None) -> FastAPI:
    app = FastAPI(title="incidentdb", docs_url=None, redoc_url=None)

    @app.exception_handler(errors.IncidentDbError)
    async def handle_db_error(request: Request, exc: errors.IncidentDbError):
        return error_response(exc)

    @app.get("/api/search")
    def search(request: Request) -> JSONResponse:
        params = request.query_params
        try:
            page = int(params.get("page", "1"))
            page_size = int(params.get("pageSize", "10"))
            query = Query(
                text=params.get("q", ""),
                facet_filters={},
                page=page,
                page_size=page_size,
            )
        except ValueError as exc:
            return JSONResponse(
                status_code=400,
                content={"error": {"code": "bad_pagination", "message": str(exc)}},
            )
        filters, warnings = parse_facet_params(params.getlist("f"))
        query = Query(
            text=query.text, facet_filters=filters, page=query.page, page_size=query.page_size
        )
        document = db.search_document(query)
        document["warnings"] = warnings + document["warnings"]
        return JSONResponse(document)

    @app.get("/api/incidents/{number}")
    def incident(number: int) -> JSONResponse:
        return JSONResponse(db.incident_document(number))

    @app.post("/api/submissions", status_code=201)
    async def submit(request: Request) -> JSONResponse:
        body = await request.json()
        if not isinstance(body, dict):
            raise errors.ValidationError(["body"])
        draft_doc = body.get("draft")
        if not isinstance(draft_doc, dict):
            raise errors.ValidationError(["draft"])
        draft, field_errors = parse_draft(draft_doc)
        if field_errors:
            raise errors.ValidationError(field_errors)
        submitter = body.get("submitter", "")
        if not isinstance(submitter, str):
            raise errors.ValidationError(["submitter"])
        submission = db.submit(draft, submitter)
        return JSONResponse(status_code=201, content=submission.to_json_dict())

    @app.post("/api/submissions/{submission_id}/decision")
    async def decide(submission_id: int, request: Request) -> JSONResponse:
        secret = os.environ.get(REVIEW_SECRET_ENV)
        if secret and request.headers.get("X-Review-Secret") != secret:
            return JSONResponse(
                status_code=401,
                content={
                    "error": {"code": "unauthorized", "message": "bad review secret"}
                },
            )
        body = await request.json()
        action = body.get("action")
        reviewer = body.get("reviewer", "")
        if action == "accept":
            resolution = body.get("resolution")
            if resolution != "new" and not isinstance(resolution, int):
                raise errors.ValidationError(["resolution"])
            db.accept(submission_id, resolution, reviewer)
        elif action == "reject":
            reason = body.get("reason", "")
            if not isinstance(reason, str):
                raise errors.ValidationError(["reason"])
            db.reject(submission_id, reason, reviewer)
        else:
            raise errors.ValidationError(["action"])
        return JSONResponse(db.submission_document(submission_id))

    @app.get("/api/views/{name}")
    def static_view(name: str, request: Request) -> Response:
        payload, sequence = views.serve_view(db.views_dir, name)
        etag = f'"views-{sequence}"'
        if request.headers.get("If-None-Match") == etag:
            return Response(status_code=304, headers={"ETag": etag})
        return Response(
            content=payload,
            media_type="application/json",
            headers={"ETag": etag, "Cache-Control": "no-cache"},
        )

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
