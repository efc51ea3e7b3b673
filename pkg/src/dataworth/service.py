"""HTTP JSON API for live assessments.

Sessions are working response sets stored on disk in the answers-file
format, so a half-finished assessment survives restarts and can be scored
directly from the store with the command-line tools. Mutations to one
session are serialized with a per-session lock; invalid submissions are
rejected with the validator's violation list and never stored.
"""

from __future__ import annotations

import threading
import uuid
from datetime import datetime, timezone
from pathlib import Path

import yaml
from fastapi import Body, FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from . import catalog as cat
from .assessment import Response, build_response_set, load_answers, save_answers, validate
from .errors import InputError, ParseFailure
from .numbers import to_jsonable
from .profiler import auto_fill, profile as run_profile, profile_to_document
from .report import (
    RenderSpec,
    comparison_to_document,
    delta_to_document,
    render_comparison,
    render_value,
    value_to_document,
)
from .scoring import WeightProfile, compare, compute_value, what_if

DEFAULT_STORE = ".dataworth_sessions"


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


class SessionStore:
    """Disk-backed sessions: {id}.answers plus a small {id}.meta.yaml."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def lock(self, session_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(session_id, threading.Lock())

    def _answers_path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.answers"

    def _meta_path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.meta.yaml"

    def exists(self, session_id: str) -> bool:
        return self._answers_path(session_id).is_file()

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.answers"))

    def create(self, catalog: cat.Catalog, dataset_id: str, mode: str) -> dict:
        session_id = uuid.uuid4().hex[:12]
        response_set = build_response_set(catalog, dataset_id, {})
        save_answers(response_set, self._answers_path(session_id))
        meta = {"mode": mode, "created": _now(), "updated": _now()}
        self._meta_path(session_id).write_text(yaml.safe_dump(meta, sort_keys=False))
        return {"session_id": session_id, **meta}

    def load(self, catalog: cat.Catalog, session_id: str):
        response_set = load_answers(self._answers_path(session_id), catalog)
        meta = yaml.safe_load(self._meta_path(session_id).read_text()) or {}
        return response_set, meta

    def save(self, session_id: str, response_set, meta: dict) -> None:
        save_answers(response_set, self._answers_path(session_id))
        meta = {**meta, "updated": _now()}
        self._meta_path(session_id).write_text(yaml.safe_dump(meta, sort_keys=False))


def _profile_for(catalog: cat.Catalog, mode: str) -> WeightProfile:
    if mode == "normalized":
        return WeightProfile.equal_normalized(catalog)
    return WeightProfile.raw_sum(catalog)


def _weight_mode(meta: dict) -> str:
    return meta.get("mode", "raw_sum")


def _wants_markdown(request: Request) -> bool:
    return "text/markdown" in request.headers.get("accept", "")


def create_app(
    catalog: cat.Catalog | None = None, store_dir: str | Path = DEFAULT_STORE
) -> FastAPI:
    """Build the service around one catalog and one on-disk session store."""
    active_catalog = catalog or cat.load_catalog()
    store = SessionStore(store_dir)
    app = FastAPI(title="dataworth", version="0.1.0")

    @app.exception_handler(InputError)
    async def _input_error(request: Request, exc: InputError):
        return JSONResponse(status_code=422, content={"error": str(exc)})

    @app.exception_handler(ParseFailure)
    async def _parse_failure(request: Request, exc: ParseFailure):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    def _not_found(session_id: str) -> JSONResponse:
        return JSONResponse(
            status_code=404, content={"error": f"unknown session {session_id!r}"}
        )

    def _live_score(session_id: str, response_set, meta: dict) -> dict:
        profile = _profile_for(active_catalog, _weight_mode(meta))
        report = compute_value(active_catalog, response_set, profile)
        return {
            "session_id": session_id,
            "dataset_id": response_set.dataset_id,
            "mode": report.mode,
            "total": to_jsonable(report.total),
            "answered_count": report.answered_count,
            "omitted_count": report.omitted_count,
        }

    @app.get("/catalog")
    def get_catalog():
        return cat.to_document(active_catalog)

    @app.get("/sessions")
    def list_sessions():
        sessions = []
        for session_id in store.list_ids():
            response_set, meta = store.load(active_catalog, session_id)
            sessions.append(
                {
                    "session_id": session_id,
                    "dataset_id": response_set.dataset_id,
                    "answered_count": len(response_set.responses),
                    **meta,
                }
            )
        return {"sessions": sessions}

    @app.post("/sessions", status_code=201)
    def create_session(payload: dict = Body(...)):
        dataset_id = payload.get("dataset_id")
        if not isinstance(dataset_id, str) or not dataset_id:
            raise InputError("dataset_id is required")
        mode = payload.get("mode", "raw_sum")
        if mode not in ("raw_sum", "normalized"):
            raise InputError(f"unknown mode {mode!r}")
        created = store.create(active_catalog, dataset_id, mode)
        return {**created, "dataset_id": dataset_id, "catalog_version": active_catalog.version}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        if not store.exists(session_id):
            return _not_found(session_id)
        response_set, meta = store.load(active_catalog, session_id)
        answers = {
            qid: {
                "value": r.value if isinstance(r.value, str) else to_jsonable(r.value),
                "provenance": r.provenance,
                **({"note": r.note} if r.note else {}),
            }
            for qid, r in sorted(response_set.responses.items())
        }
        return {
            "session_id": session_id,
            "dataset_id": response_set.dataset_id,
            "catalog_version": response_set.catalog_version,
            "answers": answers,
            **meta,
        }

    @app.put("/sessions/{session_id}/answers")
    def put_answers(session_id: str, payload: dict = Body(...)):
        if not store.exists(session_id):
            return _not_found(session_id)
        raw = payload.get("answers")
        if not isinstance(raw, dict):
            raise InputError("answers must be a mapping of question_id to value")
        with store.lock(session_id):
            response_set, meta = store.load(active_catalog, session_id)
            merged = dict(response_set.responses)
            for qid, entry in raw.items():
                value, note = entry, None
                if isinstance(entry, dict):
                    value = entry.get("value")
                    note = entry.get("note")
                if value is None:
                    merged.pop(qid, None)  # retract an answer
                    continue
                if not isinstance(value, str):
                    value = to_fraction_or_reject(qid, value)
                merged[qid] = Response(qid, value, "manual", note)
            candidate = build_response_set(
                active_catalog, response_set.dataset_id, merged
            )
            checked = validate(active_catalog, candidate)
            if not checked.valid:
                return JSONResponse(
                    status_code=422,
                    content={
                        "error": "validation failed",
                        "violations": [
                            {"question_id": v.question_id, "message": v.message}
                            for v in checked.violations
                        ],
                    },
                )
            store.save(session_id, candidate, meta)
            return _live_score(session_id, candidate, meta)

    @app.get("/sessions/{session_id}/score")
    def get_score(session_id: str, request: Request):
        if not store.exists(session_id):
            return _not_found(session_id)
        response_set, meta = store.load(active_catalog, session_id)
        profile = _profile_for(active_catalog, _weight_mode(meta))
        report = compute_value(active_catalog, response_set, profile)
        if _wants_markdown(request):
            return PlainTextResponse(
                render_value(report, RenderSpec("markdown"), active_catalog),
                media_type="text/markdown",
            )
        return value_to_document(report)

    @app.post("/whatif")
    def post_whatif(payload: dict = Body(...), request: Request = None):
        session_id = payload.get("session_id")
        if not isinstance(session_id, str) or not store.exists(session_id):
            return _not_found(str(session_id))
        raw = payload.get("changes")
        if not isinstance(raw, dict) or not raw:
            raise InputError("changes must be a non-empty mapping of question_id to value")
        response_set, meta = store.load(active_catalog, session_id)
        profile = _profile_for(active_catalog, _weight_mode(meta))
        report = compute_value(active_catalog, response_set, profile)
        changes = []
        for qid, value in raw.items():
            if not isinstance(value, str):
                value = to_fraction_or_reject(qid, value)
            changes.append((qid, value))
        delta = what_if(active_catalog, report, changes)
        return delta_to_document(delta)

    @app.post("/compare")
    def post_compare(payload: dict = Body(...), request: Request = None):
        session_ids = payload.get("session_ids")
        if not isinstance(session_ids, list) or len(session_ids) < 2:
            raise InputError("session_ids must list at least two sessions")
        reports = []
        modes = set()
        for session_id in session_ids:
            if not store.exists(str(session_id)):
                return _not_found(str(session_id))
            response_set, meta = store.load(active_catalog, str(session_id))
            modes.add(_weight_mode(meta))
            if len(modes) > 1:
                raise InputError("sessions use different weight modes")
            profile = _profile_for(active_catalog, _weight_mode(meta))
            reports.append(compute_value(active_catalog, response_set, profile))
        comparison = compare(reports)
        if request is not None and _wants_markdown(request):
            return PlainTextResponse(
                render_comparison(comparison, RenderSpec("markdown"), active_catalog),
                media_type="text/markdown",
            )
        return comparison_to_document(comparison)

    @app.post("/profile")
    def post_profile(payload: dict = Body(...)):
        path = payload.get("path")
        if not isinstance(path, str) or not path:
            raise InputError("path is required")
        profiled = run_profile(path)
        filled = auto_fill(profiled, active_catalog)
        answers = {
            qid: {
                "value": r.value if isinstance(r.value, str) else to_jsonable(r.value),
                "provenance": r.provenance,
                **({"note": r.note} if r.note else {}),
            }
            for qid, r in sorted(filled.responses.items())
        }
        doc = profile_to_document(profiled)
        doc["kind"] = "dataset_profile"
        return {"profile": doc, "dataset_id": filled.dataset_id, "answers": answers}

    return app


def to_fraction_or_reject(qid: str, value: object):
    from .numbers import parse_exact

    try:
        return parse_exact(value)
    except (ValueError, TypeError) as exc:
        raise InputError(f"{qid}: {exc}") from exc
