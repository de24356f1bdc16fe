"""HTTP JSON API over the engine.

All endpoints live under /v1; errors come back as {code, message,
detail}. Loaded resources are immutable, so every handler is safe to
run concurrently; the one mutable structure is the stability job
registry, guarded by a lock.
"""

from __future__ import annotations

import threading
import uuid
from pathlib import Path
from typing import Literal

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import __version__
from .data import Selection
from .engine import (EmptySliceError, Engine, InvalidRangeError,
                     SelectionError, UnknownNameError)
from .search import BackendError
from .stability import report_to_json
from .suggest import Ranking


class SelectionBody(BaseModel):
    collection: str | None = None
    dataset_names: list[str] = Field(min_length=1)
    keys: list[str] = Field(min_length=1)
    year_ranges: list[tuple[int, int]] = Field(min_length=1)
    profile: Literal["uniform", "gaussian"] | None = None


class QueryBody(SelectionBody):
    backend: Literal["local", "es"] | None = None
    top_k: int | None = Field(default=None, ge=1)
    text_mode: Literal["direct", "indirect", "nlp"] = "direct"
    pattern_method: Literal["pearson", "dtw"] = "pearson"


class StabilityBody(BaseModel):
    top_k: int = Field(default=10, ge=1)
    top_n: int = Field(default=6, ge=1)
    window: int = Field(default=3, ge=1)


class _Jobs:
    def __init__(self):
        self._lock = threading.Lock()
        self._jobs: dict[str, dict] = {}

    def create(self) -> str:
        job_id = uuid.uuid4().hex
        with self._lock:
            self._jobs[job_id] = {"status": "running"}
        return job_id

    def finish(self, job_id: str, report: dict | None, error: str | None):
        with self._lock:
            if error is None:
                self._jobs[job_id] = {"status": "done", "report": report}
            else:
                self._jobs[job_id] = {"status": "failed", "error": error}

    def get(self, job_id: str) -> dict | None:
        with self._lock:
            state = self._jobs.get(job_id)
            return dict(state) if state else None


def _ranking_json(ranking: Ranking) -> dict:
    return {"kind": ranking.kind,
            "entries": [[nominal, score] for nominal, score in ranking.entries]}


def create_app(engine: Engine, ui_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="q4eda", version=__version__)
    jobs = _Jobs()

    def error(status: int, code: str, message: str, detail=None) -> JSONResponse:
        return JSONResponse(status_code=status,
                            content={"code": code, "message": message,
                                     "detail": detail})

    @app.exception_handler(UnknownNameError)
    async def _unknown(request: Request, exc: UnknownNameError):
        return error(400, "unknown_name", str(exc))

    @app.exception_handler(InvalidRangeError)
    async def _invalid(request: Request, exc: InvalidRangeError):
        return error(400, "invalid_range", str(exc))

    @app.exception_handler(EmptySliceError)
    async def _empty(request: Request, exc: EmptySliceError):
        return error(422, "empty_slice", str(exc))

    @app.exception_handler(BackendError)
    async def _backend(request: Request, exc: BackendError):
        return error(502, "backend_error", str(exc))

    def to_selection(body: SelectionBody) -> Selection:
        if body.collection is not None and body.collection != engine.collection.id:
            raise UnknownNameError(f"unknown collection {body.collection!r}")
        try:
            return Selection(
                dataset_names=tuple(n.strip().lower() for n in body.dataset_names),
                keys=tuple(k.strip().lower() for k in body.keys),
                year_ranges=tuple((int(a), int(b)) for a, b in body.year_ranges),
                weight_profile=body.profile or engine.converter.profile,
            )
        except ValueError as exc:
            raise InvalidRangeError(str(exc)) from exc

    @app.get("/v1/health")
    async def health():
        return {
            "status": "ok",
            "version": __version__,
            "resources": {
                "collections": 1,
                "datasets": len(engine.collection.datasets),
                "documents": engine.index.doc_count,
                "vocabulary": len(engine.model),
            },
        }

    @app.get("/v1/collections")
    async def collections():
        return [engine.collection.id]

    @app.get("/v1/collections/{collection_id}/datasets")
    async def datasets(collection_id: str):
        if collection_id != engine.collection.id:
            return error(404, "not_found", f"unknown collection {collection_id!r}")
        out = []
        for name, dataset in engine.collection.datasets.items():
            starts = [s.years[0] for s in dataset.series.values() if s.years]
            ends = [s.years[-1] for s in dataset.series.values() if s.years]
            out.append({
                "name": name,
                "keys": list(dataset.series),
                "year_min": min(starts) if starts else None,
                "year_max": max(ends) if ends else None,
            })
        return out

    @app.get("/v1/series")
    async def series(dataset: str, key: str):
        ds = engine.collection.datasets.get(dataset.strip().lower())
        if ds is None:
            return error(404, "not_found", f"unknown dataset {dataset!r}")
        s = ds.series.get(key.strip().lower())
        if s is None:
            return error(404, "not_found", f"unknown key {key!r} in {dataset!r}")
        return {"dataset": ds.name, "key": s.key,
                "years": list(s.years), "values": list(s.values)}

    @app.post("/v1/convert")
    async def convert(body: SelectionBody):
        outcome = engine.convert(to_selection(body))
        return {
            "ir_text": outcome.ir_text,
            "es_query": outcome.es_text,
            "trend": outcome.trend.value if outcome.trend else None,
            "pattern": outcome.pattern.value if outcome.pattern else None,
            "pf": outcome.pf,
        }

    @app.post("/v1/query")
    async def query(body: QueryBody):
        outcome = engine.query(
            to_selection(body),
            top_k=body.top_k,
            text_mode=body.text_mode,
            pattern_method=body.pattern_method,
            backend=body.backend,
        )
        pattern_block = None
        if outcome.pattern_suggestions is not None:
            keys_ranking, datasets_ranking = outcome.pattern_suggestions
            pattern_block = {"keys": _ranking_json(keys_ranking),
                             "datasets": _ranking_json(datasets_ranking)}
        return {
            "ir_text": outcome.conversion.ir_text,
            "es_query": outcome.conversion.es_text,
            "trend": outcome.conversion.trend.value if outcome.conversion.trend else None,
            "pattern": outcome.conversion.pattern.value if outcome.conversion.pattern else None,
            "pf": outcome.conversion.pf,
            "documents": [{"doc_id": hit.doc_id, "score": hit.score,
                           "snippet": hit.snippet,
                           "title": engine.documents[hit.doc_id].title
                           if hit.doc_id in engine.documents else None,
                           "url": engine.documents[hit.doc_id].url
                           if hit.doc_id in engine.documents else None}
                          for hit in outcome.documents],
            "per_document_suggestions": [
                {"datasets": _ranking_json(ds), "keys": _ranking_json(ks)}
                for ds, ks in outcome.per_document_suggestions],
            "pattern_suggestions": pattern_block,
        }

    @app.post("/v1/stability")
    async def stability_start(body: StabilityBody):
        if body.window % 2 == 0:
            raise InvalidRangeError("window must be odd")
        job_id = jobs.create()

        def work():
            try:
                report = engine.stability_report(top_k=body.top_k,
                                                 top_n=body.top_n,
                                                 window=body.window)
                jobs.finish(job_id, report_to_json(report), None)
            except Exception as exc:  # job must always settle
                jobs.finish(job_id, None, str(exc))

        threading.Thread(target=work, daemon=True).start()
        return {"job_id": job_id, "status": "running"}

    @app.get("/v1/stability/{job_id}")
    async def stability_status(job_id: str):
        state = jobs.get(job_id)
        if state is None:
            return error(404, "not_found", f"unknown job {job_id!r}")
        return {"job_id": job_id, **state}

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
