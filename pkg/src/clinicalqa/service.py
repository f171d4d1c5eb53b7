"""HTTP face of the pipeline.

Endpoints:

    POST /ask            {"question": str, "top_k": int?} -> answer payload
    GET  /docs/{doc_id}  full abstract with sentence boundaries
    GET  /health         liveness + corpus size + compute backend
    POST /admin/reindex  rebuild index/models from the configured files

Requests read from an immutable pipeline snapshot grabbed at request start;
reindex builds a fresh snapshot under a lock and swaps it in atomically, so
in-flight queries finish against the snapshot they started with.
"""

from __future__ import annotations

import threading

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from clinicalqa.accel import BACKEND
from clinicalqa.config import PipelineConfig
from clinicalqa.pipeline import Pipeline, build_all, load_pipeline


class AskRequest(BaseModel):
    question: str
    top_k: int | None = Field(default=None, ge=1)


def create_app(config: PipelineConfig, pipeline: Pipeline | None = None) -> FastAPI:
    """Build the application; loads persisted artifacts unless a pipeline is
    injected (tests pass one in)."""
    app = FastAPI(title="clinicalqa", docs_url=None, redoc_url=None)
    app.state.pipeline = pipeline if pipeline is not None else load_pipeline(config)
    app.state.config = config
    app.state.reindex_lock = threading.Lock()

    @app.post("/ask")
    def ask(body: AskRequest) -> dict:
        snapshot: Pipeline = app.state.pipeline
        return snapshot.ask(body.question, top_k=body.top_k)

    @app.get("/docs/{doc_id}")
    def get_doc(doc_id: str) -> dict:
        snapshot: Pipeline = app.state.pipeline
        payload = snapshot.doc_payload(doc_id)
        if payload is None:
            raise HTTPException(status_code=404, detail=f"no document with id {doc_id!r}")
        return payload

    @app.get("/health")
    def health() -> dict:
        snapshot: Pipeline = app.state.pipeline
        return {
            "status": "ok",
            "docs": len(snapshot.docs),
            "evidence_docs": snapshot.retrieval_bundle.phrase.n_docs,
            "backend": BACKEND,
        }

    @app.post("/admin/reindex")
    def reindex() -> dict:
        with app.state.reindex_lock:
            fresh = build_all(app.state.config)
            app.state.pipeline = fresh
        return {
            "status": "reindexed",
            "docs": len(fresh.docs),
            "evidence_docs": fresh.retrieval_bundle.phrase.n_docs,
        }

    return app
