"""HTTP service: run tools over models, browse examples, and read the run
history. JSON in and out; result payloads are byte-stable so a stored run
re-serializes identically across restarts."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout
from pathlib import Path
from typing import Literal

from fastapi import FastAPI, Query, Response
from pydantic import BaseModel, Field

from . import corpus
from .diagnostics import ParseError
from .errors import AnalysisError
from .machine import SimulationError
from .profiles import MAX_SEED, PRESETS, Profile, UnknownPlaceholder
from .simulate import json_text
from .store import RunRecord, RunStore, chart_series, overview_rows, record_for
from .workbench import outline_source, run_tool

DEFAULT_TIMEOUT = 60.0


class ProfileIn(BaseModel):
    efficiency: int = Field(100, ge=1)
    availability: int = Field(100, ge=0, le=100)
    cases: int = Field(1, ge=1)
    sims: int = Field(1, ge=1)
    seed: int = Field(1, ge=0, le=MAX_SEED)

    def to_profile(self, tool: str) -> Profile:
        return Profile(
            tool=tool,
            efficiency_pct=self.efficiency,
            availability_pct=self.availability,
            conc_cases=self.cases,
            num_sims=self.sims,
            seed=self.seed,
        ).validated()


class RunRequest(BaseModel):
    source: str
    fileName: str = "model.rpl"
    tool: Literal["simulate", "peak", "time"]
    profile: ProfileIn = ProfileIn()


def _json_response(payload, status_code: int = 200) -> Response:
    return Response(content=json_text(payload), status_code=status_code,
                    media_type="application/json")


def create_app(store_path: str | os.PathLike | None = None,
               run_timeout: float = DEFAULT_TIMEOUT,
               ui_dir: str | os.PathLike | None = None) -> FastAPI:
    store = RunStore(store_path or os.environ.get("RPL_STORE", "runs.jsonl"))
    executor = ThreadPoolExecutor(max_workers=4)
    app = FastAPI(title="rplkit workbench", version="0.1.0")

    @app.get("/api/examples")
    def list_examples() -> Response:
        return _json_response(corpus.example_names())

    @app.get("/api/examples/{name}")
    def get_example(name: str) -> Response:
        try:
            source = corpus.load_example(name)
        except KeyError:
            return _json_response({"error": f"unknown example '{name}'"}, 404)
        return _json_response({"name": name, "source": source})

    @app.get("/api/presets")
    def list_presets() -> Response:
        return _json_response([
            {
                "name": p.name,
                "description": p.description,
                "tool": p.profile.tool,
                "profile": {
                    "efficiency": p.profile.efficiency_pct,
                    "availability": p.profile.availability_pct,
                    "cases": p.profile.conc_cases,
                    "sims": p.profile.num_sims,
                    "seed": p.profile.seed,
                },
            }
            for p in PRESETS
        ])

    @app.get("/api/outline")
    def get_outline(source: str = Query("")) -> Response:
        try:
            entries = outline_source(source)
        except UnknownPlaceholder as exc:
            return _json_response({"diagnostics": [
                {"line": exc.line, "column": 1, "severity": "error", "message": str(exc)}
            ]}, 400)
        except ParseError as exc:
            return _json_response({"diagnostics": [d.to_json() for d in exc.diagnostics]}, 400)
        return _json_response({"entries": [
            {"kind": kind, "name": name, "line": span.line, "column": span.column}
            for kind, name, span in entries
        ]})

    @app.post("/api/runs")
    def post_run(request: RunRequest) -> Response:
        profile = request.profile.to_profile(request.tool)
        future = executor.submit(run_tool, request.source, request.fileName, profile)
        try:
            payload = future.result(timeout=run_timeout)
        except FutureTimeout:
            return _json_response({"error": f"run exceeded {run_timeout:.0f}s"}, 504)
        except UnknownPlaceholder as exc:
            return _json_response({"diagnostics": [
                {"line": exc.line, "column": 1, "severity": "error", "message": str(exc)}
            ]}, 400)
        except ParseError as exc:
            return _json_response({"diagnostics": [d.to_json() for d in exc.diagnostics]}, 400)
        except (SimulationError, AnalysisError, ValueError) as exc:
            return _json_response({
                "error": str(exc),
                "context": {"tool": request.tool, "file": request.fileName,
                            "type": type(exc).__name__},
            }, 500)
        payload["execId"] = store.fresh_exec_id(payload["execId"])
        store.append(record_for(payload, request.tool, profile))
        return _json_response(payload, 201)

    @app.get("/api/runs")
    def list_runs() -> Response:
        rows = overview_rows(store.list())
        rows.reverse()  # newest first
        return _json_response(rows)

    @app.get("/api/runs/{exec_id}")
    def get_run(exec_id: str) -> Response:
        record: RunRecord | None = store.get(exec_id)
        if record is None:
            return _json_response({"error": f"unknown execution id '{exec_id}'"}, 404)
        return _json_response(record.payload)

    @app.get("/api/charts")
    def get_charts() -> Response:
        return _json_response(chart_series(store.list()))

    ui = Path(ui_dir) if ui_dir else None
    if ui and ui.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui, html=True), name="ui")
    return app


def serve(port: int, store_path: str | None = None, ui_dir: str | None = None) -> None:
    import uvicorn

    app = create_app(store_path=store_path, ui_dir=ui_dir)
    uvicorn.run(app, host="127.0.0.1", port=port)
