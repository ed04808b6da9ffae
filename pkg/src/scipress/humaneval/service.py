"""HTTP service for the annotation campaign.

JSON endpoints consumed by the annotator front end:

* ``GET /api/tasks?annotator=ID`` - task list (annotator view, hidden system
  ids stripped) with per-annotator progress;
* ``GET /api/tasks/{task_id}`` - one task;
* ``POST /api/judgments`` - submit a judgment (201 stored, 404 unknown task,
  422 tie-rule violation);
* ``GET /api/results`` - score table plus per-dimension and pooled alpha.

Static assets (the browser UI) are served from a configurable directory.
Environment: ``SCIPRESS_PORT`` (default 8477), ``SCIPRESS_STORE``.
"""

from __future__ import annotations

import datetime as _dt
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from ..errors import InsufficientData, InvalidSelection, UnknownTask
from .scoring import krippendorff_alpha, pooled_alpha, bws_score, score_rows
from .store import JudgmentStore, record_judgment
from .tasks import BwsJudgment, BwsTask, EvalDimension, Selection

DEFAULT_PORT = 8477


class SelectionBody(BaseModel):
    best: list[str] = Field(default_factory=list)
    worst: list[str] = Field(default_factory=list)


class JudgmentBody(BaseModel):
    task_id: str
    annotator_id: str
    selections: dict[str, SelectionBody]
    timestamp: Optional[str] = None


def _to_judgment(body: JudgmentBody) -> BwsJudgment:
    selections = {}
    for name, selection in body.selections.items():
        try:
            dimension = EvalDimension(name)
        except ValueError:
            raise InvalidSelection(f"unknown dimension {name!r}")
        selections[dimension] = Selection(
            best=frozenset(selection.best), worst=frozenset(selection.worst)
        )
    timestamp = body.timestamp or _dt.datetime.now(_dt.timezone.utc).isoformat()
    return BwsJudgment(
        task_id=body.task_id,
        annotator_id=body.annotator_id,
        selections=selections,
        timestamp=timestamp,
    )


def create_app(
    tasks: list[BwsTask],
    store: JudgmentStore,
    static_dir: str | Path | None = None,
) -> FastAPI:
    app = FastAPI(title="scipress annotation service")
    by_id = {task.task_id: task for task in tasks}

    @app.get("/api/tasks")
    def list_tasks(annotator: str = ""):
        done = store.completed_tasks(annotator) if annotator else set()
        return {
            "tasks": [
                {**task.annotator_payload(), "done": task.task_id in done}
                for task in tasks
            ],
            "progress": {"done": len(done & set(by_id)), "total": len(tasks)},
        }

    @app.get("/api/tasks/{task_id}")
    def get_task(task_id: str):
        task = by_id.get(task_id)
        if task is None:
            raise HTTPException(status_code=404, detail=f"unknown task {task_id!r}")
        return task.annotator_payload()

    @app.post("/api/judgments", status_code=201)
    def post_judgment(body: JudgmentBody):
        try:
            judgment = _to_judgment(body)
            return record_judgment(store, judgment, tasks)
        except UnknownTask as exc:
            raise HTTPException(status_code=404, detail=f"unknown task {exc}")
        except InvalidSelection as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.get("/api/results")
    def results():
        judgments = store.latest()
        if not judgments:
            return {"scores": [], "alpha": {}, "n_judgments": 0}
        scores = bws_score(judgments, tasks)
        alpha: dict[str, Optional[float]] = {}
        for dimension in EvalDimension:
            try:
                alpha[dimension.value] = krippendorff_alpha(
                    judgments, dimension
                ).alpha
            except InsufficientData:
                alpha[dimension.value] = None
        try:
            alpha["POOLED"] = pooled_alpha(judgments).alpha
        except InsufficientData:
            alpha["POOLED"] = None
        return {
            "scores": score_rows(scores),
            "alpha": alpha,
            "n_judgments": len(judgments),
        }

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
