"""Durable judgment persistence: an append-only JSON Lines log with
last-write-wins per (annotator, task).

No database: the log is diffable and the full history (including replaced
submissions) stays on disk.  Appends are serialized through a lock so the
HTTP service can accept concurrent submissions.
"""

from __future__ import annotations

import json
import logging
import os
import threading
from pathlib import Path
from typing import Iterable, Iterator

from ..errors import UnknownTask
from .tasks import BwsJudgment, BwsTask

logger = logging.getLogger(__name__)


class JudgmentStore:
    def __init__(self, path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self.path.parent.mkdir(parents=True, exist_ok=True)

    def append(self, judgment: BwsJudgment) -> bool:
        """Append a judgment; returns True when it replaces an earlier
        submission by the same (annotator, task)."""
        replaced = (judgment.annotator_id, judgment.task_id) in {
            (j.annotator_id, j.task_id) for j in self.iter_all()
        }
        line = json.dumps(judgment.to_json(), sort_keys=True, ensure_ascii=False)
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")
                fh.flush()
                os.fsync(fh.fileno())
        return replaced

    def iter_all(self) -> Iterator[BwsJudgment]:
        """Every record in append order, replaced submissions included."""
        if not self.path.exists():
            return
        with open(self.path, "r", encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    yield BwsJudgment.from_json(json.loads(line))

    def latest(self) -> list[BwsJudgment]:
        """Effective judgments: the last record per (annotator, task)."""
        current: dict[tuple[str, str], BwsJudgment] = {}
        for judgment in self.iter_all():
            current[(judgment.annotator_id, judgment.task_id)] = judgment
        return list(current.values())

    def completed_tasks(self, annotator_id: str) -> set[str]:
        return {
            j.task_id for j in self.latest() if j.annotator_id == annotator_id
        }


def record_judgment(
    store: JudgmentStore, judgment: BwsJudgment, tasks: Iterable[BwsTask]
) -> dict:
    """Validate a judgment against the campaign's tasks and persist it.

    Raises:
        UnknownTask: when the judgment references a task that was never
            assembled.
        InvalidSelection: when the selections violate the tie rules.
    """
    known = {task.task_id for task in tasks}
    if judgment.task_id not in known:
        raise UnknownTask(judgment.task_id)
    judgment.validate()
    replaced = store.append(judgment)
    if replaced:
        logger.info(
            "judgment for task %s by %s replaced an earlier submission",
            judgment.task_id,
            judgment.annotator_id,
        )
    return {"status": "stored", "replaced": replaced, "task_id": judgment.task_id}
