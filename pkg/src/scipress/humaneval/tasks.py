"""Task assembly and judgment data model for the best-worst-scaling study.

Annotators compare three anonymized system outputs per instance, choosing
the best and the worst on six dimensions.  Tie rules: per dimension the best
and worst sets must be non-empty and disjoint, except the full tie (all
slots selected as both best and worst) which expresses "no significant
difference"; picking two bests (or worsts) is a legal partial tie.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from ..corpus import AlignedInstance
from ..errors import InvalidSelection, MissingPrediction

SLOTS = ("A", "B", "C")


class EvalDimension(str, Enum):
    INFORMATIVENESS = "INFORMATIVENESS"
    NON_REDUNDANCY = "NON_REDUNDANCY"
    FACTUALITY = "FACTUALITY"
    READABILITY = "READABILITY"
    STYLE = "STYLE"
    USEFULNESS = "USEFULNESS"


DIMENSION_HELP = {
    EvalDimension.INFORMATIVENESS: "How well the summary captures important information from the document.",
    EvalDimension.NON_REDUNDANCY: "Whether the summary presents less repeated information.",
    EvalDimension.FACTUALITY: "Whether named entities (people, locations, organizations, numbers) are supported by the source document.",
    EvalDimension.READABILITY: "Whether the summary is written in simple terms.",
    EvalDimension.STYLE: "Whether the summary follows a journalistic writing style.",
    EvalDimension.USEFULNESS: "How useful the summary would be as a first draft of a press-release summary.",
}


@dataclass(frozen=True)
class SourceView:
    abstract: str
    introduction: str
    metadata: str


@dataclass(frozen=True)
class Candidate:
    slot: str
    system: str  # hidden from annotators, kept for scoring
    summary: str


@dataclass(frozen=True)
class BwsTask:
    task_id: str
    instance_id: str
    source_view: SourceView
    candidates: tuple[Candidate, ...]

    def __post_init__(self):
        if len(self.candidates) != len(SLOTS):
            raise ValueError(f"a task needs exactly {len(SLOTS)} candidates")
        if tuple(c.slot for c in self.candidates) != SLOTS:
            raise ValueError(f"candidate slots must be {SLOTS} in order")

    def system_of(self, slot: str) -> str:
        for candidate in self.candidates:
            if candidate.slot == slot:
                return candidate.system
        raise KeyError(slot)

    def annotator_payload(self) -> dict:
        """Wire form shown to annotators: system ids are never serialized."""
        return {
            "task_id": self.task_id,
            "instance_id": self.instance_id,
            "source": {
                "abstract": self.source_view.abstract,
                "introduction": self.source_view.introduction,
                "metadata": self.source_view.metadata,
            },
            "candidates": [
                {"slot": c.slot, "summary": c.summary} for c in self.candidates
            ],
            "dimensions": [
                {"name": d.value, "help": DIMENSION_HELP[d]} for d in EvalDimension
            ],
        }

    def to_json(self) -> dict:
        return {
            "task_id": self.task_id,
            "instance_id": self.instance_id,
            "source": {
                "abstract": self.source_view.abstract,
                "introduction": self.source_view.introduction,
                "metadata": self.source_view.metadata,
            },
            "candidates": [
                {"slot": c.slot, "system": c.system, "summary": c.summary}
                for c in self.candidates
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BwsTask":
        source = obj.get("source", {})
        return cls(
            task_id=obj["task_id"],
            instance_id=obj["instance_id"],
            source_view=SourceView(
                abstract=source.get("abstract", ""),
                introduction=source.get("introduction", ""),
                metadata=source.get("metadata", ""),
            ),
            candidates=tuple(
                Candidate(slot=c["slot"], system=c["system"], summary=c["summary"])
                for c in obj["candidates"]
            ),
        )


@dataclass(frozen=True)
class Selection:
    best: frozenset[str]
    worst: frozenset[str]


@dataclass(frozen=True)
class BwsJudgment:
    task_id: str
    annotator_id: str
    selections: Mapping[EvalDimension, Selection]
    timestamp: str = ""

    def validate(self, slots: Sequence[str] = SLOTS) -> None:
        """Enforce the tie rules.

        Raises:
            InvalidSelection: with the violated rule in the message.
        """
        slot_set = frozenset(slots)
        missing = [d.value for d in EvalDimension if d not in self.selections]
        if missing:
            raise InvalidSelection(f"missing dimensions: {', '.join(missing)}")
        for dimension, selection in self.selections.items():
            best, worst = selection.best, selection.worst
            if not best or not worst:
                raise InvalidSelection(
                    f"{dimension.value}: best and worst must be non-empty"
                )
            unknown = (best | worst) - slot_set
            if unknown:
                raise InvalidSelection(
                    f"{dimension.value}: unknown slots {sorted(unknown)}"
                )
            full_tie = best == worst == slot_set
            if best & worst and not full_tie:
                raise InvalidSelection(
                    f"{dimension.value}: best and worst overlap (only the "
                    "all-slots tie may select a system as both)"
                )

    def is_full_tie(self, dimension: EvalDimension, slots: Sequence[str] = SLOTS) -> bool:
        selection = self.selections[dimension]
        return selection.best == selection.worst == frozenset(slots)

    def to_json(self) -> dict:
        return {
            "task_id": self.task_id,
            "annotator_id": self.annotator_id,
            "selections": {
                d.value: {
                    "best": sorted(s.best),
                    "worst": sorted(s.worst),
                }
                for d, s in self.selections.items()
            },
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BwsJudgment":
        selections = {}
        for name, sel in obj.get("selections", {}).items():
            selections[EvalDimension(name)] = Selection(
                best=frozenset(sel.get("best", ())),
                worst=frozenset(sel.get("worst", ())),
            )
        return cls(
            task_id=obj["task_id"],
            annotator_id=obj["annotator_id"],
            selections=selections,
            timestamp=obj.get("timestamp", ""),
        )


def _metadata_text(instance: AlignedInstance) -> str:
    return "; ".join(
        f"{a.name} | {a.affiliation}".rstrip(" |") for a in instance.article.metadata
    )


def make_tasks(
    sample: Sequence[AlignedInstance],
    predictions: Mapping[str, Mapping[str, str]],
    seed: int = 0,
    systems: Sequence[str] | None = None,
) -> list[BwsTask]:
    """One task per sampled instance, with a seeded slot permutation.

    ``predictions`` maps system id -> instance id -> summary text.  Every
    instance must have an output from each of the (exactly three) systems.

    Raises:
        MissingPrediction: when a sampled instance lacks a system output.
    """
    system_ids = sorted(predictions) if systems is None else list(systems)
    if len(system_ids) != len(SLOTS):
        raise MissingPrediction(
            f"need exactly {len(SLOTS)} systems, got {len(system_ids)}"
        )
    tasks = []
    for instance in sample:
        for system in system_ids:
            if instance.id not in predictions.get(system, {}):
                raise MissingPrediction(
                    f"system {system!r} has no output for instance {instance.id!r}"
                )
        digest = hashlib.blake2b(
            f"{seed}\x1f{instance.id}".encode("utf-8"), digest_size=8
        ).digest()
        rng = np.random.default_rng(int.from_bytes(digest, "big"))
        order = rng.permutation(len(system_ids)).tolist()
        intro = instance.article.introduction()
        candidates = tuple(
            Candidate(
                slot=SLOTS[k],
                system=system_ids[order[k]],
                summary=predictions[system_ids[order[k]]][instance.id],
            )
            for k in range(len(SLOTS))
        )
        tasks.append(
            BwsTask(
                task_id=f"task-{instance.id}",
                instance_id=instance.id,
                source_view=SourceView(
                    abstract=instance.article.abstract.raw,
                    introduction="" if intro is None else intro.raw,
                    metadata=_metadata_text(instance),
                ),
                candidates=candidates,
            )
        )
    return tasks
