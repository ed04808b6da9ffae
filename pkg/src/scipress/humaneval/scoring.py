"""Best-worst scores and chance-corrected agreement.

A system's score on a dimension is the proportion of times it was selected
best minus the proportion selected worst, over every task x annotator
appearance, so it lies in [-1, 1] and full ties cancel to zero.

Agreement is nominal Krippendorff's alpha over units of (task, slot): each
annotator assigns the unit BEST, WORST or NEITHER on the dimension under
analysis (a full tie maps every slot to NEITHER, since it expresses
indifference).  alpha = 1 - D_o/D_e on the coincidence matrix.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from ..errors import EmptyJudgments, InsufficientData, UnknownTask
from .tasks import SLOTS, BwsJudgment, BwsTask, EvalDimension

BEST = "BEST"
WORST = "WORST"
NEITHER = "NEITHER"


@dataclass(frozen=True)
class BwsScore:
    system: str
    dimension: EvalDimension
    n_best: int
    n_worst: int
    n_shown: int

    @property
    def score(self) -> float:
        return (self.n_best - self.n_worst) / self.n_shown


@dataclass(frozen=True)
class AgreementReport:
    alpha: float
    n_units: int
    n_annotators: int


def bws_score(
    judgments: Sequence[BwsJudgment], tasks: Iterable[BwsTask]
) -> dict[tuple[str, EvalDimension], BwsScore]:
    """Score table keyed by (system, dimension).

    Raises:
        EmptyJudgments: when no judgments are given.
        UnknownTask: when a judgment references an unknown task.
    """
    if not judgments:
        raise EmptyJudgments("no judgments to score")
    by_id = {task.task_id: task for task in tasks}
    n_best: Counter = Counter()
    n_worst: Counter = Counter()
    n_shown: Counter = Counter()
    for judgment in judgments:
        task = by_id.get(judgment.task_id)
        if task is None:
            raise UnknownTask(judgment.task_id)
        for dimension, selection in judgment.selections.items():
            for candidate in task.candidates:
                key = (candidate.system, dimension)
                n_shown[key] += 1
                if candidate.slot in selection.best:
                    n_best[key] += 1
                if candidate.slot in selection.worst:
                    n_worst[key] += 1
    return {
        key: BwsScore(
            system=key[0],
            dimension=key[1],
            n_best=n_best[key],
            n_worst=n_worst[key],
            n_shown=shown,
        )
        for key, shown in sorted(n_shown.items(), key=lambda kv: (kv[0][0], kv[0][1].value))
    }


def slot_value(
    judgment: BwsJudgment, dimension: EvalDimension, slot: str
) -> str:
    """The 3-way nominal value one judgment assigns to one (task, slot)."""
    if judgment.is_full_tie(dimension):
        return NEITHER
    selection = judgment.selections[dimension]
    if slot in selection.best:
        return BEST
    if slot in selection.worst:
        return WORST
    return NEITHER


def alpha_nominal(unit_values: Iterable[Sequence[Hashable]]) -> float:
    """Nominal Krippendorff's alpha from per-unit value lists.

    Units with fewer than two values are ignored (nothing to pair).  Returns
    1.0 when observed disagreement is zero (including the degenerate
    all-one-category case where expected disagreement is also zero).
    """
    value_counts: Counter = Counter()
    pairable = 0
    d_o_total = 0.0
    for values in unit_values:
        m = len(values)
        if m < 2:
            continue
        pairable += m
        value_counts.update(values)
        disagreements = 0
        for i in range(m):
            for j in range(m):
                if i != j and values[i] != values[j]:
                    disagreements += 1
        d_o_total += disagreements / (m - 1)
    if pairable == 0:
        raise InsufficientData("no unit carries two or more ratings")
    d_o = d_o_total / pairable
    n = pairable
    same = sum(c * c for c in value_counts.values())
    d_e = (n * n - same) / (n * (n - 1))
    if d_e == 0.0:
        return 1.0
    return 1.0 - d_o / d_e


def _unit_table(
    judgments: Sequence[BwsJudgment],
    dimensions: Sequence[EvalDimension],
    slots: Sequence[str],
) -> dict[tuple, list[str]]:
    units: dict[tuple, list[str]] = defaultdict(list)
    for judgment in judgments:
        for dimension in dimensions:
            if dimension not in judgment.selections:
                continue
            for slot in slots:
                units[(judgment.task_id, slot, dimension)].append(
                    slot_value(judgment, dimension, slot)
                )
    return units


def krippendorff_alpha(
    judgments: Sequence[BwsJudgment],
    dimension: Optional[EvalDimension],
    slots: Sequence[str] = SLOTS,
) -> AgreementReport:
    """Agreement over (task, slot) units for one dimension, or pooled over
    all six when ``dimension`` is None.

    Raises:
        InsufficientData: fewer than two annotators, or no unit with two or
            more ratings.
    """
    annotators = {j.annotator_id for j in judgments}
    if len(annotators) < 2:
        raise InsufficientData("agreement needs at least two annotators")
    dimensions = list(EvalDimension) if dimension is None else [dimension]
    units = _unit_table(judgments, dimensions, slots)
    alpha = alpha_nominal(units.values())
    return AgreementReport(
        alpha=alpha,
        n_units=sum(1 for v in units.values() if len(v) >= 2),
        n_annotators=len(annotators),
    )


def pooled_alpha(
    judgments: Sequence[BwsJudgment], slots: Sequence[str] = SLOTS
) -> AgreementReport:
    return krippendorff_alpha(judgments, None, slots)


def score_rows(
    scores: Mapping[tuple[str, EvalDimension], BwsScore]
) -> list[dict]:
    """Stable row order (system, then dimension declaration order) for
    CSV/JSON export."""
    dim_order = {d: i for i, d in enumerate(EvalDimension)}
    rows = []
    for key in sorted(scores, key=lambda k: (k[0], dim_order[k[1]])):
        s = scores[key]
        rows.append(
            {
                "system": s.system,
                "dimension": s.dimension.value,
                "score": s.score,
                "n_best": s.n_best,
                "n_worst": s.n_worst,
                "n_shown": s.n_shown,
            }
        )
    return rows
