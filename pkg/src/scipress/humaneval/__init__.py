"""Best-Worst-Scaling campaign: task assembly, judgment persistence behind an
HTTP service, BWS scoring, and Krippendorff's alpha."""

from .scoring import (
    AgreementReport,
    BwsScore,
    alpha_nominal,
    bws_score,
    krippendorff_alpha,
    pooled_alpha,
)
from .store import JudgmentStore, record_judgment
from .tasks import SLOTS, BwsJudgment, BwsTask, EvalDimension, Selection, make_tasks

__all__ = [
    "AgreementReport",
    "BwsJudgment",
    "BwsScore",
    "BwsTask",
    "EvalDimension",
    "JudgmentStore",
    "SLOTS",
    "Selection",
    "alpha_nominal",
    "bws_score",
    "krippendorff_alpha",
    "make_tasks",
    "pooled_alpha",
    "record_judgment",
]
