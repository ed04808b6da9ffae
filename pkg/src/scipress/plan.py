"""Input serialization, content plans, target serialization, output parsing,
and the positional distribution of rhetorical roles.

Serialization grammar (one line, single spaces between units):

    input  := "[METADATA]" author* labeled_sentence+
    author := "[AUTHOR]" <name> "|" <affiliation>
    labeled_sentence := "[" ROLE "]" <sentence text>
    target := "[PLAN]" group (" | " group)* "[SUMMARY]" <summary text>
    group  := role_token+          # distinct roles, first-mention order

Role tokens are the five abstract-discourse roles plus AUTHOR, rendered as
bracketed uppercase: "[BACKGROUND]", "[AUTHOR]", ...  The parser is tolerant:
unknown bracketed tokens inside a plan are dropped (and counted), and text
without the plan/summary markers comes back unchanged as plain summary.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

from .corpus import AuthorAffiliation, ScientificArticle, Sentence, TokenizedText
from .errors import EmptyCorpus, LabelMismatch, PlanMismatch


class RhetoricalRole(Enum):
    AUTHOR = "AUTHOR"
    BACKGROUND = "BACKGROUND"
    OBJECTIVE = "OBJECTIVE"
    METHODS = "METHODS"
    RESULTS = "RESULTS"
    CONCLUSIONS = "CONCLUSIONS"

    @property
    def token(self) -> str:
        return f"[{self.value}]"


METADATA_TOKEN = "[METADATA]"
AUTHOR_SEP = "[AUTHOR]"
PLAN_TOKEN = "[PLAN]"
SUMMARY_TOKEN = "[SUMMARY]"

_BRACKETED = re.compile(r"\[([A-Za-z_]+)\]")


@dataclass(frozen=True)
class LabeledDocument:
    """An article plus one rhetorical role per sentence of its serialized
    body (the abstract followed by the introduction)."""

    article: ScientificArticle
    sentence_labels: tuple[RhetoricalRole, ...]

    def body_sentences(self) -> list[str]:
        texts = [self.article.abstract]
        intro = self.article.introduction()
        if intro is not None and not intro.is_empty:
            texts.append(intro)
        return [t.sentence_text(i) for t in texts for i in range(t.n_sentences)]


@dataclass(frozen=True)
class RhetoricalPlan:
    """Ordered groups of roles, one group per target summary sentence.
    Roles within a group are distinct and keep first-mention order."""

    groups: tuple[tuple[RhetoricalRole, ...], ...]

    def __post_init__(self):
        if not self.groups:
            raise ValueError("plan must have at least one group")
        for group in self.groups:
            if not group:
                raise ValueError("plan groups must be non-empty")
            if len(set(group)) != len(group):
                raise ValueError("roles within a group must be distinct")


@dataclass(frozen=True)
class SerializedPair:
    input: str
    target: str


@dataclass(frozen=True)
class ParsedGeneration:
    plan: Optional[RhetoricalPlan]
    summary: str
    dropped_tokens: int = 0
    warnings: tuple[str, ...] = ()


def serialize_input(
    doc: LabeledDocument,
    metadata: Sequence[AuthorAffiliation] | None = None,
    lowercase: bool = False,
) -> str:
    """Render the model input: metadata sentinel, author block, then each
    sentence prefixed by its role token.

    Raises:
        LabelMismatch: when label and sentence counts differ.
    """
    sentences = doc.body_sentences()
    if len(sentences) != len(doc.sentence_labels):
        raise LabelMismatch(
            f"{len(doc.sentence_labels)} labels for {len(sentences)} sentences"
        )
    authors = doc.article.metadata if metadata is None else tuple(metadata)
    parts = [METADATA_TOKEN]
    for author in authors:
        parts.append(f"{AUTHOR_SEP} {author.name} | {author.affiliation}".rstrip())
    for label, sentence in zip(doc.sentence_labels, sentences):
        parts.append(f"{label.token} {_squash(sentence)}")
    rendered = " ".join(parts)
    return rendered.lower() if lowercase else rendered


def serialize_target(plan: RhetoricalPlan, summary: TokenizedText) -> str:
    """Render "[PLAN] <groups joined by ' | '> [SUMMARY] <text>".

    Raises:
        PlanMismatch: when group count differs from the sentence count.
    """
    if len(plan.groups) != summary.n_sentences:
        raise PlanMismatch(
            f"{len(plan.groups)} plan groups for {summary.n_sentences} sentences"
        )
    groups = " | ".join(" ".join(role.token for role in group) for group in plan.groups)
    text = " ".join(_squash(summary.sentence_text(i)) for i in range(summary.n_sentences))
    return f"{PLAN_TOKEN} {groups} {SUMMARY_TOKEN} {text}"


def _squash(text: str) -> str:
    return " ".join(text.split())


def parse_generated(text: str) -> ParsedGeneration:
    """Split generated text into plan and summary; never hard-fails.

    Unknown bracketed tokens and stray words inside the plan section are
    dropped and counted; degenerate groups are dropped with a warning.  Text
    without the expected markers is returned whole as the summary.
    """
    plan_pos = text.find(PLAN_TOKEN)
    summary_pos = text.find(SUMMARY_TOKEN)
    if plan_pos < 0 or summary_pos < 0 or summary_pos < plan_pos:
        return ParsedGeneration(plan=None, summary=text, dropped_tokens=0)

    plan_region = text[plan_pos + len(PLAN_TOKEN) : summary_pos]
    summary = text[summary_pos + len(SUMMARY_TOKEN) :].strip()

    dropped = 0
    warnings: list[str] = []
    groups: list[tuple[RhetoricalRole, ...]] = []
    for chunk in plan_region.split("|"):
        roles: list[RhetoricalRole] = []
        consumed_spans: list[tuple[int, int]] = []
        for match in _BRACKETED.finditer(chunk):
            consumed_spans.append(match.span())
            name = match.group(1).upper()
            try:
                role = RhetoricalRole(name)
            except ValueError:
                dropped += 1
                warnings.append(f"dropped unknown plan token [{match.group(1)}]")
                continue
            if role in roles:
                dropped += 1
                warnings.append(f"dropped duplicate role {role.token} in group")
                continue
            roles.append(role)
        stray = _strip_spans(chunk, consumed_spans).split()
        if stray:
            dropped += len(stray)
            warnings.append(f"dropped stray plan text {' '.join(stray)!r}")
        if roles:
            groups.append(tuple(roles))
        else:
            warnings.append("dropped empty plan group")
    plan = RhetoricalPlan(groups=tuple(groups)) if groups else None
    if plan is None:
        warnings.append("plan section contained no known roles")
    return ParsedGeneration(
        plan=plan,
        summary=summary,
        dropped_tokens=dropped,
        warnings=tuple(warnings),
    )


def _strip_spans(text: str, spans: Sequence[tuple[int, int]]) -> str:
    out = []
    last = 0
    for a, b in spans:
        out.append(text[last:a])
        last = b
    out.append(text[last:])
    return "".join(out)


# ---------------------------------------------------------------------------
# Heuristic fallback labeler

_CUE_RULES: tuple[tuple[str, RhetoricalRole], ...] = (
    ("we propose", RhetoricalRole.OBJECTIVE),
    ("we present", RhetoricalRole.OBJECTIVE),
    ("we introduce", RhetoricalRole.OBJECTIVE),
    ("this paper proposes", RhetoricalRole.OBJECTIVE),
    ("this paper presents", RhetoricalRole.OBJECTIVE),
    ("we aim", RhetoricalRole.OBJECTIVE),
    ("our goal", RhetoricalRole.OBJECTIVE),
    ("results show", RhetoricalRole.RESULTS),
    ("we achieved", RhetoricalRole.RESULTS),
    ("we achieve", RhetoricalRole.RESULTS),
    ("experiments show", RhetoricalRole.RESULTS),
    ("we observe", RhetoricalRole.RESULTS),
    ("outperforms", RhetoricalRole.RESULTS),
    ("we conclude", RhetoricalRole.CONCLUSIONS),
    ("we suggest", RhetoricalRole.CONCLUSIONS),
    ("in conclusion", RhetoricalRole.CONCLUSIONS),
    ("findings suggest", RhetoricalRole.CONCLUSIONS),
    ("we use", RhetoricalRole.METHODS),
    ("we train", RhetoricalRole.METHODS),
    ("we apply", RhetoricalRole.METHODS),
    ("we evaluate", RhetoricalRole.METHODS),
    ("we implement", RhetoricalRole.METHODS),
)


def heuristic_label(
    sentence: Sentence | Sequence[str] | str,
    position: float,
    metadata: Iterable[AuthorAffiliation] = (),
) -> RhetoricalRole:
    """Cue-phrase rules first (author/affiliation mention wins, then verb
    cues), else a position prior: first quartile BACKGROUND, last quartile
    CONCLUSIONS, METHODS in between.  Deterministic."""
    if isinstance(sentence, Sentence):
        text = " ".join(sentence.tokens)
    elif isinstance(sentence, str):
        text = sentence
    else:
        text = " ".join(sentence)
    folded = text.casefold()

    for author in metadata:
        if author.name and author.name.casefold() in folded:
            return RhetoricalRole.AUTHOR
        if author.affiliation and author.affiliation.casefold() in folded:
            return RhetoricalRole.AUTHOR
    for cue, role in _CUE_RULES:
        if cue in folded:
            return role
    if position < 0.25:
        return RhetoricalRole.BACKGROUND
    if position > 0.75:
        return RhetoricalRole.CONCLUSIONS
    return RhetoricalRole.METHODS


def label_document(
    article: ScientificArticle, labels: Sequence[str] | None = None
) -> LabeledDocument:
    """Attach externally supplied labels, or fall back to the heuristic.

    Raises:
        LabelMismatch: when an external label list has the wrong length or
            an unknown label name.
    """
    texts = [article.abstract]
    intro = article.introduction()
    if intro is not None and not intro.is_empty:
        texts.append(intro)
    sentences = [t.sentences[i] for t in texts for i in range(t.n_sentences)]

    if labels is not None:
        if len(labels) != len(sentences):
            raise LabelMismatch(
                f"{len(labels)} labels for {len(sentences)} sentences "
                f"of article {article.id!r}"
            )
        try:
            roles = tuple(RhetoricalRole(label) for label in labels)
        except ValueError as exc:
            raise LabelMismatch(f"unknown label: {exc}")
        return LabeledDocument(article=article, sentence_labels=roles)

    total = len(sentences)
    roles = tuple(
        heuristic_label(s, i / max(total - 1, 1), article.metadata)
        for i, s in enumerate(sentences)
    )
    return LabeledDocument(article=article, sentence_labels=roles)


# ---------------------------------------------------------------------------
# Positional distribution (discourse-tag analysis)


def plan_distribution(
    label_sequences: Iterable[Sequence[RhetoricalRole | str]],
    bins: int = 10,
) -> dict[RhetoricalRole, list[float]]:
    """Histogram of each role over relative sentence position.

    Sentence k of an m-sentence summary lands in bin floor(bins*k/m); each
    bin is normalized across roles, so non-empty bins sum to one.

    Raises:
        EmptyCorpus: when no sequence is given.
    """
    if bins < 1:
        raise ValueError("bins must be >= 1")
    counts = {role: [0] * bins for role in RhetoricalRole}
    seen = False
    for sequence in label_sequences:
        if not sequence:
            continue
        seen = True
        m = len(sequence)
        for k, label in enumerate(sequence):
            role = label if isinstance(label, RhetoricalRole) else RhetoricalRole(label)
            counts[role][bins * k // m] += 1
    if not seen:
        raise EmptyCorpus("plan_distribution needs at least one labeled summary")
    totals = [sum(counts[role][b] for role in RhetoricalRole) for b in range(bins)]
    return {
        role: [
            counts[role][b] / totals[b] if totals[b] else 0.0 for b in range(bins)
        ]
        for role in RhetoricalRole
    }


def mean_relative_position(
    label_sequences: Iterable[Sequence[RhetoricalRole | str]],
    role: RhetoricalRole,
) -> float:
    """Mean relative position (0..1) at which ``role`` occurs; nan-free:
    returns 1.0 when the role never occurs."""
    total = 0.0
    count = 0
    for sequence in label_sequences:
        m = len(sequence)
        if not m:
            continue
        for k, label in enumerate(sequence):
            r = label if isinstance(label, RhetoricalRole) else RhetoricalRole(label)
            if r is role:
                total += k / max(m - 1, 1)
                count += 1
    return total / count if count else 1.0
