"""Extractive comparison systems: Lead, Random, Extractive Oracle, LexRank,
TextRank, plus the abstract-as-summary upper bound.

All systems select sentences from the source document (the abstract followed
by the introduction) and emit them in document order.  The centrality systems
share one power-iteration core: the sentence-similarity matrix (zero
diagonal) is row-normalized to a stochastic matrix, dangling rows are
replaced by the uniform distribution, and scores are the stationary vector
of the damped walk, so they are non-negative and sum to one.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .corpus import AlignedInstance, TokenizedText
from .errors import EmptyDoc, EmptyReference
from .metrics import rouge_n


@dataclass(frozen=True)
class BaselineConfig:
    n: int = 5
    seed: int = 0
    damping: float = 0.85
    convergence_eps: float = 1e-6
    max_iters: int = 200

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0.0 < self.damping < 1.0:
            raise ValueError("damping must be in (0, 1)")


@dataclass(frozen=True)
class ExtractiveSummary:
    sentence_indices: tuple[int, ...]
    text: str
    scores: tuple[float, ...] = ()
    degenerate_graph: bool = False

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.sentence_indices, self.sentence_indices[1:])):
            raise ValueError("sentence indices must be strictly increasing")


def _summary_from_indices(
    doc: TokenizedText,
    indices: Sequence[int],
    scores: Sequence[float] = (),
    degenerate_graph: bool = False,
) -> ExtractiveSummary:
    ordered = tuple(sorted(indices))
    text = " ".join(doc.sentence_text(i) for i in ordered)
    return ExtractiveSummary(
        sentence_indices=ordered,
        text=text,
        scores=tuple(scores),
        degenerate_graph=degenerate_graph,
    )


def _require_doc(doc: TokenizedText):
    if doc.is_empty:
        raise EmptyDoc("document has no sentences")


def derive_seed(seed: int, instance_id: str) -> int:
    """Stable per-instance seed so corpus runs parallelize reproducibly."""
    digest = hashlib.blake2b(
        f"{seed}\x1f{instance_id}".encode("utf-8"), digest_size=8
    ).digest()
    return int.from_bytes(digest, "big")


def lead(doc: TokenizedText, cfg: BaselineConfig) -> ExtractiveSummary:
    """The first n sentences."""
    _require_doc(doc)
    k = min(cfg.n, doc.n_sentences)
    return _summary_from_indices(doc, range(k))


def random_baseline(doc: TokenizedText, cfg: BaselineConfig) -> ExtractiveSummary:
    """A uniform sample of n sentences without replacement, in document
    order.  Deterministic given cfg.seed."""
    _require_doc(doc)
    k = min(cfg.n, doc.n_sentences)
    rng = np.random.default_rng(cfg.seed)
    picked = rng.choice(doc.n_sentences, size=k, replace=False)
    return _summary_from_indices(doc, picked.tolist())


def _oracle_objective(
    selected_tokens: list[str], reference_tokens: list[str]
) -> float:
    r1 = rouge_n(selected_tokens, reference_tokens, 1).f1
    try:
        r2 = rouge_n(selected_tokens, reference_tokens, 2).f1
    except Exception:
        r2 = 0.0
    return r1 + r2


def ext_oracle(
    doc: TokenizedText,
    reference: TokenizedText,
    cfg: BaselineConfig,
    pad: bool = False,
) -> ExtractiveSummary:
    """Greedy upper bound: add, one at a time, the sentence that most
    improves ROUGE-1 f1 + ROUGE-2 f1 of the selection against the reference
    (lowest index on ties); stop at n sentences or when nothing improves.

    With ``pad=True`` selection continues to exactly n sentences even when
    the objective stops improving.
    """
    _require_doc(doc)
    if reference.is_empty:
        raise EmptyReference("reference has no sentences")

    reference_tokens = [t.casefold() for t in reference.tokens()]
    sentence_tokens = [
        [t.casefold() for t in s.tokens] for s in doc.sentences
    ]

    selected: list[int] = []
    best_objective = 0.0
    while len(selected) < min(cfg.n, doc.n_sentences):
        best_gain_objective = None
        best_index = -1
        for i in range(doc.n_sentences):
            if i in selected:
                continue
            tokens: list[str] = []
            for j in sorted(selected + [i]):
                tokens.extend(sentence_tokens[j])
            objective = _oracle_objective(tokens, reference_tokens)
            if best_gain_objective is None or objective > best_gain_objective:
                best_gain_objective = objective
                best_index = i
        if best_gain_objective is None:
            break
        if best_gain_objective <= best_objective and not pad:
            break
        selected.append(best_index)
        best_objective = max(best_objective, best_gain_objective)
    if not selected:
        # zero overlap everywhere: keep the first sentence rather than emit
        # an empty summary that downstream scoring would reject
        selected = [0]
    return _summary_from_indices(doc, selected)


# ---------------------------------------------------------------------------
# Centrality systems


def power_iteration_scores(similarity: np.ndarray, cfg: BaselineConfig) -> np.ndarray:
    """Stationary vector of the damped random walk on a similarity graph.

    Rows are normalized to stochastic; all-zero rows jump uniformly.  Raises
    ValueError (callers fall back to lead) when the whole matrix is zero.
    """
    n = similarity.shape[0]
    if n == 1:
        return np.ones(1)
    if not np.any(similarity):
        raise ValueError("similarity matrix is all zero")
    transition = np.array(similarity, dtype=float)
    row_sums = transition.sum(axis=1)
    for i in range(n):
        if row_sums[i] > 0.0:
            transition[i] /= row_sums[i]
        else:
            transition[i] = 1.0 / n
    scores = np.full(n, 1.0 / n)
    restart = (1.0 - cfg.damping) / n
    for _ in range(cfg.max_iters):
        updated = restart + cfg.damping * (transition.T @ scores)
        if np.abs(updated - scores).sum() < cfg.convergence_eps:
            scores = updated
            break
        scores = updated
    return scores


def _select_top(doc: TokenizedText, scores: np.ndarray, cfg: BaselineConfig):
    k = min(cfg.n, doc.n_sentences)
    # stable sort on (-score, index): ties resolve to the lower index
    order = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
    return sorted(order[:k])


def _tfidf_vectors(sentence_tokens: list[list[str]]) -> list[dict[str, float]]:
    n = len(sentence_tokens)
    df: dict[str, int] = {}
    for tokens in sentence_tokens:
        for term in set(tokens):
            df[term] = df.get(term, 0) + 1
    # smoothed idf keeps ubiquitous terms from zeroing vectors
    idf = {t: math.log((1 + n) / (1 + d)) + 1.0 for t, d in df.items()}
    vectors = []
    for tokens in sentence_tokens:
        counts: dict[str, float] = {}
        for term in tokens:
            counts[term] = counts.get(term, 0.0) + 1.0
        vectors.append({t: c * idf[t] for t, c in counts.items()})
    return vectors


def _cosine(u: dict[str, float], v: dict[str, float]) -> float:
    if len(v) < len(u):
        u, v = v, u
    dot = sum(weight * v.get(term, 0.0) for term, weight in u.items())
    if dot == 0.0:
        return 0.0
    norm_u = math.sqrt(sum(w * w for w in u.values()))
    norm_v = math.sqrt(sum(w * w for w in v.values()))
    return dot / (norm_u * norm_v)


def lexrank(doc: TokenizedText, cfg: BaselineConfig) -> ExtractiveSummary:
    """Continuous LexRank: cosine similarity of TF-IDF sentence vectors
    (IDF over the document's own sentences), scored by the damped walk."""
    _require_doc(doc)
    sentence_tokens = [[t.casefold() for t in s.tokens] for s in doc.sentences]
    vectors = _tfidf_vectors(sentence_tokens)
    n = len(vectors)
    similarity = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            similarity[i, j] = similarity[j, i] = _cosine(vectors[i], vectors[j])
    return _centrality_summary(doc, similarity, cfg)


def textrank_similarity(tokens_a: Sequence[str], tokens_b: Sequence[str]) -> float:
    """Shared distinct case-folded tokens over log(|a|) + log(|b|) (natural
    logs); zero when either sentence has one token or fewer."""
    if len(tokens_a) <= 1 or len(tokens_b) <= 1:
        return 0.0
    shared = len(
        {t.casefold() for t in tokens_a} & {t.casefold() for t in tokens_b}
    )
    return shared / (math.log(len(tokens_a)) + math.log(len(tokens_b)))


def textrank(doc: TokenizedText, cfg: BaselineConfig) -> ExtractiveSummary:
    """TextRank with the word-overlap similarity, same walk as lexrank."""
    _require_doc(doc)
    sentences = [s.tokens for s in doc.sentences]
    n = len(sentences)
    similarity = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            similarity[i, j] = similarity[j, i] = textrank_similarity(
                sentences[i], sentences[j]
            )
    return _centrality_summary(doc, similarity, cfg)


def _centrality_summary(
    doc: TokenizedText, similarity: np.ndarray, cfg: BaselineConfig
) -> ExtractiveSummary:
    try:
        scores = power_iteration_scores(similarity, cfg)
    except ValueError:
        # no shared vocabulary anywhere: degenerate graph, fall back to lead
        fallback = lead(doc, cfg)
        return ExtractiveSummary(
            sentence_indices=fallback.sentence_indices,
            text=fallback.text,
            scores=(),
            degenerate_graph=True,
        )
    indices = _select_top(doc, scores, cfg)
    return _summary_from_indices(doc, indices, scores=scores.tolist())


def abstract_baseline(instance: AlignedInstance) -> str:
    """The scientific abstract, verbatim."""
    return instance.article.abstract.raw
