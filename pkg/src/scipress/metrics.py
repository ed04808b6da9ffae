"""ROUGE-1/2/L, the press-release style scorer, and significance tests.

ROUGE convention (fixed for reproducibility): case-folded tokens, no
stemming, no stopword removal, punctuation tokens kept; ROUGE-L runs over
the full token sequences rather than a sentence-split LCS union.

The style scorer is a Laplace-smoothed Naive Bayes over sentence unigrams
and bigrams; the score of a summary is the positive-class (press) posterior
averaged over its sentences.

Bootstrap protocol (pinned so an external script with the same seed
reproduces it bit for bit): ``numpy.random.default_rng(seed)`` draws, per
resample, ``n`` instance indices via ``rng.integers(0, n, size=n)``; the
resampled statistic is ``mean(a[idx]) - mean(b[idx])``; the interval is
``numpy.quantile`` (linear interpolation) at ``(1-level)/2`` and
``1-(1-level)/2``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np

from .corpus import TokenizedText
from .errors import (
    EmptyClass,
    EmptyReference,
    EmptySummary,
    LengthMismatch,
    TooShort,
)

Tokens = Union[Sequence[str], TokenizedText]

PRESS = "PRESS"
SCIENTIFIC = "SCIENTIFIC"


def _fold(value: Tokens) -> list[str]:
    tokens = value.tokens() if isinstance(value, TokenizedText) else list(value)
    return [t.casefold() for t in tokens]


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def rouge_n(candidate: Tokens, reference: Tokens, n: int) -> RougeScore:
    """Clipped n-gram overlap ROUGE.

    Raises:
        TooShort: when the reference has fewer than ``n`` tokens.
        EmptySummary / EmptyReference: on empty inputs.
    """
    if n not in (1, 2):
        raise ValueError(f"n must be 1 or 2, got {n}")
    cand = _fold(candidate)
    ref = _fold(reference)
    if not cand:
        raise EmptySummary("candidate has no tokens")
    if not ref:
        raise EmptyReference("reference has no tokens")
    if len(ref) < n:
        raise TooShort(f"reference has {len(ref)} tokens, needs >= {n}")

    cand_grams = Counter(tuple(cand[i : i + n]) for i in range(len(cand) - n + 1))
    ref_grams = Counter(tuple(ref[i : i + n]) for i in range(len(ref) - n + 1))
    overlap = sum(min(c, ref_grams[g]) for g, c in cand_grams.items() if g in ref_grams)
    total_cand = sum(cand_grams.values())
    total_ref = sum(ref_grams.values())
    precision = overlap / total_cand if total_cand else 0.0
    recall = overlap / total_ref
    return RougeScore(precision=precision, recall=recall, f1=_f1(precision, recall))


def _lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    if len(a) < len(b):
        a, b = b, a
    previous = [0] * (len(b) + 1)
    for x in a:
        current = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                current.append(previous[j - 1] + 1)
            else:
                current.append(max(previous[j], current[j - 1]))
        previous = current
    return previous[-1]


def rouge_l(candidate: Tokens, reference: Tokens) -> RougeScore:
    """LCS-based ROUGE over the full token sequences."""
    cand = _fold(candidate)
    ref = _fold(reference)
    if not cand:
        raise EmptySummary("candidate has no tokens")
    if not ref:
        raise EmptyReference("reference has no tokens")
    lcs = _lcs_length(cand, ref)
    precision = lcs / len(cand)
    recall = lcs / len(ref)
    return RougeScore(precision=precision, recall=recall, f1=_f1(precision, recall))


def rouge_all(candidate: Tokens, reference: Tokens) -> dict[str, RougeScore]:
    return {
        "R1": rouge_n(candidate, reference, 1),
        "R2": rouge_n(candidate, reference, 2),
        "RL": rouge_l(candidate, reference),
    }


# ---------------------------------------------------------------------------
# Style scoring


@dataclass(frozen=True)
class StyleModel:
    """Naive Bayes over sentence unigrams + bigrams, classes PRESS vs
    SCIENTIFIC.  Immutable after training."""

    vocabulary: frozenset
    feature_log_prob: Mapping[str, Mapping[tuple, float]]
    unseen_log_prob: Mapping[str, float]
    class_log_prior: Mapping[str, float]


def _sentence_features(tokens: Sequence[str]) -> list[tuple]:
    folded = [t.casefold() for t in tokens]
    features: list[tuple] = [(t,) for t in folded]
    features.extend(zip(folded, folded[1:]))
    return features


def style_train(
    press_sentences: Sequence[Sequence[str]],
    scientific_sentences: Sequence[Sequence[str]],
    seed: int = 0,
) -> StyleModel:
    """Train the press-vs-scientific sentence classifier.

    Classes are balanced by subsampling the larger one (without replacement,
    seeded); when the classes already have equal sizes no randomness is
    consumed, so the model is independent of the seed.

    Raises:
        EmptyClass: when either class has no sentences.
    """
    if not press_sentences:
        raise EmptyClass("press class has no sentences")
    if not scientific_sentences:
        raise EmptyClass("scientific class has no sentences")

    press = list(press_sentences)
    scientific = list(scientific_sentences)
    target = min(len(press), len(scientific))
    rng = np.random.default_rng(seed)
    if len(press) > target:
        keep = sorted(rng.choice(len(press), size=target, replace=False).tolist())
        press = [press[i] for i in keep]
    elif len(scientific) > target:
        keep = sorted(rng.choice(len(scientific), size=target, replace=False).tolist())
        scientific = [scientific[i] for i in keep]

    counts = {PRESS: Counter(), SCIENTIFIC: Counter()}
    for cls, sentences in ((PRESS, press), (SCIENTIFIC, scientific)):
        for sentence in sentences:
            counts[cls].update(_sentence_features(sentence))

    vocabulary = frozenset(counts[PRESS]) | frozenset(counts[SCIENTIFIC])
    v = len(vocabulary)
    feature_log_prob: dict[str, dict[tuple, float]] = {}
    unseen_log_prob: dict[str, float] = {}
    for cls in (PRESS, SCIENTIFIC):
        total = sum(counts[cls].values())
        denom = total + v
        feature_log_prob[cls] = {
            f: math.log((counts[cls][f] + 1) / denom) for f in vocabulary
        }
        unseen_log_prob[cls] = math.log(1.0 / denom)

    n_press, n_sci = len(press), len(scientific)
    return StyleModel(
        vocabulary=vocabulary,
        feature_log_prob=feature_log_prob,
        unseen_log_prob=unseen_log_prob,
        class_log_prior={
            PRESS: math.log(n_press / (n_press + n_sci)),
            SCIENTIFIC: math.log(n_sci / (n_press + n_sci)),
        },
    )


def sentence_posterior(model: StyleModel, tokens: Sequence[str]) -> float:
    """P(PRESS | sentence).  Features outside the vocabulary are ignored."""
    log_scores = {}
    for cls in (PRESS, SCIENTIFIC):
        score = model.class_log_prior[cls]
        table = model.feature_log_prob[cls]
        for feature in _sentence_features(tokens):
            if feature in model.vocabulary:
                score += table[feature]
        log_scores[cls] = score
    m = max(log_scores.values())
    exp_press = math.exp(log_scores[PRESS] - m)
    exp_sci = math.exp(log_scores[SCIENTIFIC] - m)
    return exp_press / (exp_press + exp_sci)


def style_score(model: StyleModel, summary: TokenizedText) -> float:
    """Positive-class probability averaged over the summary's sentences."""
    if summary.is_empty:
        raise EmptySummary("summary has no sentences")
    posteriors = [
        sentence_posterior(model, sentence.tokens) for sentence in summary.sentences
    ]
    return sum(posteriors) / len(posteriors)


# ---------------------------------------------------------------------------
# Significance tests


@dataclass(frozen=True)
class SignificanceResult:
    statistic: float
    significant: bool
    p_value: float | None = None
    ci_low: float | None = None
    ci_high: float | None = None


def bootstrap_ci(
    paired_scores_a: Sequence[float],
    paired_scores_b: Sequence[float],
    resamples: int = 1000,
    level: float = 0.95,
    seed: int = 0,
) -> SignificanceResult:
    """Paired bootstrap confidence interval for mean(a) - mean(b).

    Instances (not sentences) are resampled with replacement; the difference
    is significant when 0 falls outside the interval.  Deterministic given
    the seed (protocol in the module docstring).

    Raises:
        LengthMismatch: when the score lists differ in length.
    """
    if len(paired_scores_a) != len(paired_scores_b):
        raise LengthMismatch(
            f"paired lists differ: {len(paired_scores_a)} vs {len(paired_scores_b)}"
        )
    if len(paired_scores_a) < 2:
        raise ValueError("bootstrap needs at least 2 paired scores")
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must be in (0, 1), got {level}")

    a = np.asarray(paired_scores_a, dtype=float)
    b = np.asarray(paired_scores_b, dtype=float)
    n = len(a)
    rng = np.random.default_rng(seed)
    diffs = np.empty(resamples, dtype=float)
    for r in range(resamples):
        idx = rng.integers(0, n, size=n)
        diffs[r] = a[idx].mean() - b[idx].mean()
    alpha = 1.0 - level
    ci_low = float(np.quantile(diffs, alpha / 2.0))
    ci_high = float(np.quantile(diffs, 1.0 - alpha / 2.0))
    return SignificanceResult(
        statistic=float(a.mean() - b.mean()),
        significant=not (ci_low <= 0.0 <= ci_high),
        ci_low=ci_low,
        ci_high=ci_high,
    )


def _exact_u_counts(n: int, m: int) -> list[int]:
    """counts[u] = number of orderings with U = u under the null (no ties).

    U's null distribution counts partitions of u into at most n parts each
    <= m; the generating function is the Gaussian binomial coefficient
    prod_{k=1..s} (1 - x^(L+k)) / (1 - x^k) with s = min(n, m), L = max.
    """
    s, big = min(n, m), max(n, m)
    poly = [1]
    for k in range(1, s + 1):
        j = big + k
        # multiply by (1 - x^j)
        widened = poly + [0] * j
        for u in range(len(widened) - 1, j - 1, -1):
            if u - j < len(poly):
                widened[u] -= poly[u - j]
        poly = widened
        # divide by (1 - x^k): running sums with stride k
        for u in range(k, len(poly)):
            poly[u] += poly[u - k]
    # trailing zeros beyond u = n*m are artifacts of the widening
    return poly[: n * m + 1]


def _exact_u_cdf(u_stat: float, n: int, m: int) -> float:
    """P(U <= u_stat) under the exact null distribution (no ties)."""
    counts = _exact_u_counts(n, m)
    total = sum(counts)
    good = sum(c for u, c in enumerate(counts) if u <= u_stat)
    return good / total


def mann_whitney(
    sample_a: Sequence[float],
    sample_b: Sequence[float],
    alpha: float = 0.05,
) -> SignificanceResult:
    """Two-sided Mann-Whitney U test.

    Uses the exact null distribution when min(n, m) <= 8 and there are no
    ties, otherwise the normal approximation with tie correction and
    continuity correction.  The reported statistic is U of ``sample_a``.
    """
    if not sample_a or not sample_b:
        raise ValueError("both samples must be non-empty")
    a = list(map(float, sample_a))
    b = list(map(float, sample_b))
    n, m = len(a), len(b)

    u_a = 0.0
    for x in a:
        for y in b:
            if x > y:
                u_a += 1.0
            elif x == y:
                u_a += 0.5

    has_ties = len(set(a) | set(b)) < n + m
    if min(n, m) <= 8 and not has_ties:
        u_min = min(u_a, n * m - u_a)
        p = min(1.0, 2.0 * _exact_u_cdf(u_min, n, m))
    else:
        mean_u = n * m / 2.0
        pooled = sorted(a + b)
        tie_counts = Counter(pooled).values()
        n_total = n + m
        tie_term = sum(t**3 - t for t in tie_counts) / (n_total * (n_total - 1))
        var_u = (n * m / 12.0) * ((n_total + 1) - tie_term)
        if var_u <= 0.0:
            p = 1.0
        else:
            z = (abs(u_a - mean_u) - 0.5) / math.sqrt(var_u)
            z = max(z, 0.0)
            p = min(1.0, 2.0 * (1.0 - _normal_cdf(z)))
    return SignificanceResult(statistic=u_a, significant=p < alpha, p_value=p)


def _normal_cdf(z: float) -> float:
    return 0.5 * math.erfc(-z / math.sqrt(2.0))
