"""Extractive-fragment coverage/density and novel n-gram abstractiveness.

Fragments follow the greedy longest-match procedure: scanning the summary
left to right, each position takes the longest contiguous token match found
anywhere in the source (earliest source occurrence on ties), or advances one
token when nothing matches.  Coverage is the fraction of summary tokens
inside fragments; density is the mean squared fragment length per summary
token, so long verbatim copies dominate it.

All matching is case-folded; punctuation tokens participate like any other
token.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence, Union

from .corpus import TokenizedText
from .errors import EmptyDoc, EmptySummary, TooShort

Tokens = Union[Sequence[str], TokenizedText]


def _as_tokens(value: Tokens) -> list[str]:
    if isinstance(value, TokenizedText):
        return value.tokens()
    return list(value)


@dataclass(frozen=True)
class ExtractiveFragment:
    summary_start: int
    doc_start: int
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("fragment length must be >= 1")


@dataclass(frozen=True)
class ExtractivityReport:
    coverage: float
    density: float
    fragments: tuple[ExtractiveFragment, ...]


@dataclass(frozen=True)
class NoveltyReport:
    novel_pct: dict[int, float]


def extractive_fragments(doc: Tokens, summary: Tokens) -> list[ExtractiveFragment]:
    """Greedy shared fragments between ``doc`` and ``summary``.

    Raises:
        EmptyDoc / EmptySummary: when either side has no tokens.
    """
    doc_tokens = [t.casefold() for t in _as_tokens(doc)]
    summary_tokens = [t.casefold() for t in _as_tokens(summary)]
    if not summary_tokens:
        raise EmptySummary("summary has no tokens")
    if not doc_tokens:
        raise EmptyDoc("document has no tokens")

    positions: dict[str, list[int]] = defaultdict(list)
    for j, token in enumerate(doc_tokens):
        positions[token].append(j)

    fragments: list[ExtractiveFragment] = []
    i = 0
    n_sum, n_doc = len(summary_tokens), len(doc_tokens)
    while i < n_sum:
        best_len = 0
        best_doc = -1
        for j in positions.get(summary_tokens[i], ()):
            length = 1
            while (
                i + length < n_sum
                and j + length < n_doc
                and summary_tokens[i + length] == doc_tokens[j + length]
            ):
                length += 1
            if length > best_len:  # strict: earliest doc position wins ties
                best_len, best_doc = length, j
        if best_len:
            fragments.append(ExtractiveFragment(i, best_doc, best_len))
            i += best_len
        else:
            i += 1
    return fragments


def extractivity_report(doc: Tokens, summary: Tokens) -> ExtractivityReport:
    """Coverage and density of ``summary`` with respect to ``doc``."""
    summary_tokens = _as_tokens(summary)
    fragments = extractive_fragments(doc, summary_tokens)
    n = len(summary_tokens)
    coverage = sum(f.length for f in fragments) / n
    density = sum(f.length**2 for f in fragments) / n
    return ExtractivityReport(
        coverage=coverage, density=density, fragments=tuple(fragments)
    )


def _ngrams(tokens: Sequence[str], n: int) -> list[tuple[str, ...]]:
    return [tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]


def novel_ngrams(doc: Tokens, summary: Tokens, n: int) -> float:
    """Percentage of summary n-gram occurrences absent from the doc's
    n-gram set (case-folded).

    Raises:
        TooShort: when the summary has fewer than ``n`` tokens.
    """
    if n not in (1, 2, 3):
        raise ValueError(f"n must be 1, 2 or 3, got {n}")
    doc_tokens = [t.casefold() for t in _as_tokens(doc)]
    summary_tokens = [t.casefold() for t in _as_tokens(summary)]
    if len(summary_tokens) < n:
        raise TooShort(f"summary has {len(summary_tokens)} tokens, needs >= {n}")
    doc_set = set(_ngrams(doc_tokens, n))
    grams = _ngrams(summary_tokens, n)
    novel = sum(1 for g in grams if g not in doc_set)
    return 100.0 * novel / len(grams)


def novelty_report(doc: Tokens, summary: Tokens) -> NoveltyReport:
    """Novel n-gram percentages for n in {1, 2, 3}."""
    return NoveltyReport(
        novel_pct={n: novel_ngrams(doc, summary, n) for n in (1, 2, 3)}
    )


def histogram2d(
    points: Sequence[tuple[float, float]],
    x_edges: Sequence[float],
    y_edges: Sequence[float],
) -> list[list[int]]:
    """Binned 2-D counts of (coverage, density) points for external plotting.

    Values at or beyond the last edge land in the last bin.
    """

    def bin_index(value: float, edges: Sequence[float]) -> int:
        for k in range(len(edges) - 1):
            if value < edges[k + 1]:
                return k
        return len(edges) - 2

    counts = [[0] * (len(y_edges) - 1) for _ in range(len(x_edges) - 1)]
    for x, y in points:
        counts[bin_index(x, x_edges)][bin_index(y, y_edges)] += 1
    return counts
