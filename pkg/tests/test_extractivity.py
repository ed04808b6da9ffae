import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scipress.errors import EmptyDoc, EmptySummary, TooShort
from scipress.extractivity import (
    ExtractiveFragment,
    extractive_fragments,
    extractivity_report,
    novel_ngrams,
    novelty_report,
)


def brute_force_fragments(doc, summary):
    """Independent oracle: exhaustive longest-match at each summary position."""
    doc = [t.casefold() for t in doc]
    summary = [t.casefold() for t in summary]
    fragments = []
    i = 0
    while i < len(summary):
        best = (0, -1)
        for j in range(len(doc)):
            length = 0
            while (
                i + length < len(summary)
                and j + length < len(doc)
                and summary[i + length] == doc[j + length]
            ):
                length += 1
            if length > best[0]:
                best = (length, j)
        if best[0] > 0:
            fragments.append((i, best[1], best[0]))
            i += best[0]
        else:
            i += 1
    return fragments


class TestFragments:
    def test_hand_trace(self):
        frags = extractive_fragments("a b c d e".split(), "a b x c".split())
        assert [(f.summary_start, f.doc_start, f.length) for f in frags] == [
            (0, 0, 2),
            (3, 2, 1),
        ]
        report = extractivity_report("a b c d e".split(), "a b x c".split())
        assert report.coverage == pytest.approx(0.75)
        assert report.density == pytest.approx(1.25)

    def test_identity(self):
        doc = "one two three four".split()
        report = extractivity_report(doc, list(doc))
        assert report.coverage == 1.0
        assert report.density == float(len(doc))
        assert len(report.fragments) == 1

    def test_disjoint(self):
        report = extractivity_report("a b c".split(), "x y z".split())
        assert report.coverage == 0.0
        assert report.density == 0.0
        assert report.fragments == ()

    def test_case_folded(self):
        report = extractivity_report("The Cat".split(), "the cat".split())
        assert report.coverage == 1.0

    def test_single_token_match(self):
        report = extractivity_report("a b".split(), ["b"])
        assert (report.coverage, report.density) == (1.0, 1.0)

    def test_earliest_doc_position_on_ties(self):
        frags = extractive_fragments("a b a b".split(), "a b".split())
        assert frags == [ExtractiveFragment(0, 0, 2)]

    def test_empty_sides(self):
        with pytest.raises(EmptySummary):
            extractive_fragments("a".split(), [])
        with pytest.raises(EmptyDoc):
            extractive_fragments([], ["a"])

    def test_fragments_never_overlap(self):
        rng = np.random.default_rng(5)
        vocab = list("abcd")
        for _ in range(200):
            doc = [vocab[i] for i in rng.integers(0, 4, size=12)]
            summary = [vocab[i] for i in rng.integers(0, 4, size=8)]
            frags = extractive_fragments(doc, summary)
            ends = 0
            total = 0
            for f in frags:
                assert f.summary_start >= ends
                ends = f.summary_start + f.length
                total += f.length
            assert total <= len(summary)

    def test_substring_summary_has_full_coverage(self):
        doc = "alpha beta gamma delta epsilon zeta".split()
        for start in range(len(doc)):
            for end in range(start + 1, len(doc) + 1):
                report = extractivity_report(doc, doc[start:end])
                assert report.coverage == 1.0

    def test_greedy_matches_bruteforce_fixed_draws(self):
        rng = np.random.default_rng(1234)
        vocab = list("abcde")
        for _ in range(1000):
            n_doc = int(rng.integers(1, 13))
            n_sum = int(rng.integers(1, 9))
            doc = [vocab[i] for i in rng.integers(0, len(vocab), size=n_doc)]
            summary = [vocab[i] for i in rng.integers(0, len(vocab), size=n_sum)]
            got = [
                (f.summary_start, f.doc_start, f.length)
                for f in extractive_fragments(doc, summary)
            ]
            assert got == brute_force_fragments(doc, summary)

    @settings(max_examples=200, deadline=None)
    @given(
        st.lists(st.sampled_from("ab cd ef gh".split()), min_size=1, max_size=12),
        st.lists(st.sampled_from("ab cd ef gh".split()), min_size=1, max_size=8),
    )
    def test_greedy_matches_bruteforce_hypothesis(self, doc, summary):
        got = [
            (f.summary_start, f.doc_start, f.length)
            for f in extractive_fragments(doc, summary)
        ]
        assert got == brute_force_fragments(doc, summary)


class TestNovelty:
    def test_hand_counts(self):
        doc = "a b c".split()
        assert novel_ngrams(doc, "a b x".split(), 1) == pytest.approx(100 / 3)
        assert novel_ngrams(doc, "a b x".split(), 2) == pytest.approx(50.0)

    def test_identical_summary_is_zero(self):
        doc = "a b c d".split()
        for n in (1, 2, 3):
            assert novel_ngrams(doc, list(doc), n) == 0.0

    def test_disjoint_is_hundred(self):
        for n in (1, 2):
            assert novel_ngrams("a b c".split(), "x y".split(), n) == 100.0

    def test_too_short(self):
        with pytest.raises(TooShort):
            novel_ngrams("a b c".split(), ["a"], 2)

    def test_subset_multiset_is_zero(self):
        # repeated summary occurrences count against the doc SET
        assert novel_ngrams("a b".split(), "a a a b".split(), 1) == 0.0

    def test_report_composes(self):
        report = novelty_report("a b c".split(), "a b x".split())
        assert set(report.novel_pct) == {1, 2, 3}
        assert report.novel_pct[1] == pytest.approx(100 / 3)

    def test_invalid_n(self):
        with pytest.raises(ValueError):
            novel_ngrams("a b".split(), "a b".split(), 4)
