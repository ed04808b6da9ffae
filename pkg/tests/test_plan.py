import numpy as np
import pytest

from scipress.corpus import AuthorAffiliation, ScientificArticle, tokenize
from scipress.errors import EmptyCorpus, LabelMismatch, PlanMismatch
from scipress.plan import (
    LabeledDocument,
    RhetoricalPlan,
    RhetoricalRole,
    heuristic_label,
    label_document,
    mean_relative_position,
    parse_generated,
    plan_distribution,
    serialize_input,
    serialize_target,
)

ROLES = list(RhetoricalRole)


def make_article(abstract, intro, authors=()):
    return ScientificArticle(
        id="a1",
        title="T",
        abstract=tokenize(abstract),
        sections=(("Introduction", tokenize(intro)),),
        metadata=tuple(authors),
        source="arxiv",
    )


class TestSerializeInput:
    def test_author_block_then_labeled_sentences(self):
        article = make_article(
            "A template key can pass many checks. We propose a fix.",
            "Systems use markers. Results show gains.",
            authors=[AuthorAffiliation("mara voss", "silver valley university")],
        )
        doc = label_document(
            article, ["BACKGROUND", "OBJECTIVE", "METHODS", "RESULTS"]
        )
        rendered = serialize_input(doc)
        assert rendered.startswith(
            "[METADATA] [AUTHOR] mara voss | silver valley university [BACKGROUND] "
        )
        assert "[BACKGROUND] A template key can pass many checks." in rendered
        assert "[RESULTS] Results show gains." in rendered

    def test_zero_authors_keeps_sentinel(self):
        article = make_article("One fact stands.", "People read. People write.")
        doc = label_document(article, ["METHODS", "BACKGROUND", "RESULTS"])
        rendered = serialize_input(doc)
        assert rendered.startswith("[METADATA] [METHODS] One fact stands.")

    def test_label_mismatch(self):
        article = make_article("One fact stands.", "People read.")
        with pytest.raises(LabelMismatch):
            label_document(article, ["METHODS"])

    def test_unknown_label_name(self):
        article = make_article("One fact stands.", "People read.")
        with pytest.raises(LabelMismatch):
            label_document(article, ["METHODS", "NOT_A_ROLE"])

    def test_lowercase_flag(self):
        article = make_article("One Fact stands.", "People Read.")
        doc = label_document(article, ["METHODS", "BACKGROUND"])
        rendered = serialize_input(doc, lowercase=True)
        assert "one fact stands." in rendered
        assert "Fact" not in rendered

    def test_injective_on_distinct_documents(self):
        rng = np.random.default_rng(8)
        seen = set()
        for _ in range(100):
            n = int(rng.integers(1, 5))
            words = [f"w{int(i)}" for i in rng.integers(0, 50, size=6)]
            abstract = " ".join(words).capitalize() + "."
            intro = " ".join(reversed(words)).capitalize() + "."
            labels = [ROLES[int(i)].value for i in rng.integers(0, len(ROLES), size=2)]
            article = make_article(abstract, intro)
            rendered = serialize_input(label_document(article, labels))
            key = (abstract, intro, tuple(labels))
            if key not in seen:
                seen.add(key)
                assert rendered  # distinct inputs stay distinct
        assert len(seen) > 50


class TestSerializeTarget:
    def test_figure_shape(self):
        plan = RhetoricalPlan(
            groups=(
                (RhetoricalRole.AUTHOR, RhetoricalRole.BACKGROUND),
                (RhetoricalRole.BACKGROUND, RhetoricalRole.RESULTS),
            )
        )
        summary = tokenize("Computer scientists say so. The technique exploits markers.")
        target = serialize_target(plan, summary)
        assert target.startswith("[PLAN] [AUTHOR] [BACKGROUND] | [BACKGROUND] [RESULTS] [SUMMARY] ")
        assert target.count("[SUMMARY]") == 1

    def test_single_group(self):
        plan = RhetoricalPlan(groups=((RhetoricalRole.BACKGROUND,),))
        target = serialize_target(plan, tokenize("One line only."))
        assert target == "[PLAN] [BACKGROUND] [SUMMARY] One line only."

    def test_group_count_mismatch(self):
        plan = RhetoricalPlan(
            groups=((RhetoricalRole.BACKGROUND,), (RhetoricalRole.RESULTS,))
        )
        with pytest.raises(PlanMismatch):
            serialize_target(plan, tokenize("One line only."))

    def test_plan_invariants(self):
        with pytest.raises(ValueError):
            RhetoricalPlan(groups=())
        with pytest.raises(ValueError):
            RhetoricalPlan(groups=((),))
        with pytest.raises(ValueError):
            RhetoricalPlan(groups=((RhetoricalRole.AUTHOR, RhetoricalRole.AUTHOR),))


class TestParseGenerated:
    def test_round_trip(self):
        plan = RhetoricalPlan(
            groups=((RhetoricalRole.AUTHOR,), (RhetoricalRole.METHODS, RhetoricalRole.RESULTS))
        )
        summary = tokenize("They built it. It works better now.")
        parsed = parse_generated(serialize_target(plan, summary))
        assert parsed.plan == plan
        assert parsed.summary == "They built it. It works better now."
        assert parsed.dropped_tokens == 0

    def test_plain_text_passthrough(self):
        parsed = parse_generated("just a summary with no markers")
        assert parsed.plan is None
        assert parsed.summary == "just a summary with no markers"

    def test_unknown_tokens_dropped_with_count(self):
        parsed = parse_generated("[PLAN] [AUTHOR] [BOGUS] | [RESULTS] [SUMMARY] x. y.")
        assert parsed.plan == RhetoricalPlan(
            groups=((RhetoricalRole.AUTHOR,), (RhetoricalRole.RESULTS,))
        )
        assert parsed.dropped_tokens == 1
        assert parsed.summary == "x. y."

    def test_stray_words_counted(self):
        parsed = parse_generated("[PLAN] um [AUTHOR] well | [RESULTS] [SUMMARY] x.")
        assert parsed.dropped_tokens == 2
        assert parsed.plan is not None

    def test_summary_marker_before_plan_is_passthrough(self):
        text = "[SUMMARY] odd [PLAN] order"
        parsed = parse_generated(text)
        assert parsed.plan is None
        assert parsed.summary == text

    def test_never_raises_on_junk(self):
        for junk in ("", "[PLAN]", "[PLAN] [SUMMARY]", "[PLAN] | | [SUMMARY] x",
                     "[PLAN] [AUTHOR] [AUTHOR] [SUMMARY] y"):
            parsed = parse_generated(junk)
            assert isinstance(parsed.summary, str)

    def test_round_trip_1000_random_plans(self):
        rng = np.random.default_rng(2718)
        words = ["alpha", "beta", "gamma", "delta", "robot", "river", "tool"]
        for _ in range(1000):
            n_groups = int(rng.integers(1, 5))
            groups = []
            for _ in range(n_groups):
                k = int(rng.integers(1, len(ROLES) + 1))
                members = rng.choice(len(ROLES), size=k, replace=False)
                groups.append(tuple(ROLES[int(i)] for i in members))
            plan = RhetoricalPlan(groups=tuple(groups))
            sentences = []
            for _ in range(n_groups):
                picks = rng.integers(0, len(words), size=int(rng.integers(2, 6)))
                sentences.append(
                    " ".join(words[int(i)] for i in picks).capitalize() + "."
                )
            summary = tokenize(" ".join(sentences))
            parsed = parse_generated(serialize_target(plan, summary))
            assert parsed.plan == plan
            assert " ".join(parsed.summary.split()) == " ".join(" ".join(sentences).split())
            assert parsed.dropped_tokens == 0


class TestHeuristicLabel:
    def test_objective_cue(self):
        assert heuristic_label("We propose a new method.", 0.4) is RhetoricalRole.OBJECTIVE

    def test_results_cue(self):
        assert heuristic_label("Results show it works.", 0.1) is RhetoricalRole.RESULTS

    def test_conclusions_cue(self):
        assert heuristic_label("We conclude it is fine.", 0.2) is RhetoricalRole.CONCLUSIONS

    def test_position_priors(self):
        assert heuristic_label("no cue here", 0.05) is RhetoricalRole.BACKGROUND
        assert heuristic_label("no cue here", 0.5) is RhetoricalRole.METHODS
        assert heuristic_label("no cue here", 0.95) is RhetoricalRole.CONCLUSIONS

    def test_author_match_wins(self):
        authors = [AuthorAffiliation("Jane Li", "Northbay University")]
        assert heuristic_label("Jane Li made it.", 0.5, authors) is RhetoricalRole.AUTHOR
        assert heuristic_label(
            "The Northbay University team agreed.", 0.1, authors
        ) is RhetoricalRole.AUTHOR

    def test_deterministic(self):
        for _ in range(3):
            assert heuristic_label("We use a probe.", 0.5) is RhetoricalRole.METHODS


class TestPlanDistribution:
    def test_two_bins(self):
        dist = plan_distribution(
            [[RhetoricalRole.BACKGROUND, RhetoricalRole.RESULTS]], bins=2
        )
        assert dist[RhetoricalRole.BACKGROUND] == [1.0, 0.0]
        assert dist[RhetoricalRole.RESULTS] == [0.0, 1.0]

    def test_bins_normalize_over_roles(self):
        rng = np.random.default_rng(55)
        sequences = [
            [ROLES[int(i)] for i in rng.integers(0, len(ROLES), size=rng.integers(1, 8))]
            for _ in range(30)
        ]
        dist = plan_distribution(sequences, bins=10)
        for b in range(10):
            total = sum(dist[role][b] for role in ROLES)
            assert total == pytest.approx(1.0) or total == 0.0
        for role in ROLES:
            assert all(0.0 <= v <= 1.0 for v in dist[role])

    def test_accepts_string_labels(self):
        dist = plan_distribution([["BACKGROUND", "RESULTS"]], bins=2)
        assert dist[RhetoricalRole.BACKGROUND][0] == 1.0

    def test_empty_corpus(self):
        with pytest.raises(EmptyCorpus):
            plan_distribution([], bins=10)
        with pytest.raises(EmptyCorpus):
            plan_distribution([[]], bins=10)

    def test_mean_relative_position(self):
        sequences = [["CONCLUSIONS", "METHODS"], ["METHODS", "CONCLUSIONS"]]
        assert mean_relative_position(sequences, RhetoricalRole.CONCLUSIONS) == 0.5
        assert mean_relative_position([], RhetoricalRole.AUTHOR) == 1.0
