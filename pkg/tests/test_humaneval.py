import itertools

import pytest

from scipress.corpus import instance_from_json
from scipress.errors import (
    EmptyJudgments,
    InsufficientData,
    InvalidSelection,
    MissingPrediction,
    UnknownTask,
)
from scipress.humaneval import (
    BwsJudgment,
    BwsTask,
    EvalDimension,
    JudgmentStore,
    SLOTS,
    Selection,
    alpha_nominal,
    bws_score,
    krippendorff_alpha,
    make_tasks,
    pooled_alpha,
    record_judgment,
)
from scipress.humaneval.tasks import Candidate, SourceView
from tests.conftest import make_instance_json

DIMS = list(EvalDimension)


def make_task(task_id="t1", systems=("sys_a", "sys_b", "sys_c")):
    return BwsTask(
        task_id=task_id,
        instance_id=f"inst-{task_id}",
        source_view=SourceView(abstract="abs", introduction="intro", metadata="meta"),
        candidates=tuple(
            Candidate(slot=slot, system=system, summary=f"candidate text {k}")
            for k, (slot, system) in enumerate(zip(SLOTS, systems))
        ),
    )


def judgment(task_id, annotator, best, worst, dims=None):
    selection = Selection(best=frozenset(best), worst=frozenset(worst))
    return BwsJudgment(
        task_id=task_id,
        annotator_id=annotator,
        selections={d: selection for d in (dims or DIMS)},
    )


def mixed_judgment(task_id, annotator, per_dim):
    return BwsJudgment(
        task_id=task_id,
        annotator_id=annotator,
        selections={
            d: Selection(best=frozenset(b), worst=frozenset(w))
            for d, (b, w) in per_dim.items()
        },
    )


FULL = frozenset(SLOTS)


class TestTieRules:
    def test_valid_selection(self):
        judgment("t1", "u1", {"A"}, {"B"}).validate()

    def test_full_tie_accepted(self):
        judgment("t1", "u1", FULL, FULL).validate()

    def test_partial_tie_two_bests(self):
        judgment("t1", "u1", {"A", "B"}, {"C"}).validate()

    def test_overlap_rejected(self):
        with pytest.raises(InvalidSelection):
            judgment("t1", "u1", {"A"}, {"A"}).validate()
        with pytest.raises(InvalidSelection):
            judgment("t1", "u1", {"A", "B"}, {"B"}).validate()

    def test_empty_sets_rejected(self):
        with pytest.raises(InvalidSelection):
            judgment("t1", "u1", set(), {"B"}).validate()

    def test_unknown_slot_rejected(self):
        with pytest.raises(InvalidSelection):
            judgment("t1", "u1", {"Z"}, {"B"}).validate()

    def test_missing_dimension_rejected(self):
        with pytest.raises(InvalidSelection):
            judgment("t1", "u1", {"A"}, {"B"}, dims=DIMS[:3]).validate()


class TestMakeTasks:
    def _instances(self, n=4):
        return [instance_from_json(make_instance_json(f"doc-{i}")) for i in range(n)]

    def _predictions(self, instances, systems=("one", "two", "three")):
        return {
            system: {i.id: f"summary #{k} of {i.id}" for i in instances}
            for k, system in enumerate(systems)
        }

    def test_one_task_per_instance(self):
        instances = self._instances()
        tasks = make_tasks(instances, self._predictions(instances), seed=5)
        assert len(tasks) == len(instances)
        for task in tasks:
            assert len(task.candidates) == 3
            assert tuple(c.slot for c in task.candidates) == SLOTS

    def test_deterministic_given_seed(self):
        instances = self._instances()
        a = make_tasks(instances, self._predictions(instances), seed=5)
        b = make_tasks(instances, self._predictions(instances), seed=5)
        assert a == b
        c = make_tasks(instances, self._predictions(instances), seed=6)
        assert any(x != y for x, y in zip(a, c))

    def test_missing_system_output(self):
        instances = self._instances()
        predictions = self._predictions(instances)
        del predictions["two"][instances[0].id]
        with pytest.raises(MissingPrediction):
            make_tasks(instances, predictions, seed=5)

    def test_two_systems_rejected(self):
        instances = self._instances()
        with pytest.raises(MissingPrediction):
            make_tasks(instances, self._predictions(instances, ("one", "two")), seed=5)

    def test_annotator_payload_hides_systems(self):
        instances = self._instances()
        (task, *_) = make_tasks(instances, self._predictions(instances), seed=5)
        payload = task.annotator_payload()
        rendered = str(payload)
        for candidate in task.candidates:
            assert candidate.system not in rendered
        assert {c["slot"] for c in payload["candidates"]} == set(SLOTS)


class TestBwsScore:
    def test_arithmetic_from_definition(self):
        # one task judged by 10 annotators; slot A best 6 times, worst 3
        task = make_task()
        judgments = []
        for k in range(10):
            if k < 6:
                judgments.append(judgment("t1", f"u{k}", {"A"}, {"B"}))
            elif k < 9:
                judgments.append(judgment("t1", f"u{k}", {"B"}, {"A"}))
            else:
                judgments.append(judgment("t1", f"u{k}", {"C"}, {"B"}))
        scores = bws_score(judgments, [task])
        score_a = scores[("sys_a", EvalDimension.STYLE)]
        assert score_a.n_shown == 10
        assert score_a.n_best == 6 and score_a.n_worst == 3
        assert score_a.score == pytest.approx((6 - 3) / 10)

    def test_full_ties_cancel_to_zero(self):
        task = make_task()
        judgments = [judgment("t1", f"u{k}", FULL, FULL) for k in range(4)]
        scores = bws_score(judgments, [task])
        for value in scores.values():
            assert value.score == 0.0
            assert value.n_best == value.n_worst == value.n_shown

    def test_style_target_fixture(self):
        # engineered so sys_b's STYLE score is exactly 0.30:
        # 10 appearances, best 5, worst 2
        task = make_task()
        per_k = [
            ({"B"}, {"A"}), ({"B"}, {"C"}), ({"B"}, {"A"}), ({"B"}, {"C"}),
            ({"B"}, {"A"}), ({"A"}, {"B"}), ({"C"}, {"B"}), ({"A"}, {"C"}),
            ({"C"}, {"A"}), ({"A"}, {"C"}),
        ]
        judgments = []
        for k, (best, worst) in enumerate(per_k):
            per_dim = {d: (best, worst) for d in DIMS}
            judgments.append(mixed_judgment("t1", f"u{k}", per_dim))
        scores = bws_score(judgments, [task])
        style = scores[("sys_b", EvalDimension.STYLE)]
        assert style.n_shown == 10 and style.n_best == 5 and style.n_worst == 2
        assert style.score == pytest.approx(0.30)

    def test_single_best_worst_sums_to_zero(self):
        task = make_task()
        judgments = [judgment("t1", "u1", {"A"}, {"C"})]
        scores = bws_score(judgments, [task])
        net = sum(
            scores[(s, EvalDimension.FACTUALITY)].n_best
            - scores[(s, EvalDimension.FACTUALITY)].n_worst
            for s in ("sys_a", "sys_b", "sys_c")
        )
        assert net == 0

    def test_empty_judgments(self):
        with pytest.raises(EmptyJudgments):
            bws_score([], [make_task()])

    def test_unknown_task(self):
        with pytest.raises(UnknownTask):
            bws_score([judgment("ghost", "u1", {"A"}, {"B"})], [make_task()])

    def test_blinding_soundness_slot_relabeling(self):
        # permuting which system sits in which slot leaves system scores alone
        base_systems = ("sys_a", "sys_b", "sys_c")
        # annotator prefers sys_a and dislikes sys_c, wherever they sit
        def prefer(task):
            by_system = {c.system: c.slot for c in task.candidates}
            return judgment(task.task_id, "u1", {by_system["sys_a"]}, {by_system["sys_c"]})

        reference = None
        for perm in itertools.permutations(base_systems):
            task = make_task("t1", perm)
            scores = bws_score([prefer(task)], [task])
            table = {
                (s, d.value): (v.n_best, v.n_worst, v.n_shown)
                for (s, d), v in scores.items()
            }
            if reference is None:
                reference = table
            assert table == reference


class TestKrippendorff:
    def test_swap_fixture_is_minus_half(self):
        assert alpha_nominal([["a", "b"], ["b", "a"]]) == pytest.approx(-0.5)

    def test_perfect_agreement(self):
        task = make_task()
        judgments = [judgment("t1", u, {"A"}, {"C"}) for u in ("u1", "u2", "u3")]
        report = krippendorff_alpha(judgments, EvalDimension.STYLE)
        assert report.alpha == 1.0
        assert report.n_annotators == 3

    def test_annotator_permutation_invariant(self):
        task_ids = ("t1", "t2")
        j = [
            judgment("t1", "u1", {"A"}, {"B"}),
            judgment("t1", "u2", {"B"}, {"A"}),
            judgment("t2", "u1", {"C"}, {"A"}),
            judgment("t2", "u2", {"C"}, {"B"}),
        ]
        renamed = [
            BwsJudgment(
                task_id=x.task_id,
                annotator_id={"u1": "x9", "u2": "x1"}[x.annotator_id],
                selections=x.selections,
            )
            for x in j
        ]
        a = krippendorff_alpha(j, EvalDimension.READABILITY).alpha
        b = krippendorff_alpha(renamed, EvalDimension.READABILITY).alpha
        assert a == pytest.approx(b)

    def test_single_annotator_insufficient(self):
        with pytest.raises(InsufficientData):
            krippendorff_alpha([judgment("t1", "u1", {"A"}, {"B"})], None)

    def test_full_tie_counts_as_neither(self):
        judgments = [
            judgment("t1", "u1", FULL, FULL),
            judgment("t1", "u2", FULL, FULL),
        ]
        report = krippendorff_alpha(judgments, EvalDimension.STYLE)
        assert report.alpha == 1.0  # everyone indifferent everywhere

    def test_pooled_covers_all_dimensions(self):
        judgments = [
            judgment("t1", "u1", {"A"}, {"B"}),
            judgment("t1", "u2", {"A"}, {"B"}),
        ]
        pooled = pooled_alpha(judgments)
        assert pooled.n_units == 3 * len(DIMS)
        assert pooled.alpha == 1.0


class TestStore:
    def test_round_trip(self, tmp_path):
        store = JudgmentStore(tmp_path / "j.jsonl")
        j = judgment("t1", "u1", {"A"}, {"B"})
        assert store.append(j) is False
        (loaded,) = store.latest()
        assert loaded.task_id == "t1"
        assert loaded.selections[EvalDimension.STYLE].best == frozenset({"A"})

    def test_last_write_wins(self, tmp_path):
        store = JudgmentStore(tmp_path / "j.jsonl")
        store.append(judgment("t1", "u1", {"A"}, {"B"}))
        replaced = store.append(judgment("t1", "u1", {"C"}, {"A"}))
        assert replaced is True
        (latest,) = store.latest()
        assert latest.selections[EvalDimension.STYLE].best == frozenset({"C"})
        # history preserved on disk
        assert len(list(store.iter_all())) == 2

    def test_record_judgment_validates(self, tmp_path):
        store = JudgmentStore(tmp_path / "j.jsonl")
        task = make_task()
        ack = record_judgment(store, judgment("t1", "u1", {"A"}, {"B"}), [task])
        assert ack["status"] == "stored"
        with pytest.raises(UnknownTask):
            record_judgment(store, judgment("nope", "u1", {"A"}, {"B"}), [task])
        with pytest.raises(InvalidSelection):
            record_judgment(store, judgment("t1", "u1", {"A"}, {"A"}), [task])

    def test_task_json_round_trip(self):
        task = make_task()
        assert BwsTask.from_json(task.to_json()) == task
