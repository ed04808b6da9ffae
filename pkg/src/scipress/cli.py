"""Command-line entry point.

Subcommands: ingest, stats, readability, extractivity, baseline, evaluate,
style, plan, bws-score, serve, report.  Every command takes ``--out DIR``
and drops a ``manifest.json`` (command line, resolved config, seeds, input
digests) next to its artifacts.  Exit codes: 0 success, 1 data error,
2 usage error.

All randomness flows from ``--seed``; per-instance streams derive via stable
hashing, and per-instance work parallelized by ``--jobs`` reduces in input
order, so identical invocations produce byte-identical artifacts (manifest
timestamp aside).
"""

from __future__ import annotations

import csv
import json
import statistics
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

from . import __version__, baselines, manifest, metrics, plan as plan_mod, synth
from .corpus import (
    AlignedInstance,
    Side,
    corpus_stats,
    entity_distribution,
    load_annotations,
    load_corpus,
    source_view,
    tokenize,
)
from .errors import InsufficientData, ScipressError
from .extractivity import extractivity_report, histogram2d, novel_ngrams
from .humaneval import (
    BwsTask,
    EvalDimension,
    JudgmentStore,
    krippendorff_alpha,
    make_tasks,
    pooled_alpha,
    bws_score,
)
from .humaneval.scoring import score_rows
from .readability import FamiliarWordList, default_familiar_words, readability_report

SIDE_CHOICES = {
    "pr-summary": Side.PR_SUMMARY,
    "pr-article": Side.PR_ARTICLE,
    "sci-body": Side.SCI_BODY,
    "sci-abstract": Side.SCI_ABSTRACT,
}

SYSTEMS = ("lead", "random", "oracle", "lexrank", "textrank", "abstract")


def _read_config(path: str | None) -> dict:
    """key=value lines; '#' starts a comment."""
    if not path:
        return {}
    values: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise click.UsageError(f"bad config line: {raw.strip()!r}")
            key, value = line.split("=", 1)
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _corpus_path(path: str | None) -> Path:
    return Path(path) if path else synth.shipped_path("corpus")


def _write_json(out_dir: Path, name: str, payload) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, ensure_ascii=False)
        fh.write("\n")
    return path


def _write_csv(out_dir: Path, name: str, header: list[str], rows: list[list]) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def _write_jsonl(out_dir: Path, name: str, rows) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True, ensure_ascii=False) + "\n")
    return path


def _emit_manifest(out: Path, config: dict, inputs, seeds=None):
    manifest.write_manifest(
        out,
        manifest.build_manifest(
            command_line=sys.argv,
            config=config,
            seeds=seeds,
            input_paths=[p for p in inputs if p and Path(p).exists()],
        ),
    )


def _pmap(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _fmt(value: float) -> float:
    return round(float(value), 6)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(version=__version__)
@click.option("--config", "config_path", default=None, help="key=value defaults file")
@click.pass_context
def main(ctx, config_path):
    """Corpus analysis and evaluation workbench for paired scientific /
    press-release corpora."""
    defaults = _read_config(config_path)
    if defaults:
        ctx.default_map = {cmd: defaults for cmd in main.commands}


def _handle_errors(fn):
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ScipressError as exc:
            raise click.ClickException(f"{type(exc).__name__}: {exc}")

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


common_corpus = click.option(
    "--corpus", "corpus_path", default=None,
    help="corpus JSON Lines file (default: shipped synthetic corpus)",
)
common_out = click.option(
    "--out", "out_dir", default="out", show_default=True,
    help="output directory",
)
common_jobs = click.option(
    "--jobs", default=1, show_default=True, help="parallel workers"
)


@main.command()
@common_corpus
@common_out
@_handle_errors
def ingest(corpus_path, out_dir):
    """Validate a corpus file and report per-source counts."""
    path = _corpus_path(corpus_path)
    instances = load_corpus(path)
    sources: dict[str, int] = {}
    for inst in instances:
        sources[inst.article.source] = sources.get(inst.article.source, 0) + 1
    out = Path(out_dir)
    _write_json(out, "ingest.json", {
        "instances": len(instances),
        "sources": sources,
        "ids_head": [i.id for i in instances[:5]],
    })
    _emit_manifest(out, {"corpus": str(path)}, [path])
    click.echo(f"{len(instances)} instances OK ({path})")


@main.command()
@common_corpus
@click.option("--side", type=click.Choice(sorted(SIDE_CHOICES)), default="pr-summary",
              show_default=True)
@click.option("--entities", "entities_path", default=None,
              help="entity annotation JSON Lines file")
@common_out
@_handle_errors
def stats(corpus_path, side, entities_path, out_dir):
    """Per-document token/sentence means (and entity means if annotations
    are given)."""
    path = _corpus_path(corpus_path)
    instances = load_corpus(path)
    st = corpus_stats(instances, SIDE_CHOICES[side])
    payload = {
        "side": side,
        "docs": st.docs,
        "mean_words": _fmt(st.mean_words),
        "mean_sentences": _fmt(st.mean_sentences),
    }
    out = Path(out_dir)
    inputs = [path]
    if entities_path:
        annotations = load_annotations(entities_path)
        dist = entity_distribution(instances, annotations, SIDE_CHOICES[side])
        payload["entities_per_doc"] = {k.value: _fmt(v) for k, v in dist.items()}
        inputs.append(Path(entities_path))
    _write_json(out, "stats.json", payload)
    _write_csv(out, "stats.csv",
               ["side", "docs", "mean_words", "mean_sentences"],
               [[side, st.docs, _fmt(st.mean_words), _fmt(st.mean_sentences)]])
    _emit_manifest(out, {"corpus": str(path), "side": side}, inputs)
    click.echo(json.dumps(payload, sort_keys=True))


@main.command()
@common_corpus
@click.option("--word-list", "word_list_path", default=None,
              help="override the embedded familiar-word list")
@common_jobs
@common_out
@_handle_errors
def readability(corpus_path, word_list_path, jobs, out_dir):
    """Readability of scientific abstracts and press summaries."""
    path = _corpus_path(corpus_path)
    instances = load_corpus(path)
    familiar = (
        FamiliarWordList.from_file(word_list_path)
        if word_list_path
        else default_familiar_words()
    )

    def one(inst: AlignedInstance):
        return (
            inst.id,
            readability_report(inst.article.abstract, familiar),
            readability_report(inst.press.summary, familiar),
        )

    results = _pmap(one, instances, jobs)
    rows = []
    for instance_id, sci, pr in results:
        rows.append([instance_id, "sci-abstract"] + [
            _fmt(v) for v in (sci.fkgl, sci.cli, sci.dcrs, sci.gunning, sci.average)])
        rows.append([instance_id, "pr-summary"] + [
            _fmt(v) for v in (pr.fkgl, pr.cli, pr.dcrs, pr.gunning, pr.average)])
    out = Path(out_dir)
    _write_csv(out, "readability.csv",
               ["id", "side", "fkgl", "cli", "dcrs", "gunning", "average"], rows)

    def macro(selector):
        return {
            metric: _fmt(statistics.mean(getattr(selector(r), metric) for r in results))
            for metric in ("fkgl", "cli", "dcrs", "gunning", "average")
        }

    summary = {
        "sci_abstract": macro(lambda r: r[1]),
        "pr_summary": macro(lambda r: r[2]),
    }
    summary["average_gap"] = _fmt(
        abs(summary["sci_abstract"]["average"] - summary["pr_summary"]["average"])
    )
    _write_json(out, "readability.json", summary)
    _emit_manifest(out, {"corpus": str(path), "word_list": word_list_path or "embedded"},
                   [path] + ([Path(word_list_path)] if word_list_path else []))
    click.echo(json.dumps(summary, sort_keys=True))


@main.command()
@common_corpus
@click.option("--side", type=click.Choice(["pr-summary", "sci-abstract"]),
              default="pr-summary", show_default=True,
              help="which summary to analyze")
@click.option("--bins", default=10, show_default=True)
@common_jobs
@common_out
@_handle_errors
def extractivity(corpus_path, side, bins, jobs, out_dir):
    """Coverage/density and novel n-grams per instance.

    Coverage and density compare the summary against the model input view
    (abstract + introduction) for the press side, and against the article
    body for the abstract itself; novelty always uses the article body.
    """
    path = _corpus_path(corpus_path)
    instances = load_corpus(path)

    def one(inst: AlignedInstance):
        summary = (
            inst.press.summary if side == "pr-summary" else inst.article.abstract
        )
        body_tokens = [t for text in inst.article.body() for t in text.tokens()]
        if side == "pr-summary":
            doc_tokens = source_view(inst.article).tokens()
        else:
            doc_tokens = body_tokens
        report = extractivity_report(doc_tokens, summary)
        novelty = {n: novel_ngrams(body_tokens, summary, n) for n in (1, 2, 3)}
        return inst.id, report, novelty

    results = _pmap(one, instances, jobs)
    rows = [
        [instance_id, _fmt(rep.coverage), _fmt(rep.density),
         _fmt(nov[1]), _fmt(nov[2]), _fmt(nov[3])]
        for instance_id, rep, nov in results
    ]
    out = Path(out_dir)
    _write_csv(out, "extractivity.csv",
               ["id", "coverage", "density", "novel1", "novel2", "novel3"], rows)

    points = [(rep.coverage, rep.density) for _, rep, _ in results]
    max_density = max((p[1] for p in points), default=1.0) or 1.0
    x_edges = [i / bins for i in range(bins + 1)]
    y_edges = [max_density * i / bins for i in range(bins + 1)]
    _write_json(out, "extractivity_histogram.json", {
        "side": side,
        "x_edges": [_fmt(v) for v in x_edges],
        "y_edges": [_fmt(v) for v in y_edges],
        "counts": histogram2d(points, x_edges, y_edges),
        "means": {
            "coverage": _fmt(statistics.mean(p[0] for p in points)),
            "density": _fmt(statistics.mean(p[1] for p in points)),
            "novel1": _fmt(statistics.mean(nov[1] for _, _, nov in results)),
            "novel2": _fmt(statistics.mean(nov[2] for _, _, nov in results)),
            "novel3": _fmt(statistics.mean(nov[3] for _, _, nov in results)),
        },
    })
    _emit_manifest(out, {"corpus": str(path), "side": side, "bins": bins}, [path])
    click.echo(f"extractivity over {len(rows)} instances -> {out}")


def _run_baseline(system: str, inst: AlignedInstance, cfg: baselines.BaselineConfig,
                  oracle_pad: bool) -> str:
    doc = source_view(inst.article)
    if system == "lead":
        return baselines.lead(doc, cfg).text
    if system == "random":
        return baselines.random_baseline(doc, cfg).text
    if system == "oracle":
        return baselines.ext_oracle(doc, inst.press.summary, cfg, pad=oracle_pad).text
    if system == "lexrank":
        return baselines.lexrank(doc, cfg).text
    if system == "textrank":
        return baselines.textrank(doc, cfg).text
    if system == "abstract":
        return baselines.abstract_baseline(inst)
    raise click.UsageError(f"unknown system {system!r}")


@main.command()
@common_corpus
@click.option("--system", type=click.Choice(SYSTEMS), required=True)
@click.option("--n", default=5, show_default=True, help="sentences per summary")
@click.option("--seed", default=0, show_default=True)
@click.option("--damping", default=0.85, show_default=True)
@click.option("--eps", default=1e-6, show_default=True, help="power-iteration stop")
@click.option("--max-iters", default=200, show_default=True)
@click.option("--oracle-pad", is_flag=True,
              help="force the oracle to exactly n sentences")
@common_jobs
@common_out
@_handle_errors
def baseline(corpus_path, system, n, seed, damping, eps, max_iters, oracle_pad,
             jobs, out_dir):
    """Run one extractive comparison system over the corpus."""
    path = _corpus_path(corpus_path)
    instances = load_corpus(path)

    def one(inst: AlignedInstance):
        cfg = baselines.BaselineConfig(
            n=n, seed=baselines.derive_seed(seed, inst.id),
            damping=damping, convergence_eps=eps, max_iters=max_iters,
        )
        return {
            "instance_id": inst.id,
            "system": system,
            "summary": _run_baseline(system, inst, cfg, oracle_pad),
        }

    rows = _pmap(one, instances, jobs)
    out = Path(out_dir)
    _write_jsonl(out, f"predictions_{system}.jsonl", rows)
    _emit_manifest(
        out,
        {"corpus": str(path), "system": system, "n": n, "damping": damping,
         "eps": eps, "max_iters": max_iters, "oracle_pad": oracle_pad},
        [path], seeds={"seed": seed},
    )
    click.echo(f"{system}: {len(rows)} predictions -> {out}")


def _load_predictions(paths) -> dict[str, dict[str, str]]:
    """prediction files -> {system: {instance_id: summary}}"""
    systems: dict[str, dict[str, str]] = {}
    for path in paths:
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                row = json.loads(line)
                systems.setdefault(row["system"], {})[row["instance_id"]] = row["summary"]
    return systems


@main.command()
@common_corpus
@click.option("--predictions", "prediction_paths", multiple=True, required=True,
              help="predictions JSON Lines (repeatable)")
@click.option("--compare", default=None,
              help="SYSTEM_A,SYSTEM_B: paired bootstrap on R1 f1")
@click.option("--resamples", default=1000, show_default=True)
@click.option("--level", default=0.95, show_default=True)
@click.option("--seed", default=0, show_default=True)
@common_jobs
@common_out
@_handle_errors
def evaluate(corpus_path, prediction_paths, compare, resamples, level, seed,
             jobs, out_dir):
    """ROUGE-1/2/L per system against the press summaries."""
    path = _corpus_path(corpus_path)
    instances = {i.id: i for i in load_corpus(path)}
    systems = _load_predictions(prediction_paths)

    per_instance: dict[str, dict[str, dict[str, metrics.RougeScore]]] = {}
    table_rows = []
    for system in sorted(systems):
        predictions = systems[system]
        ids = sorted(i for i in predictions if i in instances)

        def one(instance_id: str, _system=system, _predictions=predictions):
            reference = instances[instance_id].press.summary
            candidate = tokenize(_predictions[instance_id])
            return instance_id, metrics.rouge_all(candidate, reference)

        scored = _pmap(one, ids, jobs)
        per_instance[system] = {instance_id: s for instance_id, s in scored}
        row = {"system": system, "n": len(ids)}
        for variant in ("R1", "R2", "RL"):
            for field in ("precision", "recall", "f1"):
                row[f"{variant}_{field}"] = _fmt(100 * statistics.mean(
                    getattr(s[variant], field) for _, s in scored))
        table_rows.append(row)

    out = Path(out_dir)
    header = ["system", "n"] + [f"{v}_{f}" for v in ("R1", "R2", "RL")
                                for f in ("precision", "recall", "f1")]
    _write_csv(out, "rouge.csv", header,
               [[row[h] for h in header] for row in table_rows])
    payload: dict = {"systems": table_rows}

    if compare:
        try:
            sys_a, sys_b = compare.split(",")
        except ValueError:
            raise click.UsageError("--compare wants SYSTEM_A,SYSTEM_B")
        shared = sorted(set(per_instance.get(sys_a, {})) & set(per_instance.get(sys_b, {})))
        if len(shared) < 2:
            raise click.ClickException(
                f"--compare needs >= 2 shared instances for {sys_a!r} vs {sys_b!r}"
            )
        result = metrics.bootstrap_ci(
            [per_instance[sys_a][i]["R1"].f1 for i in shared],
            [per_instance[sys_b][i]["R1"].f1 for i in shared],
            resamples=resamples, level=level, seed=seed,
        )
        payload["bootstrap"] = {
            "systems": [sys_a, sys_b], "metric": "R1_f1", "n": len(shared),
            "mean_diff": _fmt(result.statistic),
            "ci_low": _fmt(result.ci_low), "ci_high": _fmt(result.ci_high),
            "level": level, "significant": result.significant,
        }
    _write_json(out, "rouge.json", payload)
    _emit_manifest(out, {"corpus": str(path), "resamples": resamples, "level": level},
                   [path, *prediction_paths], seeds={"seed": seed})
    click.echo(json.dumps(payload["systems"], sort_keys=True))


@main.command()
@common_corpus
@click.option("--predictions", "prediction_paths", multiple=True,
              help="score these systems' outputs too")
@click.option("--train-frac", default=0.6, show_default=True,
              help="leading fraction of instances used for training")
@click.option("--seed", default=0, show_default=True)
@common_out
@_handle_errors
def style(corpus_path, prediction_paths, train_frac, seed, out_dir):
    """Train the press-style sentence classifier and score summaries.

    Training uses press-summary sentences (positive) and abstract sentences
    (negative) from the leading fraction of the corpus; scores are reported
    on the held-out remainder.
    """
    path = _corpus_path(corpus_path)
    instances = load_corpus(path)
    split = max(1, min(len(instances) - 1, int(len(instances) * train_frac)))
    train, held = instances[:split], instances[split:]

    press_sentences = [list(s.tokens) for i in train for s in i.press.summary.sentences]
    sci_sentences = [list(s.tokens) for i in train for s in i.article.abstract.sentences]
    model = metrics.style_train(press_sentences, sci_sentences, seed=seed)

    scores = {
        "gold_pr_summary": _fmt(statistics.mean(
            metrics.style_score(model, i.press.summary) for i in held)),
        "sci_abstract": _fmt(statistics.mean(
            metrics.style_score(model, i.article.abstract) for i in held)),
    }
    systems = _load_predictions(prediction_paths) if prediction_paths else {}
    held_ids = {i.id for i in held}
    for system in sorted(systems):
        values = [
            metrics.style_score(model, tokenize(text))
            for instance_id, text in sorted(systems[system].items())
            if instance_id in held_ids and text.strip()
        ]
        if values:
            scores[f"system_{system}"] = _fmt(statistics.mean(values))

    out = Path(out_dir)
    _write_json(out, "style.json", {
        "train_instances": len(train), "held_instances": len(held),
        "mean_style": scores,
    })
    _write_csv(out, "style.csv", ["text", "mean_style"],
               [[k, v] for k, v in sorted(scores.items())])
    _emit_manifest(out, {"corpus": str(path), "train_frac": train_frac},
                   [path, *prediction_paths], seeds={"seed": seed})
    click.echo(json.dumps(scores, sort_keys=True))


def _load_labels(path) -> dict[tuple[str, str], list[str]]:
    labels: dict[tuple[str, str], list[str]] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                row = json.loads(line)
                labels[(row["instance_id"], row["side"])] = row["labels"]
    return labels


@main.command("plan")
@common_corpus
@click.option("--labels", "labels_path", default=None,
              help="rhetorical label JSON Lines file (else heuristic labeler)")
@click.option("--lowercase", is_flag=True, help="lowercase serialized pairs")
@click.option("--bins", default=10, show_default=True)
@common_out
@_handle_errors
def plan_cmd(corpus_path, labels_path, lowercase, bins, out_dir):
    """Serialize input/plan/target pairs and the role-position analysis."""
    path = _corpus_path(corpus_path)
    instances = load_corpus(path)
    labels = _load_labels(labels_path) if labels_path else {}

    pairs = []
    pr_sequences, sci_sequences = [], []
    for inst in instances:
        doc = plan_mod.label_document(
            inst.article, labels.get((inst.id, "SCI_INPUT"))
        )
        serialized_input = plan_mod.serialize_input(doc, lowercase=lowercase)

        summary = inst.press.summary
        pr_labels = labels.get((inst.id, "PR_SUMMARY"))
        if pr_labels is None:
            total = summary.n_sentences
            pr_labels = [
                plan_mod.heuristic_label(
                    summary.sentences[k], k / max(total - 1, 1), inst.article.metadata
                ).value
                for k in range(total)
            ]
        content_plan = plan_mod.RhetoricalPlan(
            groups=tuple((plan_mod.RhetoricalRole(l),) for l in pr_labels)
        )
        target = plan_mod.serialize_target(content_plan, summary)
        if lowercase:
            target = target[: target.index("[SUMMARY]") + len("[SUMMARY]")] + \
                target[target.index("[SUMMARY]") + len("[SUMMARY]"):].lower()
        pairs.append({
            "instance_id": inst.id,
            "input": serialized_input,
            "target": target,
            "labeler": "file" if labels else "heuristic",
        })
        pr_sequences.append(pr_labels)
        sci_labels = labels.get((inst.id, "SCI_ABSTRACT"))
        if sci_labels is None:
            abstract = inst.article.abstract
            sci_labels = [
                plan_mod.heuristic_label(
                    abstract.sentences[k],
                    k / max(abstract.n_sentences - 1, 1),
                    inst.article.metadata,
                ).value
                for k in range(abstract.n_sentences)
            ]
        sci_sequences.append(sci_labels)

    out = Path(out_dir)
    _write_jsonl(out, "serialized_pairs.jsonl", pairs)
    distribution = {
        "bins": bins,
        "labeler": "file" if labels else "heuristic",
        "pr_summary": {
            role.value: [_fmt(v) for v in hist]
            for role, hist in plan_mod.plan_distribution(pr_sequences, bins).items()
        },
        "sci_abstract": {
            role.value: [_fmt(v) for v in hist]
            for role, hist in plan_mod.plan_distribution(sci_sequences, bins).items()
        },
        "mean_conclusions_position": {
            "pr_summary": _fmt(plan_mod.mean_relative_position(
                pr_sequences, plan_mod.RhetoricalRole.CONCLUSIONS)),
            "sci_abstract": _fmt(plan_mod.mean_relative_position(
                sci_sequences, plan_mod.RhetoricalRole.CONCLUSIONS)),
        },
    }
    _write_json(out, "plan_distribution.json", distribution)
    _emit_manifest(out, {"corpus": str(path), "labels": labels_path or "heuristic",
                         "lowercase": lowercase, "bins": bins},
                   [path] + ([Path(labels_path)] if labels_path else []))
    click.echo(f"{len(pairs)} serialized pairs -> {out}")


@main.command("bws-score")
@click.option("--tasks", "tasks_path", required=True, help="tasks JSON Lines file")
@click.option("--store", "store_path", required=True, help="judgment store file")
@common_out
@_handle_errors
def bws_score_cmd(tasks_path, store_path, out_dir):
    """Best-worst scores and agreement from a judgment store."""
    with open(tasks_path, "r", encoding="utf-8") as fh:
        tasks = [BwsTask.from_json(json.loads(line)) for line in fh if line.strip()]
    store = JudgmentStore(store_path)
    judgments = store.latest()
    rows = score_rows(bws_score(judgments, tasks)) if judgments else []
    for row in rows:
        row["score"] = _fmt(row["score"])

    alpha: dict[str, float | None] = {}
    for dimension in EvalDimension:
        try:
            alpha[dimension.value] = _fmt(
                krippendorff_alpha(judgments, dimension).alpha)
        except InsufficientData:
            alpha[dimension.value] = None
    try:
        alpha["POOLED"] = _fmt(pooled_alpha(judgments).alpha)
    except InsufficientData:
        alpha["POOLED"] = None

    out = Path(out_dir)
    _write_csv(out, "bws_scores.csv",
               ["system", "dimension", "score", "n_best", "n_worst", "n_shown"],
               [[r["system"], r["dimension"], r["score"], r["n_best"],
                 r["n_worst"], r["n_shown"]] for r in rows])
    _write_json(out, "bws_scores.json", {
        "scores": rows, "alpha": alpha, "n_judgments": len(judgments),
    })
    _emit_manifest(out, {"tasks": tasks_path, "store": store_path},
                   [tasks_path, store_path])
    click.echo(json.dumps({"alpha": alpha, "n_judgments": len(judgments)},
                          sort_keys=True))


@main.command()
@common_corpus
@click.option("--predictions", "prediction_paths", multiple=True,
              help="predictions of the systems under study (exactly 3 systems)")
@click.option("--tasks", "tasks_path", default=None,
              help="existing tasks file (skips task assembly)")
@click.option("--sample", default=30, show_default=True,
              help="instances to sample for the study")
@click.option("--seed", default=0, show_default=True)
@click.option("--store", "store_path", default=None,
              envvar="SCIPRESS_STORE", help="judgment store path")
@click.option("--static", "static_dir", default=None,
              help="directory of annotator UI assets to serve at /")
@click.option("--port", default=None, type=int, envvar="SCIPRESS_PORT")
@click.option("--host", default="127.0.0.1", show_default=True)
@common_out
@_handle_errors
def serve(corpus_path, prediction_paths, tasks_path, sample, seed, store_path,
          static_dir, port, host, out_dir):
    """Assemble tasks (or load them) and run the annotation service."""
    import uvicorn

    from .humaneval.service import DEFAULT_PORT, create_app

    out = Path(out_dir)
    if tasks_path:
        with open(tasks_path, "r", encoding="utf-8") as fh:
            tasks = [BwsTask.from_json(json.loads(line)) for line in fh if line.strip()]
    else:
        if not prediction_paths:
            raise click.UsageError("provide --tasks or --predictions")
        import numpy as np

        path = _corpus_path(corpus_path)
        instances = load_corpus(path)
        k = min(sample, len(instances))
        rng = np.random.default_rng(seed)
        picked = sorted(rng.choice(len(instances), size=k, replace=False).tolist())
        sampled = [instances[i] for i in picked]
        tasks = make_tasks(sampled, _load_predictions(prediction_paths), seed=seed)
        tasks_file = _write_jsonl(out, "tasks.jsonl", [t.to_json() for t in tasks])
        click.echo(f"assembled {len(tasks)} tasks -> {tasks_file}")

    store = JudgmentStore(store_path or out / "judgments.jsonl")
    app = create_app(tasks, store, static_dir=static_dir)
    _emit_manifest(out, {"tasks": tasks_path or "assembled", "sample": sample,
                         "static": static_dir or ""}, [], seeds={"seed": seed})
    uvicorn.run(app, host=host, port=port or DEFAULT_PORT, log_level="info")


@main.command()
@click.option("--all", "run_all", is_flag=True, help="run every analysis")
@common_corpus
@click.option("--entities", "entities_path", default=None)
@click.option("--labels", "labels_path", default=None)
@click.option("--n", default=5, show_default=True)
@click.option("--seed", default=0, show_default=True)
@common_jobs
@common_out
@click.pass_context
@_handle_errors
def report(ctx, run_all, corpus_path, entities_path, labels_path, n, seed, jobs,
           out_dir):
    """One markdown report with the corpus, readability, extractiveness,
    baseline, style, and plan analyses."""
    if not run_all:
        raise click.UsageError("report currently only supports --all")
    path = _corpus_path(corpus_path)
    if corpus_path is None and entities_path is None:
        entities_path = str(synth.shipped_path("entities"))
    if corpus_path is None and labels_path is None:
        labels_path = str(synth.shipped_path("labels"))
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    instances = load_corpus(path)
    lines = [
        "# Corpus analysis report",
        "",
        f"Corpus: `{path.name}` ({len(instances)} instances); seed {seed}.",
        "",
        "## Corpus statistics",
        "",
        "| side | docs | mean words | mean sentences |",
        "|---|---|---|---|",
    ]
    for side_name in ("pr-summary", "pr-article", "sci-abstract", "sci-body"):
        st = corpus_stats(instances, SIDE_CHOICES[side_name])
        lines.append(
            f"| {side_name} | {st.docs} | {st.mean_words:.2f} | {st.mean_sentences:.2f} |"
        )

    ctx.invoke(readability, corpus_path=str(path), word_list_path=None,
               jobs=jobs, out_dir=str(out / "readability"))
    readability_summary = json.loads((out / "readability" / "readability.json").read_text())
    lines += [
        "",
        "## Readability (macro means; lower is simpler)",
        "",
        "| metric | sci-abstract | pr-summary |",
        "|---|---|---|",
    ]
    for metric in ("fkgl", "cli", "dcrs", "gunning", "average"):
        lines.append(
            f"| {metric} | {readability_summary['sci_abstract'][metric]:.2f} "
            f"| {readability_summary['pr_summary'][metric]:.2f} |"
        )

    lines += ["", "## Extractiveness and abstractiveness", ""]
    novelty_means = {}
    for side_name in ("sci-abstract", "pr-summary"):
        ctx.invoke(extractivity, corpus_path=str(path), side=side_name,
                   bins=10, jobs=jobs, out_dir=str(out / f"extractivity_{side_name}"))
        hist = json.loads(
            (out / f"extractivity_{side_name}" / "extractivity_histogram.json").read_text())
        novelty_means[side_name] = hist["means"]
    lines += [
        "| measure | sci-abstract | pr-summary |",
        "|---|---|---|",
    ]
    for key in ("coverage", "density", "novel1", "novel2", "novel3"):
        lines.append(
            f"| {key} | {novelty_means['sci-abstract'][key]:.2f} "
            f"| {novelty_means['pr-summary'][key]:.2f} |"
        )

    prediction_files = []
    for system in SYSTEMS:
        system_out = out / f"baseline_{system}"
        ctx.invoke(baseline, corpus_path=str(path), system=system, n=n, seed=seed,
                   damping=0.85, eps=1e-6, max_iters=200, oracle_pad=False,
                   jobs=jobs, out_dir=str(system_out))
        prediction_files.append(str(system_out / f"predictions_{system}.jsonl"))
    ctx.invoke(evaluate, corpus_path=str(path),
               prediction_paths=tuple(prediction_files), compare="oracle,lead",
               resamples=1000, level=0.95, seed=seed, jobs=jobs,
               out_dir=str(out / "rouge"))
    rouge_payload = json.loads((out / "rouge" / "rouge.json").read_text())
    lines += [
        "",
        "## Extractive baselines (ROUGE f1 x 100 vs press summaries)",
        "",
        "| system | R1 | R2 | RL |",
        "|---|---|---|---|",
    ]
    for row in rouge_payload["systems"]:
        lines.append(
            f"| {row['system']} | {row['R1_f1']:.2f} | {row['R2_f1']:.2f} "
            f"| {row['RL_f1']:.2f} |"
        )
    boot = rouge_payload.get("bootstrap")
    if boot:
        lines.append(
            f"\nBootstrap {boot['systems'][0]} vs {boot['systems'][1]} on R1 f1: "
            f"diff {boot['mean_diff']:.4f}, CI [{boot['ci_low']:.4f}, "
            f"{boot['ci_high']:.4f}], significant: {boot['significant']}."
        )

    ctx.invoke(style, corpus_path=str(path),
               prediction_paths=tuple(prediction_files),
               train_frac=0.6, seed=seed, out_dir=str(out / "style"))
    style_payload = json.loads((out / "style" / "style.json").read_text())
    lines += ["", "## Press-style score (held-out mean)", ""]
    lines += ["| text | style |", "|---|---|"]
    for key, value in sorted(style_payload["mean_style"].items()):
        lines.append(f"| {key} | {value:.4f} |")

    ctx.invoke(plan_cmd, corpus_path=str(path), labels_path=labels_path,
               lowercase=False, bins=10, out_dir=str(out / "plan"))
    plan_payload = json.loads((out / "plan" / "plan_distribution.json").read_text())
    positions = plan_payload["mean_conclusions_position"]
    lines += [
        "",
        "## Rhetorical structure",
        "",
        f"Mean relative position of CONCLUSIONS: press summaries "
        f"{positions['pr_summary']:.3f}, scientific abstracts "
        f"{positions['sci_abstract']:.3f} (labels: {plan_payload['labeler']}).",
    ]

    if entities_path:
        annotations = load_annotations(entities_path)
        lines += ["", "## Entity mentions per document", ""]
        lines += ["| type | sci-abstract | pr-summary |", "|---|---|---|"]
        pr_dist = entity_distribution(instances, annotations, Side.PR_SUMMARY)
        sci_dist = entity_distribution(instances, annotations, Side.SCI_ABSTRACT)
        for etype in pr_dist:
            lines.append(
                f"| {etype.value} | {sci_dist[etype]:.2f} | {pr_dist[etype]:.2f} |"
            )

    (out / "report.md").write_text("\n".join(lines) + "\n", encoding="utf-8")
    _emit_manifest(out, {"corpus": str(path), "n": n,
                         "entities": entities_path or "", "labels": labels_path or ""},
                   [path], seeds={"seed": seed})
    click.echo(f"report -> {out / 'report.md'}")


if __name__ == "__main__":
    main()
