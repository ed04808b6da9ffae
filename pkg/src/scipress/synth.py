"""Deterministic synthetic corpus generator.

Stands in for the real paired corpus when it is unavailable (its license
keeps it out of this repository).  Instances are built so the qualitative
findings hold by construction:

* press summaries reuse far fewer source n-grams than abstracts do (novel
  unigram gap well above 10 points);
* abstract and press-summary readability sit within 1.5 grade levels of
  each other (technical short sentences vs everyday long sentences);
* press summaries carry organization/person entities, abstracts mostly
  numbers;
* press summaries mention conclusions early, abstracts close with them;
* early source sentences share the most vocabulary with the press summary,
  so Lead beats Random on average.

Everything flows from one ``numpy`` generator seeded by the caller, so a
given (n, seed) pair always yields byte-identical JSON lines.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

DEFAULT_SEED = 1337
DEFAULT_SIZE = 50

_TECH = (
    "algorithm", "optimization", "stochastic", "heterogeneous", "quantum",
    "polynomial", "eigenvalue", "regularization", "convolutional",
    "semiconductor", "nanoscale", "photonic", "molecular", "computational",
    "probabilistic", "asymptotic", "classifier", "encoder", "inference",
    "calibration", "turbulence", "catalyst", "membrane", "electrode",
    "genomic", "spectral", "topological", "simulation", "gradient",
    "manifold", "entropy", "coefficient", "resonance", "latency",
    "throughput", "bandwidth", "benchmark", "framework", "architecture",
    "protocol", "estimator", "perturbation", "annealing", "interferometer",
    "crystallography", "biosensor", "metamaterial", "microfluidic",
)

_NOUNS = (
    "model", "method", "system", "device", "network", "circuit", "sensor",
    "material", "process", "signal", "sample", "layer", "cell", "chip",
    "filter", "detector", "lattice", "array", "pipeline", "module",
)

_VERBS = (
    "measures", "predicts", "improves", "reduces", "controls", "detects",
    "encodes", "tracks", "filters", "maps", "aligns", "samples", "scales",
    "ranks", "selects",
)

_ADJS = (
    "robust", "scalable", "efficient", "adaptive", "stable", "sparse",
    "compact", "precise", "flexible", "reliable",
)

# everyday words for the press side; kept off the scientific side so press
# summaries stay lexically novel with respect to the source document
_PRESS_OPENERS = (
    "say they have found a better way to",
    "report a cheaper and faster way to",
    "say a fresh approach can now",
    "have shown a simple trick that can",
)
_PRESS_IMPACT = (
    "could one day help doctors, teachers, and city planners in their daily work",
    "may soon make everyday tools cheaper, safer, and easier for everyone to use",
    "could help people save time and money at home, at school, and at work",
    "may open the door to better phones, cleaner power, and smarter cars for all",
)
_PRESS_VERBS = ("study", "watch", "sort", "guide", "speed up", "clean up")

_ORGS = (
    "Redwood Institute of Technology",
    "Northbay University",
    "Eastlake Polytechnic Institute",
    "Silver Valley University",
    "Harborview Research Center",
    "Stonebridge National Laboratory",
    "Clearwater Institute of Science",
    "Pinecrest University",
)

_FIRST = ("Maria", "Jonas", "Priya", "Ahmed", "Lena", "Tomas", "Aiko", "Farid",
          "Ines", "Viktor", "Nadia", "Omar")
_LAST = ("Alvarez", "Keller", "Raman", "Haddad", "Novak", "Lindgren", "Sato",
         "Moreau", "Kovacs", "Petrov", "Okafor", "Bianchi")

_SOURCES = ("nature", "arxiv", "journals.aps", "dl.acm", "ieeexplore.ieee",
            "author", "other")

_WRITERS = ("TechWire Digest", "Science Daily Brief", "Campus News Desk")


def _pick(rng: np.random.Generator, pool, k: int) -> list:
    idx = rng.choice(len(pool), size=k, replace=False)
    return [pool[int(i)] for i in idx]


def _cap(sentence: str) -> str:
    return sentence[0].upper() + sentence[1:] if sentence else sentence


def _join(sentences) -> str:
    return " ".join(_cap(s) for s in sentences)


def _sci_sentence(rng: np.random.Generator, tech: list[str]) -> str:
    t = _pick(rng, tech, 3)
    noun = _pick(rng, _NOUNS, 2)
    verb = _pick(rng, _VERBS, 1)[0]
    adj = _pick(rng, _ADJS, 1)[0]
    forms = (
        f"the {t[0]} {noun[0]} {verb} the {t[1]} {noun[1]} and gives a {adj} gain under {t[2]} load .",
        f"this {t[0]} {noun[0]} keeps the {t[1]} {noun[1]} stable while the main signal drifts .",
        f"each {noun[0]} holds a {t[0]} map that guides the {t[1]} {noun[1]} through one more step .",
        f"we fit a {adj} {t[0]} model so the {t[1]} {noun[1]} tracks the field data well .",
    )
    return str(forms[int(rng.integers(len(forms)))])


def _result_sentence(rng: np.random.Generator, tech: list[str], gain: int) -> str:
    t = _pick(rng, tech, 2)
    noun = _pick(rng, _NOUNS, 1)[0]
    return (
        f"experiments show the {t[0]} {noun} improves {t[1]} accuracy by "
        f"{gain} percent on the benchmark ."
    )


def _make_instance(rng: np.random.Generator, index: int) -> dict:
    tech = _pick(rng, _TECH, 10)
    org = _pick(rng, _ORGS, 1)[0]
    author_names = [
        f"{first} {last}"
        for first, last in zip(_pick(rng, _FIRST, 2), _pick(rng, _LAST, 2))
    ]
    gain = int(rng.integers(11, 60))
    year = 2015 + index % 7
    month = 1 + index % 12
    day = 1 + index % 28

    # the press summary reuses the focus terms, which appear in the abstract
    # but rarely in the rest of the body, so Lead outscores Random on average
    focus = tech[:3]
    body_tech = tech[3:]
    opening = (
        f"the {focus[0]} {_NOUNS[index % len(_NOUNS)]} shapes how each "
        f"{focus[1]} {_NOUNS[(index + 3) % len(_NOUNS)]} behaves under load ."
    )
    intro = [opening] + [_sci_sentence(rng, body_tech) for _ in range(7)]
    methods = [_sci_sentence(rng, body_tech) for _ in range(6)]
    results = [_result_sentence(rng, focus, gain)] + [
        _sci_sentence(rng, body_tech) for _ in range(4)
    ]
    discussion = [_sci_sentence(rng, body_tech) for _ in range(4)]

    # abstract: mostly verbatim body material plus one objective line, so its
    # novelty with respect to the body stays low
    abstract = [
        intro[0],
        f"we present a {_ADJS[index % len(_ADJS)]} {focus[0]} method for "
        f"{focus[1]} analysis .",
        methods[0],
        results[0],
        f"we conclude the {focus[0]} approach generalizes across {focus[2]} settings .",
    ]

    lead_author = author_names[0]
    opener = _PRESS_OPENERS[index % len(_PRESS_OPENERS)]
    impact = _PRESS_IMPACT[index % len(_PRESS_IMPACT)]
    pverb = _PRESS_VERBS[index % len(_PRESS_VERBS)]
    press_sentences = [
        f"Researchers at {org} {opener} {pverb} the {focus[0]} "
        f"{_NOUNS[index % len(_NOUNS)]} that quietly runs inside many important everyday tools .",
        f"The team says the new {focus[0]} method {impact} , and believes the idea "
        f"will generalize across {focus[2]} settings far beyond the laboratory .",
        f"In careful experiments the group measured welcome gains of about {gain} "
        f"percent in {focus[1]} accuracy on a standard benchmark , a difference the "
        f"members call a generous step toward tools that ordinary people can trust .",
        f'" We wanted something simple that works in the real world , not only on '
        f'paper , " said {lead_author} of {org} .',
        f"The group now plans to share the {focus[0]} recipe together with teaching "
        f"material so that schools , libraries , and smaller companies can try the "
        f"idea on their own machines tomorrow .",
    ]
    press_summary = " ".join(press_sentences)

    press_article = ""
    if index % 3 != 0:
        press_article = " ".join(
            [
                f"A new report from {org} describes progress on {focus[0]} tools .",
                "The full press release walks through the project history and the team behind it .",
                "Partners from industry helped test early versions of the tools over two years .",
            ]
        )

    return {
        "id": f"synth-{index:04d}",
        "article": {
            "title": f"{focus[0].title()} methods for {focus[1]} analysis",
            "abstract": _join(abstract),
            "sections": [
                {"heading": "Introduction", "text": _join(intro)},
                {"heading": "Methods", "text": _join(methods)},
                {"heading": "Results", "text": _join(results)},
                {"heading": "Discussion", "text": _join(discussion)},
            ],
            "authors": [
                {"name": name, "affiliation": org} for name in author_names
            ],
            "source": _SOURCES[index % len(_SOURCES)],
        },
        "press": {
            "title": f"New {focus[0]} work could change everyday tools",
            "summary": press_summary,
            "article": press_article,
            "writer_org": _WRITERS[index % len(_WRITERS)],
            "date": f"{year:04d}-{month:02d}-{day:02d}",
        },
    }


def _entities_for(instance: dict) -> list[dict]:
    """Character-exact entity annotations for one instance."""
    annotations = []
    summary = instance["press"]["summary"]
    org = instance["article"]["authors"][0]["affiliation"]
    lead_author = instance["article"]["authors"][0]["name"]

    start = 0
    for _ in range(2):  # the org is mentioned twice in every press summary
        pos = summary.find(org, start)
        if pos < 0:
            break
        annotations.append(
            {
                "instance_id": instance["id"],
                "side": "PR_SUMMARY",
                "start": pos,
                "end": pos + len(org),
                "etype": "ORG",
            }
        )
        start = pos + len(org)
    pos = summary.find(lead_author)
    if pos >= 0:
        annotations.append(
            {
                "instance_id": instance["id"],
                "side": "PR_SUMMARY",
                "start": pos,
                "end": pos + len(lead_author),
                "etype": "PERSON",
            }
        )
    pos = summary.find(" percent")
    if pos > 0:
        digits_start = summary.rfind(" ", 0, pos - 1) + 1
        annotations.append(
            {
                "instance_id": instance["id"],
                "side": "PR_SUMMARY",
                "start": digits_start,
                "end": pos,
                "etype": "NUMBER",
            }
        )

    abstract = instance["article"]["abstract"]
    pos = abstract.find(" percent")
    if pos > 0:
        digits_start = abstract.rfind(" ", 0, pos - 1) + 1
        annotations.append(
            {
                "instance_id": instance["id"],
                "side": "SCI_ABSTRACT",
                "start": digits_start,
                "end": pos,
                "etype": "NUMBER",
            }
        )
    return annotations


# conclusions arrive early in press summaries and last in abstracts
_PR_LABELS = ["AUTHOR", "CONCLUSIONS", "RESULTS", "AUTHOR", "CONCLUSIONS"]
_ABSTRACT_LABELS = ["BACKGROUND", "OBJECTIVE", "METHODS", "RESULTS", "CONCLUSIONS"]


def _labels_for(instance: dict, n_input_sentences: int) -> list[dict]:
    background = max(2, n_input_sentences // 4)
    tail = max(1, n_input_sentences // 8)
    middle = n_input_sentences - background - tail - 2
    input_labels = (
        ["BACKGROUND"] * background
        + ["OBJECTIVE"]
        + ["METHODS"] * (middle // 2)
        + ["RESULTS"] * (middle - middle // 2)
        + ["CONCLUSIONS"] * (tail + 1)
    )
    return [
        {
            "instance_id": instance["id"],
            "side": "SCI_ABSTRACT",
            "labels": list(_ABSTRACT_LABELS),
        },
        {
            "instance_id": instance["id"],
            "side": "SCI_INPUT",
            "labels": input_labels[:n_input_sentences],
        },
        {
            "instance_id": instance["id"],
            "side": "PR_SUMMARY",
            "labels": list(_PR_LABELS),
        },
    ]


def generate_corpus(n: int = DEFAULT_SIZE, seed: int = DEFAULT_SEED) -> list[dict]:
    rng = np.random.default_rng(seed)
    return [_make_instance(rng, i) for i in range(n)]


def generate_files(
    out_dir, n: int = DEFAULT_SIZE, seed: int = DEFAULT_SEED
) -> dict[str, Path]:
    """Write corpus, entity, and label JSON Lines files; returns their paths."""
    from .corpus import tokenize  # local import to avoid a cycle at module load

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    corpus = generate_corpus(n=n, seed=seed)

    paths = {
        "corpus": out / "synthetic_corpus.jsonl",
        "entities": out / "synthetic_entities.jsonl",
        "labels": out / "synthetic_labels.jsonl",
    }
    with open(paths["corpus"], "w", encoding="utf-8") as fh:
        for instance in corpus:
            fh.write(json.dumps(instance, sort_keys=True, ensure_ascii=False) + "\n")
    with open(paths["entities"], "w", encoding="utf-8") as fh:
        for instance in corpus:
            for ann in _entities_for(instance):
                fh.write(json.dumps(ann, sort_keys=True, ensure_ascii=False) + "\n")
    with open(paths["labels"], "w", encoding="utf-8") as fh:
        for instance in corpus:
            n_input = (
                tokenize(instance["article"]["abstract"]).n_sentences
                + tokenize(instance["article"]["sections"][0]["text"]).n_sentences
            )
            for row in _labels_for(instance, n_input):
                fh.write(json.dumps(row, sort_keys=True, ensure_ascii=False) + "\n")
    return paths


def shipped_path(name: str) -> Path:
    """Path of one of the shipped synthetic data files
    (corpus | entities | labels)."""
    from importlib import resources

    files = {
        "corpus": "synthetic_corpus.jsonl",
        "entities": "synthetic_entities.jsonl",
        "labels": "synthetic_labels.jsonl",
    }
    return Path(str(resources.files("scipress.data").joinpath(files[name])))
