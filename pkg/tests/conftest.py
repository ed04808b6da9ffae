import json

import pytest

from scipress.corpus import instance_from_json, load_corpus
from scipress.synth import generate_corpus, shipped_path


def make_instance_json(
    instance_id="doc-1",
    abstract="A first fact holds. We present a small tool.",
    intro="Tools help people work. The small tool fits the task well.",
    summary="Researchers say a small tool may change work. It is easy to try.",
    authors=None,
    source="arxiv",
):
    return {
        "id": instance_id,
        "article": {
            "title": "A small tool",
            "abstract": abstract,
            "sections": [
                {"heading": "Introduction", "text": intro},
                {"heading": "Methods", "text": "The tool has three parts. Each part is tested."},
            ],
            "authors": authors
            or [{"name": "Jane Li", "affiliation": "Northbay University"}],
            "source": source,
        },
        "press": {
            "title": "A tool for all",
            "summary": summary,
            "article": "",
            "writer_org": "TechWire Digest",
            "date": "2020-01-02",
        },
    }


@pytest.fixture
def tiny_instance():
    return instance_from_json(make_instance_json())


@pytest.fixture
def tiny_corpus_file(tmp_path):
    path = tmp_path / "corpus.jsonl"
    rows = [make_instance_json(f"doc-{i}") for i in range(1, 4)]
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n", encoding="utf-8")
    return path


@pytest.fixture(scope="session")
def synthetic_instances():
    return [instance_from_json(o) for o in generate_corpus(50, 1337)]


@pytest.fixture(scope="session")
def shipped_corpus():
    return load_corpus(shipped_path("corpus"))
