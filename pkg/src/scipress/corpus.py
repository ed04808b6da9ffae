"""Data model, tokenization, corpus ingestion, and descriptive statistics.

The corpus is a JSON Lines file of aligned instances: one scientific article
(title, abstract, sections, author/affiliation metadata) paired with its
press-release snippet (title, summary, optional article body, writer
organization, date).  Text fields arrive as raw strings and are tokenized at
load time into :class:`TokenizedText`, the substrate every other module
operates on.

Tokenization rules (fixed so results are reproducible):

* word tokens are maximal runs of alphanumeric characters, optionally joined
  by internal apostrophes ("don't" is one token);
* every other non-whitespace character is a standalone token;
* a small embedded abbreviation list ("Dr.", "e.g.", ...) is merged into
  single tokens so their periods never end a sentence;
* sentences are split after a standalone ".", "?" or "!" that is followed by
  whitespace and then an uppercase letter or an opening quote.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    DanglingAnnotation,
    DuplicateId,
    EmptyCorpus,
    EmptyText,
    ParseError,
)

# Periods inside these never terminate a sentence; each occurrence becomes a
# single token.  Matched case-sensitively, as spelled.
ABBREVIATIONS = (
    "Dr.",
    "Prof.",
    "Fig.",
    "et al.",
    "e.g.",
    "i.e.",
    "vs.",
    "U.S.",
    "No.",
)

_OPEN_QUOTES = "\"'“‘«"
_SENTENCE_END = {".", "?", "!"}

_ABBREV_ALT = "|".join(
    re.escape(a) for a in sorted(ABBREVIATIONS, key=len, reverse=True)
)
# Order matters: abbreviation > word > any lone non-space character.
_TOKEN_RE = re.compile(
    rf"(?:(?<!\w)(?:{_ABBREV_ALT})(?!\w))"
    r"|[^\W_]+(?:['’][^\W_]+)*"
    r"|\S",
    re.UNICODE,
)


class Side(str, Enum):
    """Which text of an aligned instance an operation looks at."""

    PR_SUMMARY = "PR_SUMMARY"
    PR_ARTICLE = "PR_ARTICLE"
    SCI_BODY = "SCI_BODY"
    SCI_ABSTRACT = "SCI_ABSTRACT"


class EntityType(str, Enum):
    PERSON = "PERSON"
    ORG = "ORG"
    NUMBER = "NUMBER"
    LOC = "LOC"
    MISC = "MISC"


@dataclass(frozen=True)
class Sentence:
    """One sentence: surface tokens plus their (start, end) offsets."""

    tokens: tuple[str, ...]
    token_spans: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("sentence must contain at least one token")
        if len(self.tokens) != len(self.token_spans):
            raise ValueError("tokens and token_spans must be parallel")

    @property
    def start(self) -> int:
        return self.token_spans[0][0]

    @property
    def end(self) -> int:
        return self.token_spans[-1][1]


@dataclass(frozen=True)
class TokenizedText:
    """A raw text with sentence boundaries and character-exact token spans."""

    raw: str
    sentences: tuple[Sentence, ...]

    @classmethod
    def empty(cls) -> "TokenizedText":
        return cls(raw="", sentences=())

    @property
    def is_empty(self) -> bool:
        return not self.sentences

    @property
    def n_sentences(self) -> int:
        return len(self.sentences)

    @property
    def n_tokens(self) -> int:
        return sum(len(s.tokens) for s in self.sentences)

    def tokens(self) -> list[str]:
        """All tokens in document order."""
        return [t for s in self.sentences for t in s.tokens]

    def sentence_text(self, i: int) -> str:
        s = self.sentences[i]
        return self.raw[s.start : s.end]

    def sentence_texts(self) -> list[str]:
        return [self.sentence_text(i) for i in range(len(self.sentences))]


@dataclass(frozen=True)
class AuthorAffiliation:
    name: str
    affiliation: str = ""

    def __post_init__(self):
        if not self.name:
            raise ValueError("author name must be non-empty")


@dataclass(frozen=True)
class ScientificArticle:
    id: str
    title: str
    abstract: TokenizedText
    sections: tuple[tuple[str, TokenizedText], ...]
    metadata: tuple[AuthorAffiliation, ...]
    source: str = ""

    def __post_init__(self):
        if self.abstract.is_empty:
            raise ValueError(f"article {self.id!r}: abstract must be non-empty")

    def body(self) -> list[TokenizedText]:
        """Section bodies in order (the abstract is not part of the body)."""
        return [text for _, text in self.sections]

    def introduction(self) -> Optional[TokenizedText]:
        """First section whose heading mentions "introduction", else the
        first section."""
        for heading, text in self.sections:
            if "introduction" in heading.casefold():
                return text
        return self.sections[0][1] if self.sections else None


@dataclass(frozen=True)
class PressRelease:
    title: str
    summary: TokenizedText
    article: TokenizedText
    writer_org: str = ""
    date: str = ""

    def __post_init__(self):
        if self.summary.is_empty:
            raise ValueError("press summary must be non-empty")


@dataclass(frozen=True)
class AlignedInstance:
    id: str
    article: ScientificArticle
    press: PressRelease

    def __post_init__(self):
        if self.id != self.article.id:
            raise ValueError(
                f"instance id {self.id!r} differs from article id {self.article.id!r}"
            )

    def side_texts(self, side: Side) -> list[TokenizedText]:
        if side is Side.PR_SUMMARY:
            return [self.press.summary]
        if side is Side.PR_ARTICLE:
            return [self.press.article]
        if side is Side.SCI_ABSTRACT:
            return [self.article.abstract]
        if side is Side.SCI_BODY:
            return self.article.body()
        raise ValueError(f"unknown side {side!r}")


@dataclass(frozen=True)
class EntityAnnotation:
    instance_id: str
    side: Side
    span: tuple[int, int]
    etype: EntityType

    def __post_init__(self):
        start, end = self.span
        if not 0 <= start < end:
            raise ValueError(f"invalid span {self.span!r}")


@dataclass(frozen=True)
class CorpusStats:
    docs: int
    mean_words: float
    mean_sentences: float


# ---------------------------------------------------------------------------
# Tokenization


def tokenize(text: str) -> TokenizedText:
    """Tokenize and sentence-split ``text``.

    Deterministic and lossless: every token's span substring equals its
    surface form, and every non-whitespace character lands inside some token.

    Raises:
        EmptyText: if the text is empty or whitespace-only.
    """
    if not isinstance(text, str):
        raise TypeError(f"expected str, got {type(text).__name__}")
    if not text.strip():
        raise EmptyText("text is empty after normalization")

    matches = [(m.group(), m.start(), m.end()) for m in _TOKEN_RE.finditer(text)]

    sentences: list[Sentence] = []
    tokens: list[str] = []
    spans: list[tuple[int, int]] = []
    n = len(text)
    for i, (tok, start, end) in enumerate(matches):
        tokens.append(tok)
        spans.append((start, end))
        if tok in _SENTENCE_END and _is_sentence_boundary(text, end, n):
            sentences.append(Sentence(tuple(tokens), tuple(spans)))
            tokens, spans = [], []
    if tokens:
        sentences.append(Sentence(tuple(tokens), tuple(spans)))
    return TokenizedText(raw=text, sentences=tuple(sentences))


def _is_sentence_boundary(text: str, pos: int, n: int) -> bool:
    """True when a terminal mark at ``pos`` is followed by whitespace and then
    an uppercase letter or opening quote (or nothing at all)."""
    if pos >= n:
        return True
    if not text[pos].isspace():
        return False
    k = pos
    while k < n and text[k].isspace():
        k += 1
    if k >= n:
        return True
    ch = text[k]
    return ch.isupper() or ch in _OPEN_QUOTES


def tokenize_or_empty(text: str) -> TokenizedText:
    """Like :func:`tokenize` but maps blank input to the empty text."""
    if not text or not text.strip():
        return TokenizedText.empty()
    return tokenize(text)


def is_word(token: str) -> bool:
    """Word tokens carry at least one alphanumeric character; standalone
    punctuation does not count as a word anywhere in the metrics."""
    return any(ch.isalnum() for ch in token)


# ---------------------------------------------------------------------------
# Corpus ingestion


def _require(obj: dict, key: str, line: int, kind: type = str):
    if key not in obj:
        raise ParseError(f"missing field {key!r}", line=line)
    value = obj[key]
    if not isinstance(value, kind):
        raise ParseError(
            f"field {key!r} must be {kind.__name__}, got {type(value).__name__}",
            line=line,
        )
    return value


def instance_from_json(
    obj: dict, line: int = 0, side_filter: Optional[Iterable[Side]] = None
) -> AlignedInstance:
    """Build an :class:`AlignedInstance` from one decoded corpus line.

    ``side_filter`` limits which sides are tokenized; the raw strings of
    unselected sides are preserved but left without sentence structure, which
    keeps large ingests cheap when only one side is analyzed.  Abstract and
    press summary are always tokenized (their non-emptiness is a corpus
    invariant).
    """
    selected = set(side_filter) if side_filter is not None else set(Side)
    selected |= {Side.SCI_ABSTRACT, Side.PR_SUMMARY}

    instance_id = _require(obj, "id", line)
    art = _require(obj, "article", line, dict)
    press = _require(obj, "press", line, dict)

    sections = []
    raw_sections = _require(art, "sections", line, list) if "sections" in art else []
    for sec in raw_sections:
        if not isinstance(sec, dict):
            raise ParseError("every section must be an object", line=line)
        heading = sec.get("heading", "")
        body = _require(sec, "text", line)
        tokenized = (
            tokenize_or_empty(body)
            if Side.SCI_BODY in selected
            else TokenizedText(raw=body, sentences=())
        )
        sections.append((heading, tokenized))

    authors = []
    for author in art.get("authors", []):
        if not isinstance(author, dict) or "name" not in author:
            raise ParseError("every author needs a name", line=line)
        authors.append(
            AuthorAffiliation(
                name=author["name"], affiliation=author.get("affiliation", "")
            )
        )

    try:
        abstract = tokenize(_require(art, "abstract", line))
    except EmptyText:
        raise ParseError("article.abstract must be non-empty", line=line)
    try:
        summary = tokenize(_require(press, "summary", line))
    except EmptyText:
        raise ParseError("press.summary must be non-empty", line=line)

    pr_article_raw = press.get("article", "")
    pr_article = (
        tokenize_or_empty(pr_article_raw)
        if Side.PR_ARTICLE in selected
        else TokenizedText(raw=pr_article_raw, sentences=())
    )

    try:
        article = ScientificArticle(
            id=instance_id,
            title=art.get("title", ""),
            abstract=abstract,
            sections=tuple(sections),
            metadata=tuple(authors),
            source=art.get("source", ""),
        )
        release = PressRelease(
            title=press.get("title", ""),
            summary=summary,
            article=pr_article,
            writer_org=press.get("writer_org", ""),
            date=press.get("date", ""),
        )
        return AlignedInstance(id=instance_id, article=article, press=release)
    except ValueError as exc:
        raise ParseError(str(exc), line=line)


def load_corpus(
    path, side_filter: Optional[Iterable[Side]] = None
) -> list[AlignedInstance]:
    """Load a JSON Lines corpus file into aligned instances, in file order.

    Raises:
        ParseError: on a malformed line (carries the 1-based line number).
        DuplicateId: when two lines share an instance id.
    """
    instances: list[AlignedInstance] = []
    seen: set[str] = set()
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}", line=line_no)
            if not isinstance(obj, dict):
                raise ParseError("every line must be a JSON object", line=line_no)
            instance = instance_from_json(obj, line=line_no, side_filter=side_filter)
            if instance.id in seen:
                raise DuplicateId(instance.id)
            seen.add(instance.id)
            instances.append(instance)
    return instances


def load_annotations(path) -> list[EntityAnnotation]:
    """Load entity annotations from a JSON Lines file."""
    annotations: list[EntityAnnotation] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}", line=line_no)
            try:
                annotations.append(
                    EntityAnnotation(
                        instance_id=obj["instance_id"],
                        side=Side(obj["side"]),
                        span=(int(obj["start"]), int(obj["end"])),
                        etype=EntityType(obj["etype"]),
                    )
                )
            except (KeyError, ValueError) as exc:
                raise ParseError(f"bad annotation: {exc}", line=line_no)
    return annotations


# ---------------------------------------------------------------------------
# Descriptive statistics


def corpus_stats(corpus: Sequence[AlignedInstance], side: Side) -> CorpusStats:
    """Per-document means of token and sentence counts for one side.

    Token counts include punctuation tokens; documents that are empty on the
    requested side (possible for PR_ARTICLE) contribute zeros.
    """
    if not corpus:
        raise EmptyCorpus("corpus_stats needs at least one instance")
    total_tokens = 0
    total_sentences = 0
    for instance in corpus:
        for text in instance.side_texts(side):
            total_tokens += text.n_tokens
            total_sentences += text.n_sentences
    docs = len(corpus)
    return CorpusStats(
        docs=docs,
        mean_words=total_tokens / docs,
        mean_sentences=total_sentences / docs,
    )


def entity_distribution(
    corpus: Sequence[AlignedInstance],
    annotations: Iterable[EntityAnnotation],
    side: Side,
) -> dict[EntityType, float]:
    """Mean number of entities per document, by type, on one side.

    Types with no annotations map to 0.0.

    Raises:
        DanglingAnnotation: if an annotation references an unknown instance
            or a span outside the referenced text.
    """
    if not corpus:
        raise EmptyCorpus("entity_distribution needs at least one instance")
    by_id = {instance.id: instance for instance in corpus}
    counts = {etype: 0 for etype in EntityType}
    for ann in annotations:
        if ann.instance_id not in by_id:
            raise DanglingAnnotation(
                f"annotation references unknown instance {ann.instance_id!r}"
            )
        if ann.side is not side:
            continue
        texts = by_id[ann.instance_id].side_texts(ann.side)
        total_len = sum(len(t.raw) for t in texts)
        if ann.span[1] > total_len:
            raise DanglingAnnotation(
                f"annotation span {ann.span!r} exceeds text of "
                f"{ann.instance_id!r} ({total_len} chars)"
            )
        counts[ann.etype] += 1
    docs = len(corpus)
    return {etype: counts[etype] / docs for etype in EntityType}


# ---------------------------------------------------------------------------
# Model-input view


def source_view(article: ScientificArticle, separator: str = "\n\n") -> TokenizedText:
    """The abstract followed by the introduction, re-tokenized as one text.

    This is the document view given to the extractive baselines and to the
    coverage/density analysis.
    """
    parts = [article.abstract.raw]
    intro = article.introduction()
    if intro is not None and intro.raw.strip():
        parts.append(intro.raw)
    return tokenize(separator.join(parts))


def iter_sentence_tokens(texts: Iterable[TokenizedText]) -> Iterator[list[str]]:
    """Token lists of every sentence across ``texts``."""
    for text in texts:
        for sentence in text.sentences:
            yield list(sentence.tokens)
