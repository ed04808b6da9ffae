"""Grade-level readability formulas and their average.

Four indices over one fixed token convention, so corpus-level numbers are
exactly reproducible:

* a "word" is any token with at least one alphanumeric character
  (standalone punctuation never counts);
* syllables are counted only for purely alphabetic tokens;
* "letters" are the alphanumeric characters of word tokens.

Lower scores mean simpler text on every index.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .corpus import TokenizedText, is_word
from .errors import NoWords

VOWELS = frozenset("aeiouy")


@dataclass(frozen=True)
class ReadabilityReport:
    fkgl: float
    cli: float
    dcrs: float
    gunning: float
    average: float


@dataclass(frozen=True)
class FamiliarWordList:
    """Set of everyday words a 4th grader is expected to know."""

    words: frozenset[str]

    def __post_init__(self):
        if not self.words:
            raise ValueError("familiar word list must be non-empty")
        if any(w != w.lower() for w in self.words):
            raise ValueError("familiar word list entries must be lowercase")

    def __contains__(self, word: str) -> bool:
        return word in self.words

    @classmethod
    def from_file(cls, path) -> "FamiliarWordList":
        with open(path, "r", encoding="utf-8") as fh:
            words = frozenset(line.strip() for line in fh if line.strip())
        return cls(words=words)


@lru_cache(maxsize=1)
def default_familiar_words() -> FamiliarWordList:
    """The embedded familiar-word list (~3000 entries)."""
    text = (
        resources.files("scipress.data")
        .joinpath("familiar_words.txt")
        .read_text(encoding="utf-8")
    )
    return FamiliarWordList(
        words=frozenset(line.strip() for line in text.splitlines() if line.strip())
    )


def syllable_count(word: str) -> int:
    """Count syllables: maximal vowel groups (aeiouy), minus one for a
    terminal silent "e" unless the word ends in consonant+"le", floored at 1.

    Non-alphabetic input counts as one syllable.
    """
    if not word:
        raise ValueError("syllable_count needs a non-empty word")
    w = word.lower()
    if not w.isalpha():
        return 1
    groups = 0
    previous_vowel = False
    for ch in w:
        vowel = ch in VOWELS
        if vowel and not previous_vowel:
            groups += 1
        previous_vowel = vowel
    ends_consonant_le = len(w) >= 3 and w.endswith("le") and w[-3] not in VOWELS
    if w.endswith("e") and not ends_consonant_le:
        groups -= 1
    return max(groups, 1)


@dataclass(frozen=True)
class _TextCounts:
    words: int
    sentences: int
    letters: int
    syllables: int
    complex_words: int
    difficult_words: int


def _count(text: TokenizedText, familiar: FamiliarWordList | None) -> _TextCounts:
    words = sentences = letters = syllables = complex_words = difficult = 0
    for sentence in text.sentences:
        sentences += 1
        for token in sentence.tokens:
            if not is_word(token):
                continue
            words += 1
            letters += sum(1 for ch in token if ch.isalnum())
            if token.isalpha():
                n_syll = syllable_count(token)
                syllables += n_syll
                if n_syll >= 3:
                    complex_words += 1
                if familiar is not None and token.lower() not in familiar:
                    difficult += 1
    if words == 0:
        raise NoWords("text contains no countable words")
    return _TextCounts(words, sentences, letters, syllables, complex_words, difficult)


def fkgl(text: TokenizedText) -> float:
    """Flesch-Kincaid grade level:
    0.39*(words/sentences) + 11.8*(syllables/words) - 15.59."""
    c = _count(text, None)
    return 0.39 * (c.words / c.sentences) + 11.8 * (c.syllables / c.words) - 15.59


def coleman_liau(text: TokenizedText) -> float:
    """Coleman-Liau index: 0.0588*L - 0.296*S - 15.8, with L the mean letters
    and S the mean sentences per 100 words."""
    c = _count(text, None)
    letters_per_100 = 100.0 * c.letters / c.words
    sentences_per_100 = 100.0 * c.sentences / c.words
    return 0.0588 * letters_per_100 - 0.296 * sentences_per_100 - 15.8


def dale_chall(text: TokenizedText, familiar: FamiliarWordList | None = None) -> float:
    """Dale-Chall readability score.

    PDW is the percentage of (lowercased, alphabetic) words absent from the
    familiar list; score = 0.1579*PDW + 0.0496*(words/sentences), plus 3.6365
    when PDW exceeds 5.
    """
    familiar = familiar if familiar is not None else default_familiar_words()
    c = _count(text, familiar)
    pdw = 100.0 * c.difficult_words / c.words
    score = 0.1579 * pdw + 0.0496 * (c.words / c.sentences)
    if pdw > 5.0:
        score += 3.6365
    return score


def gunning_fog(text: TokenizedText) -> float:
    """Gunning fog index: 0.4*((words/sentences) + 100*(complex/words)),
    complex words being alphabetic words of three or more syllables."""
    c = _count(text, None)
    return 0.4 * ((c.words / c.sentences) + 100.0 * c.complex_words / c.words)


def readability_report(
    text: TokenizedText, familiar: FamiliarWordList | None = None
) -> ReadabilityReport:
    """All four indices plus their arithmetic mean."""
    scores = (
        fkgl(text),
        coleman_liau(text),
        dale_chall(text, familiar),
        gunning_fog(text),
    )
    return ReadabilityReport(
        fkgl=scores[0],
        cli=scores[1],
        dcrs=scores[2],
        gunning=scores[3],
        average=sum(scores) / 4.0,
    )
