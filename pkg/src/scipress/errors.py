"""Exception hierarchy shared by all scipress modules.

Every data-level failure raises a subclass of :class:`ScipressError`, so the
CLI can map "bad data" to exit code 1 while genuine usage errors keep click's
exit code 2.
"""

from __future__ import annotations


class ScipressError(Exception):
    """Base class for all data and protocol errors raised by scipress."""


class EmptyText(ScipressError):
    """Input text is empty (or whitespace-only) after normalization."""


class ParseError(ScipressError):
    """A corpus / annotation / prediction line could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateId(ScipressError):
    """Two instances in one corpus share an id."""


class EmptyCorpus(ScipressError):
    """An operation that needs at least one document got none."""


class DanglingAnnotation(ScipressError):
    """An entity annotation references an unknown instance or invalid span."""


class NoWords(ScipressError):
    """A readability formula got text with no countable words."""


class EmptySummary(ScipressError):
    """A summary-side input has no tokens / sentences."""


class EmptyDoc(ScipressError):
    """A document-side input has no tokens / sentences."""


class EmptyReference(ScipressError):
    """A reference summary is empty."""


class TooShort(ScipressError):
    """A token sequence is shorter than the requested n-gram order."""


class EmptyClass(ScipressError):
    """A classifier training class has no sentences."""


class LengthMismatch(ScipressError):
    """Paired score lists have different lengths."""


class LabelMismatch(ScipressError):
    """Sentence labels do not line up with the sentences they describe."""


class PlanMismatch(ScipressError):
    """A content plan's group count differs from the summary sentence count."""


class MissingPrediction(ScipressError):
    """A sampled instance lacks an output for one of the configured systems."""


class UnknownTask(ScipressError):
    """A judgment references a task id that was never assembled."""


class InvalidSelection(ScipressError):
    """A best/worst selection violates the tie rules."""


class EmptyJudgments(ScipressError):
    """Scoring was requested over zero judgments."""


class InsufficientData(ScipressError):
    """Agreement cannot be computed (fewer than 2 annotators or no unit
    rated at least twice)."""
