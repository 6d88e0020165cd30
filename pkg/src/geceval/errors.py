"""Exception types shared across the toolkit."""

from __future__ import annotations


class GecEvalError(Exception):
    """Base class for all toolkit errors."""


class InputError(GecEvalError):
    """Malformed or inconsistent input data: bad files, schemas, lengths."""


class ValidationError(GecEvalError):
    """A value violates its declared contract (edit bounds, score ranges, empty text)."""


class StateViolationError(GecEvalError):
    """An annotation call arrived in a workflow state that does not allow it."""


class UndefinedStatisticError(GecEvalError):
    """The requested statistic has no defined value for this input (degenerate denominator)."""


class ScorerError(GecEvalError):
    """A language-model scorer failed; carries the failed batch indices or sentence id."""

    def __init__(self, message: str, *, failed_indices: list[int] | None = None,
                 sentence_id: str | None = None):
        if failed_indices:
            message = f"{message} (failed indices: {failed_indices})"
        if sentence_id is not None:
            message = f"{message} (sentence id: {sentence_id})"
        super().__init__(message)
        self.failed_indices = failed_indices or []
        self.sentence_id = sentence_id
