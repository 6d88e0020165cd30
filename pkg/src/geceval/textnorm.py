"""Canonical text handling: normalization, tokenization, detokenization.

Every metric in this package operates on the output of `normalize`, so that
results do not depend on the Unicode encoding form or incidental whitespace
of the input files.
"""

from __future__ import annotations

import re
import unicodedata

_WS_RUN = re.compile(r"\s+")

# A token is either a run of word characters or a single non-word,
# non-space character (punctuation, symbols).
_TOKEN = re.compile(r"\w+|[^\w\s]")


def normalize(text: str) -> str:
    """Apply Unicode canonical composition (NFC), strip, and collapse
    internal whitespace runs to single spaces."""
    text = unicodedata.normalize("NFC", text)
    return _WS_RUN.sub(" ", text).strip()


def tokenize(text: str) -> list[str]:
    """Deterministic tokenization: split on whitespace, with punctuation
    characters as separate single-character tokens.

    The input is normalized first, so the function is total.  Joining the
    result with single spaces (`detokenize`) is the declared inverse for
    scoring purposes.
    """
    return _TOKEN.findall(normalize(text))


def detokenize(tokens: list[str] | tuple[str, ...]) -> str:
    """Single-space join; the declared inverse of `tokenize` for scoring."""
    return " ".join(tokens)
