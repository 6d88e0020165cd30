"""LM-guided iterative correction baseline.

Generates local edit candidates for each token (lexicon neighbors within
Damerau-Levenshtein distance 1, token deletion, in-lexicon splits) and
greedily accepts the single best candidate whenever it improves the
language-model score by at least the configured threshold, until no
candidate clears the bar or the iteration cap is reached.  Not meant to
compete with large models; it is the runnable reference system that
exercises the evaluation pipeline end to end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from geceval.errors import InputError
from geceval.ngram_lm import NgramModel
from geceval.textnorm import detokenize, normalize, tokenize


@dataclass(frozen=True)
class BaselineConfig:
    # Acceptance threshold in total sentence log-prob (natural log), not
    # per token: a candidate must beat the current sentence by this much.
    improvement_threshold: float = 1.0
    max_iterations: int = 10
    max_candidates_per_token: int = 20

    def __post_init__(self):
        if self.improvement_threshold <= 0:
            raise InputError(
                f"improvement_threshold must be positive, got {self.improvement_threshold}"
            )
        if self.max_iterations < 1:
            raise InputError(f"max_iterations must be >= 1, got {self.max_iterations}")


class Lexicon:
    """Word list with optional frequencies; lookup is exact-match on the
    lowercased form."""

    def __init__(self, frequencies: dict[str, float]):
        if not frequencies:
            raise InputError("lexicon is empty")
        self._freq = {normalize(w).lower(): f for w, f in frequencies.items()}
        self.alphabet = sorted({ch for w in self._freq for ch in w})

    def __contains__(self, word: str) -> bool:
        return word.lower() in self._freq

    def __len__(self) -> int:
        return len(self._freq)

    def frequency(self, word: str) -> float:
        return self._freq.get(word.lower(), 0.0)

    @classmethod
    def from_words(cls, words) -> "Lexicon":
        return cls({w: 1.0 for w in words})

    @classmethod
    def load(cls, path: str | Path) -> "Lexicon":
        """UTF-8 file, one `word [tab] optional frequency` per line."""
        path = Path(path)
        freq: dict[str, float] = {}
        try:
            with open(path, encoding="utf-8") as f:
                for lineno, line in enumerate(f, start=1):
                    line = line.rstrip("\n")
                    if not line.strip():
                        continue
                    parts = line.split("\t")
                    word = parts[0].strip()
                    if not word:
                        raise InputError(f"{path}:{lineno}: empty word")
                    if len(parts) > 1 and parts[1].strip():
                        try:
                            freq[word] = float(parts[1])
                        except ValueError as e:
                            raise InputError(
                                f"{path}:{lineno}: bad frequency {parts[1]!r}"
                            ) from e
                    else:
                        freq[word] = 1.0
        except OSError as e:
            raise InputError(f"cannot read lexicon {path}: {e}") from e
        return cls(freq)


def _edit1_variants(token: str, alphabet: list[str]) -> set[str]:
    """All strings within Damerau-Levenshtein distance 1 of `token`
    (deletions, adjacent transpositions, substitutions, insertions)."""
    splits = [(token[:i], token[i:]) for i in range(len(token) + 1)]
    variants: set[str] = set()
    for left, right in splits:
        if right:
            variants.add(left + right[1:])  # deletion
        if len(right) > 1:
            variants.add(left + right[1] + right[0] + right[2:])  # transposition
        for ch in alphabet:
            if right:
                variants.add(left + ch + right[1:])  # substitution
            variants.add(left + ch + right)  # insertion
    variants.discard(token)
    return variants


def _dedupe(seqs: list[list[str]]) -> list[list[str]]:
    seen: set[tuple[str, ...]] = set()
    out = []
    for s in seqs:
        key = tuple(s)
        if key not in seen:
            seen.add(key)
            out.append(s)
    return out


def generate_candidates(
    tokens: list[str], lexicon: Lexicon, cfg: BaselineConfig | None = None
) -> list[list[str]]:
    """Candidate sentences differing from the input by exactly one local edit.

    Per token: lexicon words within Damerau-Levenshtein distance 1 (ranked
    by lexicon frequency and capped at max_candidates_per_token), the
    token's deletion, and splits into two lexicon words.
    """
    cfg = cfg or BaselineConfig()
    candidates: list[list[str]] = []
    for i, token in enumerate(tokens):
        low = token.lower()
        neighbors = [
            v for v in _edit1_variants(low, lexicon.alphabet) if v in lexicon
        ]
        neighbors.sort(key=lambda w: (-lexicon.frequency(w), w))
        for word in neighbors[: cfg.max_candidates_per_token]:
            candidates.append(tokens[:i] + [word] + tokens[i + 1:])

        candidates.append(tokens[:i] + tokens[i + 1:])  # deletion

        for p in range(1, len(token)):
            left, right = token[:p], token[p:]
            if left.lower() in lexicon and right.lower() in lexicon:
                candidates.append(tokens[:i] + [left, right] + tokens[i + 1:])
    return _dedupe(candidates)


@dataclass(frozen=True)
class CorrectionStep:
    before: str
    after: str
    score_delta: float


@dataclass(frozen=True)
class CorrectionTrace:
    steps: tuple[CorrectionStep, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


def correct_sentence(
    sentence: str,
    model: NgramModel,
    lexicon: Lexicon,
    cfg: BaselineConfig | None = None,
) -> tuple[str, CorrectionTrace]:
    """Greedy single-best acceptance loop.

    Ties between equally scored candidates break on the lexical order of
    the candidate text, so the result is deterministic.  Worst case the
    input is returned unchanged with an empty trace.
    """
    cfg = cfg or BaselineConfig()
    current = tokenize(sentence)
    current_text = detokenize(current)
    current_score = model.score(current_text).log_prob
    steps: list[CorrectionStep] = []

    for _ in range(cfg.max_iterations):
        best_text = None
        best_tokens = None
        best_score = -math.inf
        for cand in generate_candidates(current, lexicon, cfg):
            text = detokenize(cand)
            score = model.score(text).log_prob
            if score > best_score or (score == best_score
                                      and best_text is not None and text < best_text):
                best_score, best_text, best_tokens = score, text, cand
        if best_text is None or best_score - current_score < cfg.improvement_threshold:
            break
        steps.append(
            CorrectionStep(before=current_text, after=best_text,
                           score_delta=best_score - current_score)
        )
        current, current_text, current_score = best_tokens, best_text, best_score

    return current_text, CorrectionTrace(tuple(steps))
