"""Character n-gram language model with add-k smoothing.

Character-level modeling is robust on learner misspellings and requires no
tokenizer.  Natural-log convention throughout; perplexity is per character
(the end sentinel counts as one symbol, so the empty string is scorable).
The model doubles as the default scorer behind the reference-free metric
and the correction baseline; larger models can be plugged in through the
external scorer client, which satisfies the same `perplexity` protocol.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from geceval.errors import InputError

BOS = "\x02"
EOS = "\x03"

FORMAT_NAME = "geceval-char-ngram"
FORMAT_VERSION = 1


@dataclass(frozen=True)
class LmScore:
    """Total natural-log probability of a text plus the symbol count used
    for per-character perplexity."""

    log_prob: float
    token_count: int

    @property
    def perplexity(self) -> float:
        return math.exp(-self.log_prob / self.token_count)


class NgramModel:
    """Trained character n-gram model.

    Immutable after training; safe to share across threads.  `counts` maps
    a context (the previous order-1 characters, BOS-padded) to next-symbol
    counts.  Smoothed probability of symbol s after context c:

        P(s | c) = (count(c, s) + k) / (total(c) + k * |V|)

    where V is the trained symbol vocabulary plus the end sentinel, so the
    distribution over next symbols sums to 1 for any context.
    """

    def __init__(self, order: int, k: float, counts: dict[str, Counter]):
        if order < 1:
            raise InputError(f"order must be >= 1, got {order}")
        if k <= 0:
            raise InputError(f"smoothing k must be positive, got {k}")
        self.order = order
        self.k = k
        self._counts = counts
        self._totals = {ctx: sum(c.values()) for ctx, c in counts.items()}
        vocab = {EOS}
        for c in counts.values():
            vocab.update(c)
        self.vocabulary = frozenset(vocab)

    def symbol_log_probs(self, text: str) -> list[float]:
        """Per-symbol smoothed log conditionals over the padded text,
        including the final end-sentinel term.  Every term is negative."""
        n = self.order
        stream = [BOS] * (n - 1) + list(text) + [EOS]
        v = len(self.vocabulary)
        terms = []
        for i in range(n - 1, len(stream)):
            ctx = "".join(stream[i - n + 1:i])
            sym = stream[i]
            counts = self._counts.get(ctx)
            if counts is None:
                prob = 1.0 / v
            else:
                prob = (counts.get(sym, 0) + self.k) / (self._totals[ctx] + self.k * v)
            terms.append(math.log(prob))
        return terms

    def score(self, text: str) -> LmScore:
        terms = self.symbol_log_probs(text)
        return LmScore(log_prob=math.fsum(terms), token_count=len(terms))

    def perplexity(self, text: str) -> float:
        return self.score(text).perplexity

    def to_dict(self) -> dict:
        return {
            "format": FORMAT_NAME,
            "version": FORMAT_VERSION,
            "order": self.order,
            "k": self.k,
            "vocabulary": sorted(self.vocabulary),
            "counts": {
                ctx: {sym: cnt for sym, cnt in sorted(counter.items())}
                for ctx, counter in sorted(self._counts.items())
            },
        }

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, ensure_ascii=False, sort_keys=True)

    @classmethod
    def from_dict(cls, obj: dict) -> "NgramModel":
        if obj.get("format") != FORMAT_NAME:
            raise InputError(f"not a {FORMAT_NAME} model file")
        if obj.get("version") != FORMAT_VERSION:
            raise InputError(f"unsupported model version {obj.get('version')!r}")
        counts = {ctx: Counter(syms) for ctx, syms in obj["counts"].items()}
        return cls(order=obj["order"], k=obj["k"], counts=counts)

    @classmethod
    def load(cls, path: str | Path) -> "NgramModel":
        try:
            with open(path, encoding="utf-8") as f:
                obj = json.load(f)
        except OSError as e:
            raise InputError(f"cannot read model {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise InputError(f"{path}: invalid model JSON: {e}") from e
        return cls.from_dict(obj)


def train_char_ngram(corpus: list[str], order: int = 5, k: float = 0.1) -> NgramModel:
    """Count all order-length windows over BOS-padded, EOS-terminated texts."""
    if not corpus:
        raise InputError("training corpus is empty")
    counts: dict[str, Counter] = {}
    for text in corpus:
        stream = [BOS] * (order - 1) + list(text) + [EOS]
        for i in range(order - 1, len(stream)):
            ctx = "".join(stream[i - order + 1:i])
            counter = counts.get(ctx)
            if counter is None:
                counter = counts[ctx] = Counter()
            counter[stream[i]] += 1
    return NgramModel(order=order, k=k, counts=counts)


def score(model: NgramModel, text: str) -> LmScore:
    """Module-level scoring entry point; identical to `model.score`."""
    return model.score(text)
