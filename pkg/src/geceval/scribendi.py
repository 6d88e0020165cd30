"""Reference-free sentence scoring: language-model preference gated by
string similarity.

A hypothesis earns +1 when the language model prefers it over the source
AND it stays string-similar to the source; it earns 0 when it is the
source unchanged, and -1 otherwise.  The similarity gate is what rejects
degenerate "corrections" that a language model loves but that share almost
nothing with the input (e.g. turning "He is going school." into
"He He He He He He.").
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Protocol

from geceval.distance import nld
from geceval.errors import InputError, ScorerError
from geceval.textnorm import detokenize, normalize, tokenize


class PerplexityScorer(Protocol):
    def perplexity(self, text: str) -> float: ...


@dataclass(frozen=True)
class ScribendiConfig:
    similarity_threshold: float = 0.8

    def __post_init__(self):
        if not 0.0 <= self.similarity_threshold <= 1.0:
            raise InputError(
                f"similarity_threshold must be in [0, 1], got {self.similarity_threshold}"
            )


def _token_sorted(text: str) -> str:
    return detokenize(sorted(tokenize(text)))


def scribendi_sentence(
    source: str,
    hypothesis: str,
    lm: PerplexityScorer,
    cfg: ScribendiConfig | None = None,
    sentence_id: str | None = None,
) -> int:
    """Score one (source, hypothesis) pair as -1, 0 or +1.

    0 iff the normalized hypothesis equals the normalized source; +1 iff
    the model assigns the hypothesis lower perplexity than the source and
    max(levenshtein ratio, token-sort ratio) >= threshold; else -1.
    """
    cfg = cfg or ScribendiConfig()
    src = normalize(source)
    hyp = normalize(hypothesis)
    if src == hyp:
        return 0
    try:
        ppl_src = lm.perplexity(src)
        ppl_hyp = lm.perplexity(hyp)
    except Exception as e:
        raise ScorerError(f"language model failed: {e}", sentence_id=sentence_id) from e

    lev_ratio = 1.0 - nld(src, hyp)
    token_sort_ratio = 1.0 - nld(_token_sorted(src), _token_sorted(hyp))
    if ppl_hyp < ppl_src and max(lev_ratio, token_sort_ratio) >= cfg.similarity_threshold:
        return 1
    return -1


def scribendi_corpus(
    pairs: list[tuple[str, str]],
    lm: PerplexityScorer,
    cfg: ScribendiConfig | None = None,
    ids: list[str] | None = None,
    jobs: int = 1,
) -> float:
    """Arithmetic mean of sentence scores, in [-1, 1].

    Sentence scores are integers, so any sharding or parallel schedule
    yields the same pooled sum exactly.
    """
    cfg = cfg or ScribendiConfig()
    if not pairs:
        raise InputError("empty corpus")
    if ids is None:
        ids = [f"line-{i + 1}" for i in range(len(pairs))]

    def one(arg: tuple[str, tuple[str, str]]) -> int:
        sid, (src, hyp) = arg
        return scribendi_sentence(src, hyp, lm, cfg, sentence_id=sid)

    items = list(zip(ids, pairs))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            scores = list(pool.map(one, items))
    else:
        scores = [one(item) for item in items]
    return sum(scores) / len(scores)
