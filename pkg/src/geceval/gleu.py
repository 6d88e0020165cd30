"""Corpus-level GLEU: n-gram precision that rewards reference overlap and
penalizes n-grams retained from the erroneous source.

For each order n, sentence statistics are

    match_n      = sum_g min(count_hyp(g), count_ref(g))
    srcpenalty_n = sum_g min(count_hyp(g), max(0, count_src(g) - count_ref(g)))
    numerator_n  = max(0, match_n - lambda * srcpenalty_n)
    denominator_n = number of hypothesis n-grams

pooled over the corpus, and

    GLEU = BP * exp(sum_n (1/N) * ln(numerator_n / denominator_n))

with brevity penalty BP = 1 when the total hypothesis length exceeds the
total reference length, else exp(1 - ref_len/hyp_len).  The score is 0 when
any pooled numerator is 0.

With multiple references per sentence, the score is averaged over
`num_reference_samples` uniform per-sentence reference draws.  Each
sentence's draws are seeded from its id (falling back to its position), so
splitting the corpus into shards cannot change them.
"""

from __future__ import annotations

import hashlib
import math
import random
from collections import Counter
from dataclasses import dataclass

from geceval.errors import InputError


@dataclass(frozen=True)
class GleuConfig:
    max_n: int = 4
    penalty_weight: float = 1.0
    num_reference_samples: int = 500
    seed: int = 0

    def __post_init__(self):
        if self.max_n < 1:
            raise InputError(f"max_n must be >= 1, got {self.max_n}")
        if self.penalty_weight < 0:
            raise InputError(f"penalty_weight must be >= 0, got {self.penalty_weight}")
        if self.num_reference_samples < 1:
            raise InputError(
                f"num_reference_samples must be >= 1, got {self.num_reference_samples}"
            )


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def sentence_stats(
    source: list[str],
    hypothesis: list[str],
    reference: list[str],
    cfg: GleuConfig,
) -> list[float]:
    """Sufficient statistics for one sentence against one reference:
    [hyp_len, ref_len, num_1, den_1, ..., num_N, den_N]."""
    stats: list[float] = [float(len(hypothesis)), float(len(reference))]
    lam = cfg.penalty_weight
    for n in range(1, cfg.max_n + 1):
        hyp_ngrams = _ngrams(hypothesis, n)
        ref_ngrams = _ngrams(reference, n)
        src_ngrams = _ngrams(source, n)

        match = sum((hyp_ngrams & ref_ngrams).values())
        # n-gram surplus of the source over the reference: counts the
        # erroneous material a faithful correction should have removed
        surplus = src_ngrams - ref_ngrams
        penalty = sum((hyp_ngrams & surplus).values())

        stats.append(max(0.0, match - lam * penalty))
        stats.append(float(max(0, len(hypothesis) - n + 1)))
    return stats


def score_from_stats(stats: list[float], max_n: int) -> float:
    """Corpus score from pooled sentence statistics (see sentence_stats)."""
    hyp_len, ref_len = stats[0], stats[1]
    log_sum = 0.0
    for i in range(2, 2 * max_n + 2, 2):
        num, den = stats[i], stats[i + 1]
        if num == 0 or den == 0:
            return 0.0
        log_sum += math.log(num / den)
    if hyp_len == 0:
        return 0.0
    bp = 1.0 if hyp_len > ref_len else math.exp(1.0 - ref_len / hyp_len)
    return bp * math.exp(log_sum / max_n)


def _reference_draws(sentence_id: str, n_refs: int, cfg: GleuConfig) -> list[int]:
    """Per-sentence reference draws, derived from (seed, sentence id) only,
    so the draws are independent of corpus position and sharding."""
    if n_refs == 1:
        return [0] * cfg.num_reference_samples
    key = hashlib.blake2b(
        f"{cfg.seed}\x00{sentence_id}".encode("utf-8"), digest_size=8
    ).digest()
    rng = random.Random(int.from_bytes(key, "big"))
    return [rng.randrange(n_refs) for _ in range(cfg.num_reference_samples)]


def gleu_corpus(
    sources: list[list[str]],
    hypotheses: list[list[str]],
    references: list[list[list[str]]],
    cfg: GleuConfig | None = None,
    ids: list[str] | None = None,
) -> float:
    """Corpus GLEU over tokenized sentences.

    `references[i]` is the list of reference token sequences for sentence i
    (at least one each).  `ids` feeds the per-sentence sampling seeds; when
    omitted, positional ids "line-<n>" are used.
    """
    cfg = cfg or GleuConfig()
    if not (len(sources) == len(hypotheses) == len(references)):
        raise InputError(
            f"length mismatch: {len(sources)} sources, {len(hypotheses)} hypotheses, "
            f"{len(references)} reference lists"
        )
    if not sources:
        raise InputError("empty corpus")
    if any(len(refs) == 0 for refs in references):
        bad = next(i for i, refs in enumerate(references) if not refs)
        raise InputError(f"sentence index {bad} has no reference")
    if ids is None:
        ids = [f"line-{i + 1}" for i in range(len(sources))]
    elif len(ids) != len(sources):
        raise InputError(f"length mismatch: {len(ids)} ids, {len(sources)} sources")

    width = 2 * cfg.max_n + 2

    if all(len(refs) == 1 for refs in references):
        pooled = [0.0] * width
        for src, hyp, refs in zip(sources, hypotheses, references):
            stats = sentence_stats(src, hyp, refs[0], cfg)
            for k in range(width):
                pooled[k] += stats[k]
        return score_from_stats(pooled, cfg.max_n)

    # Multiple references: mean corpus score over per-sentence draws.
    draws = [_reference_draws(sid, len(refs), cfg) for sid, refs in zip(ids, references)]
    iter_pooled = [[0.0] * width for _ in range(cfg.num_reference_samples)]
    for i, (src, hyp, refs) in enumerate(zip(sources, hypotheses, references)):
        cache: dict[int, list[float]] = {}
        for j in range(cfg.num_reference_samples):
            r = draws[i][j]
            stats = cache.get(r)
            if stats is None:
                stats = sentence_stats(src, hyp, refs[r], cfg)
                cache[r] = stats
            row = iter_pooled[j]
            for k in range(width):
                row[k] += stats[k]
    scores = [score_from_stats(row, cfg.max_n) for row in iter_pooled]
    return sum(scores) / len(scores)
