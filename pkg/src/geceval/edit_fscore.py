"""Edit-based F_beta: compare hypothesis edits against gold edits.

An edit matches iff its span and replacement are identical.  Small beta
biases the score towards precision; the 0.18 preset reproduces the setting
that correlated best with human rankings in comparative GEC evaluations.
"""

from __future__ import annotations

from dataclasses import dataclass

from geceval.edits import EditSet
from geceval.errors import InputError

# Strongly precision-biased preset.
PRECISION_BIASED_BETA = 0.18


@dataclass(frozen=True)
class FBetaConfig:
    beta: float = 0.5

    def __post_init__(self):
        if self.beta <= 0:
            raise InputError(f"beta must be positive, got {self.beta}")


def _prf(tp: int, n_hyp: int, n_gold: int, beta: float) -> tuple[float, float, float]:
    precision = tp / n_hyp if n_hyp else 1.0
    recall = tp / n_gold if n_gold else 1.0
    if precision + recall == 0:
        return precision, recall, 0.0
    b2 = beta * beta
    f = (1 + b2) * precision * recall / (b2 * precision + recall)
    return precision, recall, f


def _check_sources(gold: EditSet, hyp: EditSet) -> None:
    if (
        gold.source_len is not None
        and hyp.source_len is not None
        and gold.source_len != hyp.source_len
    ):
        raise InputError(
            f"edit sets extracted against different sources "
            f"({gold.source_len} vs {hyp.source_len} tokens)"
        )


def fbeta_edits(
    gold: EditSet, hyp: EditSet, cfg: FBetaConfig | None = None
) -> tuple[float, float, float]:
    """(precision, recall, F_beta) for one sentence.

    Empty hypothesis counts as precision 1.0, empty gold as recall 1.0.
    """
    cfg = cfg or FBetaConfig()
    _check_sources(gold, hyp)
    tp = len(set(gold.edits) & set(hyp.edits))
    return _prf(tp, len(hyp), len(gold), cfg.beta)


def fbeta_corpus(
    pairs: list[tuple[EditSet, EditSet]], cfg: FBetaConfig | None = None
) -> tuple[float, float, float]:
    """Corpus (precision, recall, F_beta): counts pooled over sentences
    before dividing."""
    cfg = cfg or FBetaConfig()
    tp = n_hyp = n_gold = 0
    for gold, hyp in pairs:
        _check_sources(gold, hyp)
        tp += len(set(gold.edits) & set(hyp.edits))
        n_hyp += len(hyp)
        n_gold += len(gold)
    return _prf(tp, n_hyp, n_gold, cfg.beta)
