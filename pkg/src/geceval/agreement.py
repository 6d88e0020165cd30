"""Quadratically weighted kappa between two raters."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from geceval.errors import InputError, UndefinedStatisticError


@dataclass(frozen=True)
class RatingMatrix:
    """Paired ratings from two raters on a shared ordinal scale 1..categories."""

    categories: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.categories < 2:
            raise InputError(f"need >= 2 categories, got {self.categories}")
        for a, b in self.pairs:
            if not (1 <= a <= self.categories and 1 <= b <= self.categories):
                raise InputError(
                    f"rating pair ({a}, {b}) outside 1..{self.categories}"
                )


def qwk(m: RatingMatrix) -> float:
    """kappa = 1 - sum(w * O) / sum(w * E), with quadratic weights
    w_ij = (i - j)^2 / (k - 1)^2, O the joint proportion matrix and E the
    outer product of the two marginal distributions.

    Raises UndefinedStatisticError when the expected weighted disagreement
    is zero (e.g. both raters constant and equal), rather than returning a
    number.
    """
    if len(m.pairs) < 2:
        raise InputError(f"need >= 2 rating pairs, got {len(m.pairs)}")
    k = m.categories
    observed = np.zeros((k, k))
    for a, b in m.pairs:
        observed[a - 1, b - 1] += 1
    observed /= len(m.pairs)

    marginal_a = observed.sum(axis=1)
    marginal_b = observed.sum(axis=0)
    expected = np.outer(marginal_a, marginal_b)

    idx = np.arange(k)
    weights = ((idx[:, None] - idx[None, :]) ** 2) / (k - 1) ** 2

    denom = float((weights * expected).sum())
    if denom == 0.0:
        raise UndefinedStatisticError(
            "expected weighted disagreement is zero; kappa undefined "
            "(are both raters constant and equal?)"
        )
    return 1.0 - float((weights * observed).sum()) / denom
