import numpy as np
import pytest

from geceval.agreement import RatingMatrix, qwk
from geceval.errors import InputError, UndefinedStatisticError


def test_identical_raters_with_spread():
    m = RatingMatrix(4, ((1, 1), (2, 2), (4, 4), (3, 3)))
    assert qwk(m) == 1.0


def test_two_category_antisymmetric():
    # weighted observed disagreement 1, expected 0.5
    m = RatingMatrix(2, ((1, 2), (2, 1)))
    assert qwk(m) == -1.0


def test_independent_uniform_near_zero():
    rng = np.random.default_rng(1234)
    pairs = tuple(
        (int(a), int(b))
        for a, b in zip(rng.integers(1, 5, 10_000), rng.integers(1, 5, 10_000))
    )
    assert abs(qwk(RatingMatrix(4, pairs))) < 0.05


def test_rater_swap_invariance():
    pairs = ((1, 2), (2, 2), (3, 4), (4, 4), (1, 1), (2, 3))
    swapped = tuple((b, a) for a, b in pairs)
    assert qwk(RatingMatrix(4, pairs)) == pytest.approx(
        qwk(RatingMatrix(4, swapped))
    )


def test_order_preserving_relabel_invariance():
    # shifting every label up by one inside a wider scale keeps all
    # pairwise distances, marginal shapes and therefore kappa intact
    pairs = ((1, 2), (2, 2), (3, 1), (1, 1), (3, 3), (2, 3))
    shifted = tuple((a + 1, b + 1) for a, b in pairs)
    assert qwk(RatingMatrix(4, pairs)) == pytest.approx(
        qwk(RatingMatrix(4, shifted))
    )


def test_constant_equal_raters_undefined():
    with pytest.raises(UndefinedStatisticError):
        qwk(RatingMatrix(4, ((2, 2), (2, 2), (2, 2))))


def test_needs_two_pairs():
    with pytest.raises(InputError):
        qwk(RatingMatrix(4, ((1, 2),)))


def test_rating_out_of_range_rejected():
    with pytest.raises(InputError):
        RatingMatrix(4, ((0, 1),))
    with pytest.raises(InputError):
        RatingMatrix(4, ((1, 5),))


def test_categories_validation():
    with pytest.raises(InputError):
        RatingMatrix(1, ((1, 1),))


def test_hand_computed_example():
    # O = [[0.25, 0.25], [0, 0.5]]; w offdiag = 1
    # marginals a = (0.5, 0.5), b = (0.25, 0.75) -> E offdiag = 0.375 + 0.125
    m = RatingMatrix(2, ((1, 1), (1, 2), (2, 2), (2, 2)))
    expected = 1 - 0.25 / 0.5
    assert qwk(m) == pytest.approx(expected)
