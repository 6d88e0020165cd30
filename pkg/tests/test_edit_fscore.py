import pytest

from geceval.edit_fscore import FBetaConfig, PRECISION_BIASED_BETA, fbeta_corpus, fbeta_edits
from geceval.edits import Edit, EditSet
from geceval.errors import InputError

E1 = Edit(0, 1, ("x",))
E2 = Edit(2, 3, ("y",))
E3 = Edit(4, 5, ("z",))


def _es(*edits, source_len=10):
    return EditSet(tuple(edits), source_len=source_len)


def test_identical_nonempty_sets():
    gold = _es(E1, E2)
    assert fbeta_edits(gold, _es(E1, E2)) == (1.0, 1.0, 1.0)


def test_half_overlap_any_beta():
    gold = _es(E1, E2)
    hyp = _es(E1, E3)
    for beta in (0.18, 0.5, 1.0, 2.0):
        p, r, f = fbeta_edits(gold, hyp, FBetaConfig(beta=beta))
        assert (p, r, f) == (0.5, 0.5, 0.5)


def test_empty_hypothesis_convention():
    assert fbeta_edits(_es(E1), _es()) == (1.0, 0.0, 0.0)


def test_empty_gold_convention():
    p, r, f = fbeta_edits(_es(), _es(E1))
    assert (p, r) == (0.0, 1.0)
    assert f == 0.0


def test_both_empty():
    assert fbeta_edits(_es(), _es()) == (1.0, 1.0, 1.0)


def test_beta_to_zero_approaches_precision():
    gold = _es(E1, E2, E3)
    hyp = _es(E1)  # P = 1.0, R = 1/3
    _, _, f_tiny = fbeta_edits(gold, hyp, FBetaConfig(beta=0.001))
    assert abs(f_tiny - 1.0) < 1e-3
    _, _, f_preset = fbeta_edits(gold, hyp, FBetaConfig(beta=PRECISION_BIASED_BETA))
    assert f_tiny > f_preset > fbeta_edits(gold, hyp, FBetaConfig(beta=1.0))[2]


def test_fbeta_increasing_in_precision_and_recall():
    def f(p, r, beta=0.5):
        b2 = beta * beta
        return (1 + b2) * p * r / (b2 * p + r) if p + r else 0.0

    grid = [0.1, 0.3, 0.5, 0.9]
    for r in grid:
        values = [f(p, r) for p in grid]
        assert values == sorted(values) and len(set(values)) == len(values)
    for p in grid:
        values = [f(p, r) for r in grid]
        assert values == sorted(values) and len(set(values)) == len(values)


def test_corpus_pools_counts():
    pairs = [
        (_es(E1, E2), _es(E1)),      # tp 1, hyp 1, gold 2
        (_es(E3), _es(E2, E3)),      # tp 1, hyp 2, gold 1
    ]
    p, r, f = fbeta_corpus(pairs, FBetaConfig(beta=1.0))
    assert p == pytest.approx(2 / 3)
    assert r == pytest.approx(2 / 3)
    assert f == pytest.approx(2 / 3)


def test_mismatched_source_lengths_rejected():
    gold = EditSet((E1,), source_len=5)
    hyp = EditSet((E1,), source_len=7)
    with pytest.raises(InputError, match="different sources"):
        fbeta_edits(gold, hyp)


def test_config_validation():
    with pytest.raises(InputError):
        FBetaConfig(beta=0.0)
    with pytest.raises(InputError):
        FBetaConfig(beta=-1.0)
