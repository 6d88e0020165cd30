import numpy as np
import pytest

from geceval.errors import InputError
from geceval.mds import _pairwise_distances, smacof

COLLINEAR = np.array([[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]])


def assert_monotone(trace):
    for earlier, later in zip(trace, trace[1:]):
        assert later <= earlier


def test_two_points_exact():
    d = np.array([[0.0, 1.0], [1.0, 0.0]])
    x, trace = smacof(d, iterations=500, seed=0)
    assert np.linalg.norm(x[0] - x[1]) == pytest.approx(1.0, abs=1e-9)
    assert_monotone(trace)


def test_collinear_configuration_recovered():
    x, trace = smacof(COLLINEAR, iterations=500, seed=0, eps=1e-15)
    embedded = _pairwise_distances(x)
    assert np.abs(embedded - COLLINEAR).max() < 1e-6
    assert trace[-1] < 1e-9
    assert_monotone(trace)


def test_planar_points_recovered():
    rng = np.random.default_rng(42)
    points = rng.uniform(0.0, 1.0, (10, 2))
    d = np.sqrt(((points[:, None, :] - points[None, :, :]) ** 2).sum(-1))
    x, trace = smacof(d, iterations=500, seed=0)
    assert len(trace) - 1 <= 500
    assert np.abs(_pairwise_distances(x) - d).max() < 1e-3
    assert_monotone(trace)


def test_stress_non_increasing_across_seeds_and_fixtures():
    rng = np.random.default_rng(7)
    fixtures = [COLLINEAR]
    pts = rng.uniform(0, 1, (8, 2))
    fixtures.append(np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1)))
    noisy = fixtures[1] + rng.uniform(0, 0.08, fixtures[1].shape)
    noisy = (noisy + noisy.T) / 2
    np.fill_diagonal(noisy, 0.0)
    fixtures.append(noisy)
    for d in fixtures:
        for seed in range(5):
            _, trace = smacof(d, iterations=300, seed=seed)
            assert_monotone(trace)


def test_final_stress_stable_across_seeds_on_nld_style_fixture():
    # tree-shaped distances like real version sets produce: small positive
    # stress whose final value should not depend much on the seed
    from geceval.correction_tree import VersionSet, pairwise_nld_matrix

    base = {
        "original": "jag tycker om att spela fotboll pa helgerna med mina vanner",
        "grammatical": "jag tycker om att spela fotboll på helgerna med mina vänner",
        "system-a": "jag tycker om att spela fotball på helgen med mina vänner",
        "system-b": "jag gillar att spela fotboll på helgerna tillsammans med vännerna",
        "fluent": "på helgerna tycker jag om att spela fotboll med mina vänner",
        "postedit-a": "jag tycker om att spela fotboll på helgen med mina vänner",
    }
    other = {k: v.replace("fotboll", "tennis").replace("fotball", "tenis")
             for k, v in base.items()}
    matrix = pairwise_nld_matrix([
        VersionSet("s1", base), VersionSet("s2", other),
    ])
    finals = [smacof(matrix.values, iterations=500, seed=s)[1][-1] for s in range(5)]
    assert (max(finals) - min(finals)) / min(finals) < 0.05


def test_zero_matrix_embeds_at_origin():
    d = np.zeros((4, 4))
    x, trace = smacof(d, iterations=100, seed=0)
    assert np.all(x == 0.0)
    assert trace == [0.0]


def test_input_validation():
    with pytest.raises(InputError):
        smacof(np.zeros((2, 3)))
    with pytest.raises(InputError):
        smacof(np.zeros((1, 1)))


def test_embedding_only_up_to_similarity_transform():
    # two seeds give layouts whose pairwise distances agree even though
    # the raw coordinates differ
    x0, _ = smacof(COLLINEAR, iterations=500, seed=0, eps=1e-15)
    x1, _ = smacof(COLLINEAR, iterations=500, seed=1, eps=1e-15)
    d0 = _pairwise_distances(x0)
    d1 = _pairwise_distances(x1)
    assert np.abs(d0 - d1).max() < 1e-5
    assert not np.allclose(x0, x1)
