import functools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from geceval import _kernels_py
from geceval.distance import kernel_backend, levenshtein, nld


def brute_levenshtein(a: str, b: str) -> int:
    """Independent oracle: memoized recursion over the full subproblem tree."""

    @functools.lru_cache(maxsize=None)
    def rec(i: int, j: int) -> int:
        if i == 0:
            return j
        if j == 0:
            return i
        cost = 0 if a[i - 1] == b[j - 1] else 1
        return min(rec(i - 1, j) + 1, rec(i, j - 1) + 1, rec(i - 1, j - 1) + cost)

    return rec(len(a), len(b))


def test_identity():
    assert levenshtein("abc", "abc") == 0


def test_insertions_only():
    assert levenshtein("", "abc") == 3
    assert levenshtein("abc", "") == 3


def test_kitten_sitting():
    assert brute_levenshtein("kitten", "sitting") == 3
    assert levenshtein("kitten", "sitting") == 3


def test_against_oracle_random():
    rng = random.Random(7)
    alphabet = "abcå"
    for _ in range(300):
        a = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 8)))
        b = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 8)))
        assert levenshtein(a, b) == brute_levenshtein(a, b), (a, b)


short_text = st.text(alphabet="abå", max_size=8)


@given(short_text, short_text)
def test_symmetry(a, b):
    assert levenshtein(a, b) == levenshtein(b, a)


@given(short_text, short_text)
def test_identity_of_indiscernibles(a, b):
    assert (levenshtein(a, b) == 0) == (a == b)


@given(short_text, short_text, short_text)
def test_triangle_inequality(a, b, c):
    assert levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c)


@given(short_text, short_text)
def test_matches_brute_force(a, b):
    assert levenshtein(a, b) == brute_levenshtein(a, b)


def test_nld_identity():
    assert nld("abc", "abc") == 0.0


def test_nld_substitution():
    assert nld("abc", "abd") == pytest.approx(1 / 3)


def test_nld_full_insertion():
    assert nld("", "ab") == 1.0


def test_nld_both_empty():
    assert nld("", "") == 0.0


@given(short_text, short_text)
def test_nld_bounds_and_zero_iff_equal(a, b):
    v = nld(a, b)
    assert 0.0 <= v <= 1.0
    assert (v == 0.0) == (a == b)


@pytest.mark.skipif(kernel_backend() != "compiled",
                    reason="compiled kernel not built")
def test_compiled_matches_pure_python():
    from geceval import _kernels

    rng = random.Random(11)
    alphabet = "abcdeå é🙂"
    for _ in range(500):
        a = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 30)))
        b = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 30)))
        assert _kernels.levenshtein(a, b) == _kernels_py.levenshtein(a, b), (a, b)
