"""Character-level edit distances.

The Levenshtein inner loop dominates the runtime of post-edit reports,
reference-free score gating and pairwise version matrices, so it is backed
by a compiled extension when one was built.  The pure-Python kernel is
selected automatically when the extension is missing, or when the
environment variable GECEVAL_PURE_PYTHON=1 forces it.
"""

from __future__ import annotations

import os

from geceval import _kernels_py

if os.environ.get("GECEVAL_PURE_PYTHON") == "1":
    _impl = _kernels_py
else:
    try:
        from geceval import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py


def kernel_backend() -> str:
    """Active kernel backend: "compiled" or "python"."""
    return _impl.BACKEND


def levenshtein(a: str, b: str) -> int:
    """Minimal number of character insertions, deletions and substitutions
    transforming `a` into `b`.  Symmetric; satisfies the metric axioms."""
    return _impl.levenshtein(a, b)


def nld(a: str, b: str) -> float:
    """Normalized Levenshtein distance: levenshtein(a, b) / max(|a|, |b|),
    measured over code points.

    Always in [0, 1]; 0.0 when the strings are equal (including the
    both-empty case); 1.0 when they share no aligned characters.
    """
    if a == b:
        return 0.0
    return _impl.levenshtein(a, b) / max(len(a), len(b))
