"""Pure-Python distance kernels.

Reference implementations of the hot inner loops; `_kernels.pyx` holds the
compiled equivalents.  Both must stay exactly equivalent: the test suite
cross-checks them whenever the extension is available.
"""

from __future__ import annotations

BACKEND = "python"


def levenshtein(a: str, b: str) -> int:
    """Character-level Levenshtein distance over code points.

    Two-row dynamic program; unit costs for insertion, deletion and
    substitution.
    """
    if a == b:
        return 0
    la, lb = len(a), len(b)
    if la == 0:
        return lb
    if lb == 0:
        return la
    if lb > la:
        a, b = b, a
        la, lb = lb, la
    prev = list(range(lb + 1))
    cur = [0] * (lb + 1)
    for i in range(1, la + 1):
        cur[0] = i
        ca = a[i - 1]
        for j in range(1, lb + 1):
            cost = 0 if ca == b[j - 1] else 1
            d = prev[j - 1] + cost
            u = prev[j] + 1
            if u < d:
                d = u
            left = cur[j - 1] + 1
            if left < d:
                d = left
            cur[j] = d
        prev, cur = cur, prev
    return prev[lb]
