# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled distance kernels; must match _kernels_py exactly."""

from libc.stdlib cimport free, malloc

BACKEND = "compiled"


def levenshtein(str a, str b):
    """Character-level Levenshtein distance over code points."""
    if a == b:
        return 0
    cdef Py_ssize_t la = len(a)
    cdef Py_ssize_t lb = len(b)
    if la == 0:
        return lb
    if lb == 0:
        return la
    cdef str tmp
    cdef Py_ssize_t t
    if lb > la:
        tmp = a; a = b; b = tmp
        t = la; la = lb; lb = t

    cdef Py_ssize_t *prev = <Py_ssize_t *> malloc((lb + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *cur = <Py_ssize_t *> malloc((lb + 1) * sizeof(Py_ssize_t))
    if prev == NULL or cur == NULL:
        if prev != NULL:
            free(prev)
        if cur != NULL:
            free(cur)
        raise MemoryError()

    cdef Py_ssize_t i, j, d, u, left, result
    cdef Py_UCS4 ca
    cdef Py_ssize_t *swap
    try:
        for j in range(lb + 1):
            prev[j] = j
        for i in range(1, la + 1):
            cur[0] = i
            ca = a[i - 1]
            for j in range(1, lb + 1):
                d = prev[j - 1] + (0 if ca == <Py_UCS4> b[j - 1] else 1)
                u = prev[j] + 1
                if u < d:
                    d = u
                left = cur[j - 1] + 1
                if left < d:
                    d = left
                cur[j] = d
            swap = prev; prev = cur; cur = swap
        result = prev[lb]
    finally:
        free(prev)
        free(cur)
    return result
