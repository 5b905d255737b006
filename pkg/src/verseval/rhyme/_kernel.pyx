# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled rhyme span kernel; semantics are defined by the pure twin _kernel_py."""

import numpy as np


def mark_rhymes(line_idx, nucleus, coda, compat, int window, int min_span, int max_span):
    cdef const int[::1] line = np.ascontiguousarray(line_idx, dtype=np.intc)
    cdef const int[::1] nuc = np.ascontiguousarray(nucleus, dtype=np.intc)
    cdef const int[::1] cod = np.ascontiguousarray(coda, dtype=np.intc)
    cdef const unsigned char[:, ::1] compat_m = np.ascontiguousarray(compat, dtype=np.uint8)
    cdef Py_ssize_t n = line.shape[0]
    marked_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] marked = marked_arr
    pairs = []
    by_diag = {}
    cdef Py_ssize_t s, i, j, t
    cdef int ci, diag
    cdef bint ok, covered
    cdef Py_ssize_t top = max_span if max_span < n else n

    for s in range(top, min_span - 1, -1):
        for i in range(0, n - 2 * s + 1):
            if line[i] != line[i + s - 1]:
                continue
            ci = cod[i + s - 1]
            for j in range(i + s, n - s + 1):
                if line[j] - line[i] > window:
                    break
                if line[j] != line[j + s - 1]:
                    continue
                if not compat_m[ci, cod[j + s - 1]]:
                    continue
                ok = True
                for t in range(s):
                    if nuc[i + t] != nuc[j + t]:
                        ok = False
                        break
                if not ok:
                    continue
                diag = j - i
                covered = False
                for i0, s0 in by_diag.get(diag, ()):
                    if i0 <= i and i + s <= i0 + s0:
                        covered = True
                        break
                if covered:
                    continue
                by_diag.setdefault(diag, []).append((i, s))
                pairs.append((i, j, s))
                for t in range(s):
                    marked[i + t] = 1
                    marked[j + t] = 1
    return marked_arr.tolist(), pairs
