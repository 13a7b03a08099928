# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_fallback`` for the reference versions."""

import numpy as np

from libc.stdint cimport uint8_t, uint64_t, int64_t


def gf2_rref(uint64_t[:, ::1] rows, Py_ssize_t npivot):
    cdef Py_ssize_t m = rows.shape[0]
    cdef Py_ssize_t w = rows.shape[1]
    cdef Py_ssize_t r = 0, c, i, k, word
    cdef uint64_t bit, tmp
    pivots = []
    if m == 0:
        return pivots
    for c in range(npivot):
        if r == m:
            break
        word = c >> 6
        bit = (<uint64_t>1) << (c & 63)
        i = r
        while i < m and not (rows[i, word] & bit):
            i += 1
        if i == m:
            continue
        if i != r:
            for k in range(w):
                tmp = rows[i, k]
                rows[i, k] = rows[r, k]
                rows[r, k] = tmp
        # rows >= r are zero left of column c, so the xor can start at ``word``
        with nogil:
            for i in range(m):
                if i != r and (rows[i, word] & bit):
                    for k in range(word, w):
                        rows[i, k] ^= rows[r, k]
        pivots.append(c)
        r += 1
    return pivots


def cup_eval(const uint8_t[::1] u, const uint8_t[::1] v,
             const int64_t[:, ::1] front, const int64_t[:, ::1] back):
    cdef Py_ssize_t n = front.shape[0]
    cdef Py_ssize_t nt = front.shape[1]
    cdef Py_ssize_t s, t
    cdef uint8_t acc
    out = np.zeros(n, dtype=np.uint8)
    cdef uint8_t[::1] o = out
    with nogil:
        for s in range(n):
            acc = 0
            for t in range(nt):
                acc ^= u[front[s, t]] & v[back[s, t]]
            o[s] = acc & 1
    return out
