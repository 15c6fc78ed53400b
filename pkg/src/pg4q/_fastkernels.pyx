# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot enumeration kernels.

Same contracts as pg4q._kernels_py; see there for documentation.
"""

import numpy as np

from libc.stdint cimport int32_t, int64_t, uint8_t, uint64_t
from libc.string cimport memcpy

BACKEND = "cython"

_POP8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)


cdef inline int64_t popcount64(uint64_t x) noexcept nogil:
    x = x - ((x >> 1) & 0x5555555555555555ULL)
    x = (x & 0x3333333333333333ULL) + ((x >> 2) & 0x3333333333333333ULL)
    x = (x + (x >> 4)) & 0x0F0F0F0F0F0F0F0FULL
    return <int64_t> ((x * 0x0101010101010101ULL) >> 56)


def incidence_matrix(uint8_t[:, ::1] duals, uint8_t[:, ::1] points, uint8_t[:, ::1] mul):
    cdef Py_ssize_t n = duals.shape[0], m = points.shape[0], d = duals.shape[1]
    cdef Py_ssize_t i, j, k
    cdef uint8_t acc
    out_arr = np.empty((n, m), dtype=np.uint8)
    cdef uint8_t[:, ::1] out = out_arr
    with nogil:
        for j in range(n):
            for i in range(m):
                acc = 0
                for k in range(d):
                    acc ^= mul[duals[j, k], points[i, k]]
                out[j, i] = 1 if acc == 0 else 0
    return out_arr


def expand_span(uint8_t[:, :, ::1] bases, uint8_t[:, ::1] reps,
                uint8_t[:, ::1] mul, int degree, int32_t[::1] code_to_index):
    cdef Py_ssize_t n = bases.shape[0], k = bases.shape[1], d = bases.shape[2]
    cdef Py_ssize_t m = reps.shape[0]
    cdef Py_ssize_t i, r, j, c
    cdef int64_t code
    cdef uint8_t[8] acc
    out_arr = np.empty((n, m), dtype=np.int32)
    cdef int32_t[:, ::1] out = out_arr
    with nogil:
        for i in range(n):
            for r in range(m):
                for c in range(d):
                    acc[c] = 0
                for j in range(k):
                    if reps[r, j]:
                        for c in range(d):
                            acc[c] ^= mul[reps[r, j], bases[i, j, c]]
                code = 0
                for c in range(d):
                    code |= (<int64_t> acc[c]) << (degree * c)
                out[i, r] = code_to_index[code]
    return out_arr


def anchored_counts(int32_t[:, ::1] anchors, uint8_t[:, ::1] rows, uint8_t[::1] mask):
    cdef Py_ssize_t n = anchors.shape[0], k = anchors.shape[1], w = rows.shape[1]
    cdef Py_ssize_t i, j, b, w8 = w - (w % 8)
    cdef int64_t total
    cdef uint8_t byte
    cdef uint64_t word, other
    cdef const uint8_t *base
    out_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    cdef int64_t[::1] pop = _POP8
    with nogil:
        for i in range(n):
            total = 0
            # 64 bits at a time over the aligned prefix
            for b in range(0, w8, 8):
                base = &rows[anchors[i, 0], b]
                memcpy(&word, base, 8)
                memcpy(&other, &mask[b], 8)
                word &= other
                for j in range(1, k):
                    base = &rows[anchors[i, j], b]
                    memcpy(&other, base, 8)
                    word &= other
                total += popcount64(word)
            for b in range(w8, w):
                byte = rows[anchors[i, 0], b] & mask[b]
                for j in range(1, k):
                    byte &= rows[anchors[i, j], b]
                total += pop[byte]
            out[i] = total
    return out_arr
