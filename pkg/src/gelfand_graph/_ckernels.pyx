# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the kernels in ``_pykernels`` (same arguments, same results)."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int32_t, int64_t, uint64_t
from libc.stdlib cimport qsort

from ._pykernels import KernelInvariantError
from .laurent import CoefficientOverflow

cnp.import_array()

BACKEND = "cython"

cdef extern from *:
    """
    static inline int gg_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int gg_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    static inline int gg_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    """
    int gg_add_ovf(long long a, long long b, long long *r) nogil
    int gg_sub_ovf(long long a, long long b, long long *r) nogil
    int gg_mul_ovf(long long a, long long b, long long *r) nogil


cdef int _cmp_int32(const void *a, const void *b) noexcept nogil:
    cdef int32_t x = (<const int32_t *>a)[0]
    cdef int32_t y = (<const int32_t *>b)[0]
    return (x > y) - (x < y)


def n_words(Py_ssize_t n_elems):
    return max(1, (n_elems + 63) // 64)


def bit_closure(int32_t[:, ::1] conj, int32_t[::1] lengths, bint upward):
    cdef Py_ssize_t n_gen = conj.shape[0]
    cdef Py_ssize_t n = conj.shape[1]
    cdef Py_ssize_t words = n_words(n)
    bits = np.zeros((n, words), dtype=np.uint64)
    cdef uint64_t[:, ::1] b = bits
    cdef Py_ssize_t step, x, g, k
    cdef int32_t y
    for step in range(n):
        x = n - 1 - step if upward else step
        for g in range(n_gen):
            y = conj[g, x]
            if (upward and lengths[y] > lengths[x]) or (not upward and lengths[y] < lengths[x]):
                for k in range(words):
                    b[x, k] |= b[y, k]
        b[x, x >> 6] |= (<uint64_t>1) << (x & 63)
    return bits


cdef inline int64_t _add(int64_t a, int64_t b) except? -1:
    cdef long long r
    if gg_add_ovf(a, b, &r):
        raise CoefficientOverflow("coefficient beyond 64 bits")
    return r


cdef inline int64_t _sub(int64_t a, int64_t b) except? -1:
    cdef long long r
    if gg_sub_ovf(a, b, &r):
        raise CoefficientOverflow("coefficient beyond 64 bits")
    return r


cdef inline int64_t _mul(int64_t a, int64_t b) except? -1:
    cdef long long r
    if gg_mul_ovf(a, b, &r):
        raise CoefficientOverflow("coefficient beyond 64 bits")
    return r


def canonical_table(int32_t[:, ::1] sconj, int32_t[::1] lengths, int32_t[::1] descent, int depth):
    cdef Py_ssize_t n = lengths.shape[0]
    cdef Py_ssize_t width = depth + 1
    cdef Py_ssize_t cap = max(64, 4 * n)
    cdef Py_ssize_t nnz = 0

    scratch = np.zeros((n, width), dtype=np.int64)
    mark_arr = np.zeros(n, dtype=np.int8)
    touched_arr = np.empty(n, dtype=np.int32)
    row_ptr_arr = np.zeros(n + 1, dtype=np.int64)
    cols_arr = np.empty(cap, dtype=np.int32)
    coefs_arr = np.empty((cap, width), dtype=np.int64)

    cdef int64_t[:, ::1] C = scratch
    cdef signed char[::1] mark = mark_arr
    cdef int32_t[::1] touched = touched_arr
    cdef int64_t[::1] row_ptr = row_ptr_arr
    cdef int32_t[::1] cols = cols_arr
    cdef int64_t[:, ::1] coefs = coefs_arr

    cdef Py_ssize_t y, p, q, k, i, nt
    cdef int32_t s, w, x, sx, t, z
    cdef int64_t mu, head
    cdef bint nonzero

    for y in range(n):
        s = descent[y]
        if s < 0:
            if nnz + 1 > cap:
                cap *= 2
                cols_arr = np.resize(cols_arr, cap)
                coefs_arr = np.resize(coefs_arr, (cap, width))
                cols = cols_arr
                coefs = coefs_arr
            cols[nnz] = <int32_t>y
            for k in range(width):
                coefs[nnz, k] = 0
            coefs[nnz, 0] = 1
            nnz += 1
            row_ptr[y + 1] = nnz
            continue

        w = sconj[s, y]
        nt = 0
        for p in range(row_ptr[w], row_ptr[w + 1]):
            x = cols[p]
            sx = sconj[s, x]
            if not mark[x]:
                mark[x] = 1
                touched[nt] = x
                nt += 1
            if not mark[sx]:
                mark[sx] = 1
                touched[nt] = sx
                nt += 1
            if lengths[sx] != lengths[x]:
                for k in range(width):
                    C[sx, k] = _add(C[sx, k], coefs[p, k])
            if lengths[sx] >= lengths[x]:
                if coefs[p, width - 1] != 0:
                    raise KernelInvariantError(y, w, "degree range exceeded")
                for k in range(1, width):
                    C[x, k] = _add(C[x, k], coefs[p, k - 1])
            if lengths[sx] <= lengths[x]:
                if coefs[p, 0] != 0:
                    raise KernelInvariantError(y, w, "degree range exceeded")
                for k in range(width - 1):
                    C[x, k] = _add(C[x, k], coefs[p, k + 1])

        for p in range(row_ptr[w], row_ptr[w + 1]):
            t = cols[p]
            mu = coefs[p, 1]
            if t == w or mu == 0 or lengths[sconj[s, t]] > lengths[t]:
                continue
            for q in range(row_ptr[t], row_ptr[t + 1]):
                z = cols[q]
                if not mark[z]:
                    mark[z] = 1
                    touched[nt] = z
                    nt += 1
                for k in range(width):
                    C[z, k] = _sub(C[z, k], _mul(mu, coefs[q, k]))

        qsort(&touched[0], nt, sizeof(int32_t), _cmp_int32)
        if nnz + nt > cap:
            while nnz + nt > cap:
                cap *= 2
            cols_arr = np.resize(cols_arr, cap)
            coefs_arr = np.resize(coefs_arr, (cap, width))
            cols = cols_arr
            coefs = coefs_arr
        for i in range(nt):
            z = touched[i]
            mark[z] = 0
            head = C[z, 0]
            if head != (1 if z == y else 0):
                raise KernelInvariantError(y, z, f"coefficient of v^0 is {head}")
            nonzero = False
            for k in range(width):
                if C[z, k] != 0:
                    nonzero = True
                    break
            if nonzero:
                cols[nnz] = z
                for k in range(width):
                    coefs[nnz, k] = C[z, k]
                    C[z, k] = 0
                nnz += 1
        row_ptr[y + 1] = nnz

    return row_ptr_arr, cols_arr[:nnz].copy(), coefs_arr[:nnz].copy()
