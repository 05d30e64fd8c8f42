# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row reduction over F_p (p < 2**31)."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t


cdef int64_t _inv(int64_t a, int64_t p):
    cdef int64_t r = 1, e = p - 2
    a %= p
    while e:
        if e & 1:
            r = r * a % p
        a = a * a % p
        e >>= 1
    return r


def rref_inplace(cnp.ndarray[int64_t, ndim=2] a not None, int64_t p):
    """Reduce ``a`` in place to reduced row echelon form; return pivot columns."""
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t inv, f, t
    cdef int64_t[:, ::1] m = a
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                t = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = t
        inv = _inv(m[r, c], p)
        for j in range(c, cols):
            m[r, j] = m[r, j] * inv % p
        for i in range(rows):
            if i == r:
                continue
            f = m[i, c]
            if f == 0:
                continue
            for j in range(c, cols):
                if m[r, j] != 0:
                    m[i, j] = (m[i, j] - f * m[r, j]) % p
                    if m[i, j] < 0:
                        m[i, j] += p
        pivots.append(c)
        r += 1
    return pivots
