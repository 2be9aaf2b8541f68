# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: dense GF(p) row reduction and the associativity sweep.

Pure-Python twins live in ``_pykernels.py``; keep the two in lockstep.
"""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64
ctypedef cnp.int32_t i32


cdef inline i64 _modinv(i64 a, i64 p):
    cdef i64 t = 0, newt = 1, r = p, newr = a % p, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_mod_p(i64[:, :] a, i64 p):
    """Reduce ``a`` (entries in [0, p), p < 2**31) to RREF in place."""
    cdef Py_ssize_t nr = a.shape[0], nc = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, k, piv
    cdef i64 f, inv, tmp
    pivots = []
    for c in range(nc):
        if r == nr:
            break
        piv = -1
        for i in range(r, nr):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(c, nc):
                tmp = a[r, k]
                a[r, k] = a[piv, k]
                a[piv, k] = tmp
        inv = _modinv(a[r, c], p)
        if inv != 1:
            for k in range(c, nc):
                a[r, k] = a[r, k] * inv % p
        for i in range(nr):
            if i == r:
                continue
            f = a[i, c]
            if f == 0:
                continue
            for k in range(c, nc):
                if a[r, k] != 0:
                    a[i, k] = (a[i, k] - f * a[r, k]) % p
                    if a[i, k] < 0:
                        a[i, k] += p
        pivots.append(c)
        r += 1
    return r, tuple(pivots)


cdef inline bint _triple_ok(i32[:, :] idx, i64[:, :] num, i64[:, :] den, i64 p,
                            Py_ssize_t b, Py_ssize_t c, Py_ssize_t d):
    cdef i32 bc = idx[b, c], cd = idx[c, d]
    cdef i32 left = -1 if bc < 0 else idx[bc, d]
    cdef i32 right = -1 if cd < 0 else idx[b, cd]
    cdef i64 ln, ld, rn, rd
    if left < 0 and right < 0:
        return True
    if left != right:
        return False
    ln = num[b, c] * num[bc, d]
    ld = den[b, c] * den[bc, d]
    rn = num[c, d] * num[b, cd]
    rd = den[c, d] * den[b, cd]
    if p:
        return (ln - rn) % p == 0
    return ln * rd == rn * ld


def assoc_violations(i32[:, :] idx, i64[:, :] num, i64[:, :] den, i64 p):
    """Count (b, c, d) with (bc)d != b(cd); see ``_pykernels.assoc_violations``."""
    cdef Py_ssize_t n = idx.shape[0], b, c, d
    cdef long long count = 0
    cdef Py_ssize_t fb = -1, fc = -1, fd = -1
    for b in range(n):
        for c in range(n):
            for d in range(n):
                if not _triple_ok(idx, num, den, p, b, c, d):
                    if count == 0:
                        fb, fc, fd = b, c, d
                    count += 1
    return int(count), (int(fb), int(fc), int(fd))


def assoc_violations_at(i32[:, :] idx, i64[:, :] num, i64[:, :] den, i64 p, i32[:, :] triples):
    """Same test restricted to the rows of ``triples``."""
    cdef Py_ssize_t k, b, c, d
    cdef long long count = 0
    cdef Py_ssize_t fb = -1, fc = -1, fd = -1
    for k in range(triples.shape[0]):
        b, c, d = triples[k, 0], triples[k, 1], triples[k, 2]
        if not _triple_ok(idx, num, den, p, b, c, d):
            if count == 0:
                fb, fc, fd = b, c, d
            count += 1
    return int(count), (int(fb), int(fc), int(fd))
