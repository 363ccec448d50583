# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sieve kernels; landaulab._kernels.pykern mirrors the signatures."""

import numpy as np

cimport numpy as cnp
from libc.math cimport log as clog

cnp.import_array()


def mark_composites(lo, n, base_primes):
    cdef unsigned long long clo = <unsigned long long> lo
    cdef Py_ssize_t cn = <Py_ssize_t> n
    comp = np.zeros(cn, dtype=np.uint8)
    bp = np.ascontiguousarray(base_primes, dtype=np.uint64)
    cdef cnp.uint8_t[::1] cv = comp
    cdef const cnp.uint64_t[::1] b = bp
    cdef cnp.uint8_t *c = &cv[0]
    cdef Py_ssize_t i, j, step
    cdef unsigned long long p, start, hi = clo + <unsigned long long> cn
    for i in range(b.shape[0]):
        p = b[i]
        start = ((clo + p - 1) // p) * p
        if start < p * p:
            start = p * p
        if start >= hi:
            continue
        step = <Py_ssize_t> p
        j = <Py_ssize_t> (start - clo)
        while j < cn:
            c[j] = 1
            j += step
    return comp


def smallest_factor_segment(lo, n, base_primes):
    cdef unsigned long long clo = <unsigned long long> lo
    cdef Py_ssize_t cn = <Py_ssize_t> n
    spf = np.zeros(cn, dtype=np.uint32)
    bp = np.ascontiguousarray(base_primes, dtype=np.uint64)
    cdef cnp.uint32_t[::1] sv = spf
    cdef const cnp.uint64_t[::1] b = bp
    cdef cnp.uint32_t *s = &sv[0]
    cdef Py_ssize_t i, j, step
    cdef unsigned long long p, start, hi = clo + <unsigned long long> cn
    # descending primes with unconditional stores: the smallest factor is
    # written last and wins, and the loop stays branch-free
    for i in range(b.shape[0] - 1, -1, -1):
        p = b[i]
        start = ((clo + p - 1) // p) * p
        if start < 2 * p:
            start = 2 * p
        if start >= hi:
            continue
        step = <Py_ssize_t> p
        j = <Py_ssize_t> (start - clo)
        while j < cn:
            s[j] = <cnp.uint32_t> p
            j += step
    return spf


def arithmetic_tables(n):
    """Linear sieve building spf/phi/mu/Lambda on [0, n] in one pass."""
    cdef Py_ssize_t cn = <Py_ssize_t> n
    spf = np.zeros(cn + 1, dtype=np.uint32)
    phi = np.zeros(cn + 1, dtype=np.int64)
    mu = np.zeros(cn + 1, dtype=np.int8)
    lam = np.zeros(cn + 1, dtype=np.float64)
    primes = np.zeros(cn // 2 + 2, dtype=np.int64)
    cdef cnp.uint32_t[::1] s = spf
    cdef cnp.int64_t[::1] ph = phi
    cdef cnp.int8_t[::1] m = mu
    cdef cnp.float64_t[::1] la = lam
    cdef cnp.int64_t[::1] pr = primes
    cdef Py_ssize_t i, j, k = 0, idx
    cdef cnp.int64_t p, q

    if cn >= 1:
        ph[1] = 1
        m[1] = 1
    for i in range(2, cn + 1):
        if s[i] == 0:
            s[i] = <cnp.uint32_t> i
            pr[k] = i
            k += 1
            ph[i] = i - 1
            m[i] = -1
        for idx in range(k):
            p = pr[idx]
            if p > <cnp.int64_t> s[i] or i * p > cn:
                break
            j = i * p
            s[j] = <cnp.uint32_t> p
            if p == <cnp.int64_t> s[i]:
                ph[j] = ph[i] * p
                m[j] = 0
                break
            ph[j] = ph[i] * (p - 1)
            m[j] = -m[i]
    for idx in range(k):
        p = pr[idx]
        q = p
        while q <= cn:
            la[q] = clog(<double> p)
            if q > cn // p:
                break
            q *= p
    return spf, phi, mu, lam
