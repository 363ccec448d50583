"""Pure-numpy sieve kernels.

Fallback used when the compiled extension is absent (or disabled via
LANDAULAB_PURE=1). Same signatures and same outputs as _sievekern; the
strided-slice writes below are the vectorized stand-in for its C loops.
"""

import math

import numpy as np


def mark_composites(lo, n, base_primes):
    """Composite flags (uint8) for the window [lo, lo+n).

    An entry is 1 iff some base prime p has a multiple k*p at that position
    with k >= p; primes and 0/1-free windows (lo >= 2) stay 0.
    """
    lo = int(lo)
    comp = np.zeros(n, dtype=np.uint8)
    hi = lo + n
    for p in base_primes:
        p = int(p)
        start = max(p * p, -(-lo // p) * p)
        if start < hi:
            comp[start - lo :: p] = 1
    return comp


def smallest_factor_segment(lo, n, base_primes):
    """Smallest dividing base prime (uint32) per entry of [lo, lo+n); 0 = none.

    Multiples are written in descending prime order so the smallest prime
    lands last and wins.
    """
    lo = int(lo)
    spf = np.zeros(n, dtype=np.uint32)
    hi = lo + n
    for p in base_primes[::-1]:
        p = int(p)
        start = max(2 * p, -(-lo // p) * p)
        if start < hi:
            spf[start - lo :: p] = p
    return spf


def _simple_primes(n):
    if n < 2:
        return np.empty(0, dtype=np.int64)
    comp = np.zeros(n + 1, dtype=bool)
    comp[:2] = True
    for p in range(2, math.isqrt(n) + 1):
        if not comp[p]:
            comp[p * p :: p] = True
    return np.flatnonzero(~comp).astype(np.int64)


def arithmetic_tables(n):
    """Dense tables on [0, n]: (spf uint32, phi int64, mu int8, Lambda float64).

    spf[m] is the smallest prime factor for m >= 2 (spf[0] = spf[1] = 0);
    phi/mu are exact integers; Lambda uses natural logs.
    """
    n = int(n)
    primes = _simple_primes(n)
    root = math.isqrt(n)

    spf = np.zeros(n + 1, dtype=np.uint32)
    small = primes[primes <= root]
    for p in small[::-1]:
        p = int(p)
        spf[p::p] = p
    if n >= 2:
        rest = np.flatnonzero(spf[2:] == 0) + 2
        spf[rest] = rest

    phi = np.arange(n + 1, dtype=np.int64)
    for p in primes:
        p = int(p)
        phi[p::p] -= phi[p::p] // p

    mu = np.ones(n + 1, dtype=np.int8)
    for p in primes:
        p = int(p)
        mu[p::p] *= -1
    for p in small:
        q = int(p) * int(p)
        mu[q::q] = 0

    lam = np.zeros(n + 1, dtype=np.float64)
    if n >= 2:
        lam[primes] = np.log(primes.astype(np.float64))
        for p in small:
            p = int(p)
            q = p * p
            while q <= n:
                lam[q] = math.log(p)
                q *= p

    mu[0] = 0
    phi[0] = 0
    return spf, phi, mu, lam
