"""Segmented Eratosthenes sieve with per-integer smallest-prime-factor data.

Primality, factorization, and the arithmetic functions phi, mu and Lambda
are all answered from sieve output: a PrimeTable records the smallest
prime factor of every integer in its window, and dense tables on [0, n]
back the summatory routines. The hot marking loops live in
landaulab._kernels (compiled extension when built, numpy fallback
otherwise); everything here is deterministic for fixed inputs, including
under threading.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple

import numpy as np

from ._kernels import arithmetic_tables as _arithmetic_tables_kernel
from ._kernels import mark_composites as _mark_composites
from ._kernels import smallest_factor_segment as _smallest_factor_segment
from ._parallel import map_ordered

# Integers per sieve window. Cache-size tuning constant, not a correctness
# parameter: any positive value yields identical tables.
SEGMENT_LENGTH = 1 << 22

# Guard for dense [0, n] tables (phi is int64, so ~21 bytes/entry).
MAX_TABLE_SIZE = 50_000_000

# Hard ceiling for sieve endpoints; composite entries then still fit uint32.
MAX_SIEVE_BOUND = 4 * 10**9


@lru_cache(maxsize=256)
def _base_primes(limit: int) -> np.ndarray:
    """Ascending primes <= limit (uint64), by a plain monolithic sieve."""
    if limit < 2:
        out = np.empty(0, dtype=np.uint64)
    else:
        comp = np.zeros(limit + 1, dtype=bool)
        comp[:2] = True
        for p in range(2, math.isqrt(limit) + 1):
            if not comp[p]:
                comp[p * p :: p] = True
        out = np.flatnonzero(~comp).astype(np.uint64)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class PrimeTable:
    """Sieved window [lo, hi) with smallest-prime-factor data.

    spf_raw stores, for each n in the window, the smallest prime <= sqrt(hi)
    dividing n with cofactor > 1, or 0 when there is none -- which for
    n >= 2 means n is prime. spf() translates the 0 back to n itself, so
    the exposed smallest prime factor is always a genuine prime divisor
    (never a 1 sentinel). Arrays are frozen after construction; the table
    is safe to share across threads.
    """

    lo: int
    hi: int
    base_primes: np.ndarray
    spf_raw: np.ndarray

    def __post_init__(self):
        self.base_primes.setflags(write=False)
        self.spf_raw.setflags(write=False)

    def _index(self, n: int) -> int:
        if not self.lo <= n < self.hi:
            raise IndexError(f"{n} outside sieved window [{self.lo}, {self.hi})")
        return n - self.lo

    def spf(self, n: int) -> int:
        v = int(self.spf_raw[self._index(n)])
        return v if v else int(n)

    def is_prime(self, n: int) -> bool:
        return self.spf_raw[self._index(n)] == 0

    def primes(self) -> np.ndarray:
        """Ascending int64 array of the primes in [lo, hi)."""
        return (np.flatnonzero(self.spf_raw == 0) + self.lo).astype(np.int64)


def sieve_range(lo: int, hi: int, threads: int = 1) -> PrimeTable:
    """Sieve the window [lo, hi) and return its PrimeTable.

    Internally processes SEGMENT_LENGTH-sized chunks (optionally on
    threads); the output is identical for every chunking and thread count.
    """
    lo, hi = int(lo), int(hi)
    if lo < 2:
        raise ValueError(f"sieve_range requires lo >= 2, got {lo}")
    if hi <= lo:
        raise ValueError(f"sieve_range requires hi > lo, got [{lo}, {hi})")
    if hi > MAX_SIEVE_BOUND:
        raise ValueError(f"sieve_range supports hi <= {MAX_SIEVE_BOUND}")
    base = _base_primes(math.isqrt(hi))
    out = np.empty(hi - lo, dtype=np.uint32)

    def work(seg_lo: int):
        n = min(SEGMENT_LENGTH, hi - seg_lo)
        return seg_lo, _smallest_factor_segment(seg_lo, n, base)

    for seg_lo, seg in map_ordered(work, range(lo, hi, SEGMENT_LENGTH), threads):
        out[seg_lo - lo : seg_lo - lo + seg.size] = seg
    return PrimeTable(lo=lo, hi=hi, base_primes=base, spf_raw=out)


def iter_prime_blocks(
    lo: int, hi: int, block: int = SEGMENT_LENGTH
) -> Iterator[np.ndarray]:
    """Yield ascending int64 arrays of the primes in [lo, hi), one per window.

    Streams composite marks only (1 byte/integer), so it scales to windows
    far beyond what a PrimeTable would hold.
    """
    lo = max(2, int(lo))
    hi = int(hi)
    if hi > MAX_SIEVE_BOUND:
        raise ValueError(f"iter_prime_blocks supports hi <= {MAX_SIEVE_BOUND}")
    if hi <= lo:
        return
    base = _base_primes(math.isqrt(hi))
    for seg_lo in range(lo, hi, block):
        n = min(block, hi - seg_lo)
        comp = _mark_composites(seg_lo, n, base)
        yield (np.flatnonzero(comp == 0) + seg_lo).astype(np.int64)


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n, ascending."""
    if n < 2:
        raise ValueError(f"primes_up_to requires n >= 2, got {n}")
    blocks = list(iter_prime_blocks(2, n + 1))
    return blocks[0] if len(blocks) == 1 else np.concatenate(blocks)


def primality_mask(n: int) -> np.ndarray:
    """Boolean lookup table over [0, n]: mask[m] is True iff m is prime."""
    if n < 2:
        raise ValueError(f"primality_mask requires n >= 2, got {n}")
    base = _base_primes(math.isqrt(n))
    mask = np.zeros(n + 1, dtype=bool)
    for seg_lo in range(2, n + 1, SEGMENT_LENGTH):
        w = min(SEGMENT_LENGTH, n + 1 - seg_lo)
        comp = _mark_composites(seg_lo, w, base)
        mask[seg_lo : seg_lo + w] = comp == 0
    return mask


def is_prime_many(values) -> np.ndarray:
    """Vectorized primality by trial division against sieved base primes."""
    v = np.atleast_1d(np.asarray(values, dtype=np.int64))
    out = v >= 2
    if v.size == 0 or not out.any():
        return out
    vmax = int(v.max())
    for p in _base_primes(math.isqrt(vmax)):
        p = int(p)
        out &= (v % p != 0) | (v == p)
    return out


# ---------------------------------------------------------------------------
# Dense arithmetic-function tables (grow-only process cache)

class ArithmeticTables(NamedTuple):
    n: int
    spf: np.ndarray  # uint32; spf[m] = smallest prime factor, spf[0] = spf[1] = 0
    phi: np.ndarray  # int64 Euler phi
    mu: np.ndarray  # int8 Moebius
    lam: np.ndarray  # float64 von Mangoldt, natural log


_tables: ArithmeticTables | None = None
_tables_lock = threading.Lock()


def tables_up_to(n: int) -> ArithmeticTables:
    """Dense spf/phi/mu/Lambda tables covering at least [0, n].

    The returned arrays may extend beyond n (the cache only grows); index
    them directly or slice to [: n + 1].
    """
    global _tables
    n = int(n)
    if n < 1:
        raise ValueError(f"tables_up_to requires n >= 1, got {n}")
    if n > MAX_TABLE_SIZE:
        raise ValueError(f"dense tables capped at {MAX_TABLE_SIZE} entries")
    with _tables_lock:
        if _tables is None or _tables.n < n:
            spf, phi, mu, lam = _arithmetic_tables_kernel(n)
            for a in (spf, phi, mu, lam):
                a.setflags(write=False)
            _tables = ArithmeticTables(n, spf, phi, mu, lam)
        return _tables


# ---------------------------------------------------------------------------
# Point values of phi, mu, Lambda

@dataclass(frozen=True)
class ArithmeticPoint:
    """phi, mu and Lambda of a single integer."""

    n: int
    phi: int
    mu: int
    lambda_vm: float


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization [(p, exponent), ...] with ascending p.

    Uses the cached dense table when it covers n, otherwise trial division
    by sieved base primes up to sqrt(n).
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    if n == 1:
        return []
    out: list[tuple[int, int]] = []
    t = _tables
    if t is not None and n <= t.n:
        m = n
        while m > 1:
            p = int(t.spf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        return out
    m = n
    for p in _base_primes(math.isqrt(n)):
        p = int(p)
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    if m > 1:
        out.append((m, 1))
    return out


def euler_phi(n: int) -> int:
    """Euler totient; phi(1) = 1."""
    if n < 1:
        raise ValueError(f"euler_phi requires n >= 1, got {n}")
    result = 1
    for p, e in factorize(n):
        result *= p ** (e - 1) * (p - 1)
    return result


def moebius(n: int) -> int:
    """Moebius mu: 0 on squareful n, else (-1)^(number of prime factors)."""
    if n < 1:
        raise ValueError(f"moebius requires n >= 1, got {n}")
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def von_mangoldt(n: int) -> float:
    """Lambda(n) = log p when n is a power of the prime p, else 0 (natural log)."""
    if n < 1:
        raise ValueError(f"von_mangoldt requires n >= 1, got {n}")
    fac = factorize(n)
    if len(fac) == 1:
        return math.log(fac[0][0])
    return 0.0


def arithmetic_point(n: int) -> ArithmeticPoint:
    return ArithmeticPoint(n=n, phi=euler_phi(n), mu=moebius(n), lambda_vm=von_mangoldt(n))


# ---------------------------------------------------------------------------
# Primes in arithmetic progressions

class ProgressionCount(NamedTuple):
    count: int
    main: float
    error: float


def count_primes_in_progression(
    l: int, d: int, x: int, threads: int = 1
) -> ProgressionCount:
    """Exact count of primes p <= x with p = l (mod d), next to x/(phi(d) log x).

    Requires gcd(l, d) = 1 and 1 <= l <= d <= x; error is count minus the
    density main term.
    """
    l, d, x = int(l), int(d), int(x)
    if d < 1:
        raise ValueError(f"modulus must be >= 1, got {d}")
    if not 1 <= l <= d:
        raise ValueError(f"residue must satisfy 1 <= l <= d, got l={l}, d={d}")
    if math.gcd(l, d) != 1:
        raise ValueError(f"l and d must be coprime, got gcd({l}, {d}) = {math.gcd(l, d)}")
    if x < 2:
        raise ValueError(f"x must be >= 2, got {x}")
    if d > x:
        raise ValueError(f"requires d <= x, got d={d}, x={x}")

    r = l % d
    base = _base_primes(math.isqrt(x + 1))

    def work(seg_lo: int) -> int:
        n = min(SEGMENT_LENGTH, x + 1 - seg_lo)
        comp = _mark_composites(seg_lo, n, base)
        primes = np.flatnonzero(comp == 0) + seg_lo
        return int(np.count_nonzero(primes % d == r))

    count = sum(map_ordered(work, range(2, x + 1, SEGMENT_LENGTH), threads))
    main = x / (euler_phi(d) * math.log(x))
    return ProgressionCount(count=count, main=main, error=count - main)
