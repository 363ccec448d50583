"""Truncated Mertens sums and Euler-type constant products.

Products accumulate in log space (numpy log1p per prime block, math.fsum
across blocks) and exponentiate once at the end; results are independent
of chunking and thread count. Products whose factor at q = 2 would vanish
(a 1/phi(q) denominator with phi(2) = 1) run over odd primes only, and
every estimate records the largest prime actually included.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import prime_engine
from ._parallel import map_ordered

EULER_GAMMA = float(np.euler_gamma)

# Shared truncation point for the constant products; CLI-configurable.
DEFAULT_CUTOFF = 10_000_000


@dataclass(frozen=True)
class ProductEstimate:
    """A truncated product: its value, the largest prime included (2 for an
    empty product), the exponent theta it was evaluated at, and a crude
    bound on the neglected tail (2/cutoff, from sum 1/q^2-type tails)."""

    value: float
    cutoff: int
    theta: float
    tail_note: float


@dataclass(frozen=True)
class WindowProduct:
    """Product over a prime window [w, z), with both orientation ratios
    against log-quotient references reported side by side."""

    estimate: ProductEstimate
    ratio_to_logw_over_logz: float
    ratio_to_logz_over_logw: float


def _sum_over_prime_blocks(lo: int, hi: int, fn, threads: int = 1):
    """fsum of fn(prime block) over primes in [lo, hi], plus the largest
    prime seen (0 when the range holds none). fn maps an int64 array to a
    per-block float."""
    if hi < lo or hi < 2:
        return 0.0, 0
    starts = list(range(max(2, lo), hi + 1, prime_engine.SEGMENT_LENGTH))

    def work(seg_lo: int):
        seg_hi = min(seg_lo + prime_engine.SEGMENT_LENGTH, hi + 1)
        blocks = list(prime_engine.iter_prime_blocks(seg_lo, seg_hi))
        primes = blocks[0] if len(blocks) == 1 else np.concatenate(blocks)
        primes = primes[primes >= lo]
        if primes.size == 0:
            return 0.0, 0
        return float(fn(primes)), int(primes[-1])

    parts = map_ordered(work, starts, threads)
    total = math.fsum(p for p, _ in parts)
    last = max((l for _, l in parts), default=0)
    return total, last


def mertens_log_sum(x: int, threads: int = 1) -> float:
    """Sum of log p / p over primes p <= x (natural logs)."""
    x = int(x)
    if x < 2:
        raise ValueError(f"mertens_log_sum requires x >= 2, got {x}")
    total, _ = _sum_over_prime_blocks(
        2, x, lambda p: np.sum(np.log(p) / p), threads
    )
    return total


def mertens_product(x: int, threads: int = 1) -> float:
    """Product of (1 - 1/p)^(-1) over primes p <= x, via log-space accumulation."""
    x = int(x)
    if x < 2:
        raise ValueError(f"mertens_product requires x >= 2, got {x}")
    log_total, _ = _sum_over_prime_blocks(
        2, x, lambda p: -np.sum(np.log1p(-1.0 / p)), threads
    )
    return math.exp(log_total)


def phi_reciprocal_sum(x: int) -> float:
    """Sum of 1/phi(n) for n <= x."""
    x = int(x)
    if x < 1:
        raise ValueError(f"phi_reciprocal_sum requires x >= 1, got {x}")
    phi = prime_engine.tables_up_to(x).phi[1 : x + 1]
    step = 1 << 20
    chunks = [
        float(np.sum(1.0 / phi[s : s + step])) for s in range(0, phi.size, step)
    ]
    return math.fsum(chunks)


def _phi_prime_power(q: np.ndarray, theta: float) -> np.ndarray:
    # phi(q^theta) = q^(theta-1) (q - 1); exact for integer theta, the
    # natural continuation otherwise
    qf = q.astype(np.float64)
    return qf ** (theta - 1.0) * (qf - 1.0)


def totient_tail_product(theta: float, w: int, cutoff: int, threads: int = 1) -> ProductEstimate:
    """Truncated product of (1 - 1/phi(q^theta)) (1 - 1/q)^(-1) over primes
    w <= q <= cutoff."""
    theta, w, cutoff = float(theta), int(w), int(cutoff)
    if theta < 1:
        raise ValueError(f"theta must be >= 1, got {theta}")
    if theta == 1 and w <= 2:
        raise ValueError("zero factor: q = 2 with theta = 1 makes 1 - 1/phi(2) = 0")
    if w < 2:
        raise ValueError(f"w must be >= 2, got {w}")
    if cutoff < 2:
        raise ValueError(f"cutoff must be >= 2, got {cutoff}")

    def log_factors(q: np.ndarray) -> float:
        return float(
            np.sum(np.log1p(-1.0 / _phi_prime_power(q, theta)) - np.log1p(-1.0 / q))
        )

    log_total, last = _sum_over_prime_blocks(w, cutoff, log_factors, threads)
    return ProductEstimate(
        value=math.exp(log_total),
        cutoff=last if last else 2,
        theta=theta,
        tail_note=2.0 / cutoff,
    )


def totient_window_product(theta: float, w: int, z: int) -> WindowProduct:
    """Exact truncated product of (1 - 1/phi(q^theta)) over primes in [w, z),
    with its ratio to both log w / log z and log z / log w."""
    theta, w, z = float(theta), int(w), int(z)
    if theta < 1:
        raise ValueError(f"theta must be >= 1, got {theta}")
    if w < 2:
        raise ValueError(f"w must be >= 2, got {w}")
    if z < w:
        raise ValueError(f"requires w <= z, got w={w}, z={z}")
    if theta == 1 and w <= 2 and z > 2:
        raise ValueError("zero factor: q = 2 with theta = 1 makes 1 - 1/phi(2) = 0")

    def log_factors(q: np.ndarray) -> float:
        return float(np.sum(np.log1p(-1.0 / _phi_prime_power(q, theta))))

    log_total, last = _sum_over_prime_blocks(w, z - 1, log_factors)
    value = math.exp(log_total)
    est = ProductEstimate(
        value=value, cutoff=last if last else 2, theta=theta, tail_note=0.0
    )
    ref = math.log(w) / math.log(z) if z > w else 1.0
    return WindowProduct(
        estimate=est,
        ratio_to_logw_over_logz=value / ref,
        ratio_to_logz_over_logw=value * ref,
    )


@lru_cache(maxsize=64)
def twin_constant_product(cutoff: int, threads: int = 1) -> ProductEstimate:
    """Truncated twin-prime constant: product of 1 - 1/(q-1)^2 over odd
    primes q <= cutoff (q = 2 excluded; its factor would vanish).

    Memoized: the value is a pure function of cutoff (thread count never
    changes the ordered reduction), and callers re-request common cutoffs.
    """
    cutoff = int(cutoff)
    if cutoff < 3:
        raise ValueError(f"cutoff must be >= 3, got {cutoff}")
    log_total, last = _sum_over_prime_blocks(
        3, cutoff, lambda q: float(np.sum(np.log1p(-1.0 / (q - 1.0) ** 2))), threads
    )
    return ProductEstimate(
        value=math.exp(log_total), cutoff=last, theta=1.0, tail_note=2.0 / cutoff
    )


@lru_cache(maxsize=64)
def quadratic_constant_product(cutoff: int, threads: int = 1) -> ProductEstimate:
    """Truncated constant for the n^2 + 1 problem: factors 1 + 1/(q-1) for
    primes q = 3 (mod 4) and 1 - 1/(q-1) for q = 1 (mod 4), odd q <= cutoff.

    Both residue classes are truncated at the same cutoff; convergence
    leans on the classes balancing, so pair this with a cutoff-sensitivity
    report rather than a tolerance."""
    cutoff = int(cutoff)
    if cutoff < 3:
        raise ValueError(f"cutoff must be >= 3, got {cutoff}")

    def log_factors(q: np.ndarray) -> float:
        inv = 1.0 / (q - 1.0)
        return float(np.sum(np.log1p(np.where(q % 4 == 3, inv, -inv))))

    log_total, last = _sum_over_prime_blocks(3, cutoff, log_factors, threads)
    return ProductEstimate(
        value=math.exp(log_total), cutoff=last, theta=1.0, tail_note=2.0 / cutoff
    )
