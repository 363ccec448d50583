"""Exact counters and asymptotic-formula evaluators for the four classical
Landau problems: Goldbach pair counts, prime pairs at a fixed even gap,
primes between consecutive squares, and primes of the form n^2 + 1.

Each problem pairs an exact sieve count with the corresponding main-term
formula (constant product x divisor product x analytic factor) and the
residue/loss scales that go with it. The O(.) scales carry an implied
constant of 1 and are reported as magnitudes, never asserted as bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from . import mertens_lab, prime_engine
from .mertens_lab import DEFAULT_CUTOFF, EULER_GAMMA

MAX_COUNT_LIMIT = 10**9

# Counters build a dense primality mask up to here; larger limits stream
# block pairs instead. Force-lowered in tests to exercise the block path.
_DENSE_LIMIT = 10**8


@dataclass(frozen=True)
class GoldbachWitness:
    """All unordered prime pairs (p, N - p) with p <= N/2, ascending in p."""

    N: int
    pairs: list[tuple[int, int]]

    @property
    def unordered_count(self) -> int:
        return len(self.pairs)

    @property
    def ordered_count(self) -> int:
        # the diagonal pair (N/2, N/2), when present, is its own mirror
        diagonal = bool(self.pairs) and self.pairs[-1][0] == self.pairs[-1][1]
        return 2 * len(self.pairs) - int(diagonal)


@dataclass(frozen=True)
class ResidueScales:
    """Residue-term and collection-loss magnitudes (implied constant 1)."""

    bound: float
    loss: float


@dataclass(frozen=True)
class SquareIntervalEstimate:
    """Main term N/log N for the open interval (N^2, (N+1)^2), the constant
    residue value 4, and the raw progression-density and residue-class
    factors it condenses from. `base` is the even member of {N, N+1} whose
    2-adic split base = 2^alpha K feeds the divisor product."""

    N: int
    main: float
    residue_constant: float
    progression_density: float
    residue_class_count: float
    base: int
    alpha: int
    K: int


@dataclass(frozen=True)
class QuadraticCount:
    """Count of n with n^2 + 1 prime, n < sqrt(limit); even_n excludes the
    lone odd contributor n = 1."""

    total: int
    even_n: int
    n_max: int


@dataclass(frozen=True)
class ProblemReport:
    """One problem instance: exact count, main term with itemized factors
    (their product reproduces main_term), residue/loss scales, and the
    empirical/main ratio."""

    problem_id: str
    params: dict
    empirical: int
    main_term: float
    main_term_factors: list[tuple[str, float]]
    residue_bound: float
    loss_bound: float
    ratio: float


# ---------------------------------------------------------------------------
# shared pieces


def _odd_prime_divisor_product(n: int) -> float:
    """Product of (q - 1)/(q - 2) over odd primes q | n (q = 2 stays out:
    its factor would be singular)."""
    out = 1.0
    for q, _ in prime_engine.factorize(n):
        if q > 2:
            out *= (q - 1) / (q - 2)
    return out


def _pair_count_dense(limit: int, gap: int) -> tuple[int, np.ndarray]:
    mask = prime_engine.primality_mask(limit)
    p1 = np.flatnonzero(mask[gap:]) + gap  # primes in [gap, limit]
    hits = p1[mask[p1 - gap]]
    return hits.size, hits


def _pair_count_blocks(limit: int, gap: int) -> int:
    count = 0
    block = prime_engine.SEGMENT_LENGTH
    for lo in range(2 + gap, limit + 1, block):
        hi = min(lo + block, limit + 1)
        upper = np.concatenate(list(prime_engine.iter_prime_blocks(lo, hi)) or [np.empty(0, np.int64)])
        lower = np.concatenate(
            list(prime_engine.iter_prime_blocks(lo - gap, hi - gap)) or [np.empty(0, np.int64)]
        )
        count += int(np.isin(upper - gap, lower, assume_unique=True).sum())
    return count


# ---------------------------------------------------------------------------
# Problem 1: Goldbach pairs


def goldbach_count(N: int) -> GoldbachWitness:
    """All unordered representations N = p + p' with both entries prime."""
    N = int(N)
    if N < 4 or N % 2:
        raise ValueError(f"requires an even N >= 4, got {N}")
    if N > MAX_COUNT_LIMIT:
        raise ValueError(f"N capped at {MAX_COUNT_LIMIT}")
    if N <= _DENSE_LIMIT:
        mask = prime_engine.primality_mask(N)
        ps = np.flatnonzero(mask[: N // 2 + 1])
        hits = ps[mask[N - ps]]
    else:
        parts = []
        block = prime_engine.SEGMENT_LENGTH
        for lo in range(2, N // 2 + 1, block):
            hi = min(lo + block, N // 2 + 1)
            ps = np.concatenate(
                list(prime_engine.iter_prime_blocks(lo, hi)) or [np.empty(0, np.int64)]
            )
            mirror = np.concatenate(
                list(prime_engine.iter_prime_blocks(N - hi + 1, N - lo + 1))
                or [np.empty(0, np.int64)]
            )
            parts.append(ps[np.isin(N - ps, mirror, assume_unique=True)])
        hits = np.concatenate(parts)
    pairs = [(int(p), int(N - p)) for p in hits]
    return GoldbachWitness(N=N, pairs=pairs)


def goldbach_main_term(N: int, cutoff: int = DEFAULT_CUTOFF) -> tuple[float, list[tuple[str, float]]]:
    """Main term: twin constant product x prod_{odd q | N} (q-1)/(q-2) x
    2 e^(-gamma) N / (log N)^2, with the factors itemized."""
    N = int(N)
    if N < 6 or N % 2:
        raise ValueError(f"requires an even N >= 6, got {N}")
    if cutoff < 10**5:
        raise ValueError(f"constant-product cutoff must be >= 1e5, got {cutoff}")
    factors = [
        ("twin_constant_product", mertens_lab.twin_constant_product(cutoff).value),
        ("divisor_product", _odd_prime_divisor_product(N)),
        ("analytic_factor", 2 * math.exp(-EULER_GAMMA) * N / math.log(N) ** 2),
    ]
    main = math.prod(v for _, v in factors)
    return main, factors


def goldbach_residue(N: int) -> ResidueScales:
    """Residue scale N^(1/2) (log N)^2 and collection-loss scale N^(1/2)."""
    N = int(N)
    if N < 4 or N % 2:
        raise ValueError(f"requires an even N >= 4, got {N}")
    return ResidueScales(bound=math.sqrt(N) * math.log(N) ** 2, loss=math.sqrt(N))


def goldbach_hl_reference(N: int, cutoff: int = DEFAULT_CUTOFF) -> float:
    """Ordered-pair reference count in the classical style: 2 x twin
    constant x divisor product x integral of dt/(log t)^2 from 2 to N
    (no e^(-gamma), logarithmic integral instead of N/(log N)^2)."""
    N = int(N)
    integral, _ = quad(lambda t: 1.0 / math.log(t) ** 2, 2.0, float(N), limit=200)
    return (
        2.0
        * mertens_lab.twin_constant_product(cutoff).value
        * _odd_prime_divisor_product(N)
        * integral
    )


def goldbach_report(N: int, cutoff: int = DEFAULT_CUTOFF) -> ProblemReport:
    witness = goldbach_count(N)
    main, factors = goldbach_main_term(N, cutoff)
    scales = goldbach_residue(N)
    return ProblemReport(
        problem_id="goldbach",
        params={"N": N, "cutoff": cutoff},
        empirical=witness.unordered_count,
        main_term=main,
        main_term_factors=factors,
        residue_bound=scales.bound,
        loss_bound=scales.loss,
        ratio=witness.unordered_count / main,
    )


# ---------------------------------------------------------------------------
# Problem 2: prime pairs p1 - 2^alpha K = p2


def polignac_count(alpha: int, K: int, limit: int) -> int:
    """Exact number of prime pairs p1 <= limit with p1 - 2^alpha K = p2 prime.

    alpha = 1, K = 1 counts twin pairs by their upper member.
    """
    alpha, K, limit = int(alpha), int(K), int(limit)
    if alpha < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    if K < 1 or K % 2 == 0:
        raise ValueError(f"K must be odd and >= 1, got {K}")
    gap = (1 << alpha) * K
    if limit < gap + 3:
        raise ValueError(f"limit must be >= 2^alpha K + 3 = {gap + 3}, got {limit}")
    if limit > MAX_COUNT_LIMIT:
        raise ValueError(f"limit capped at {MAX_COUNT_LIMIT}")
    if limit <= _DENSE_LIMIT:
        return _pair_count_dense(limit, gap)[0]
    return _pair_count_blocks(limit, gap)


def polignac_main_term(
    alpha: int, K: int, limit: int, cutoff: int = DEFAULT_CUTOFF
) -> tuple[float, list[tuple[str, float]]]:
    """Same main term as the Goldbach formula evaluated at N = limit, with
    the divisor product running over odd primes q | K."""
    alpha, K, limit = int(alpha), int(K), int(limit)
    if alpha < 1 or K < 1 or K % 2 == 0:
        raise ValueError(f"requires alpha >= 1 and odd K >= 1, got alpha={alpha}, K={K}")
    if cutoff < 10**5:
        raise ValueError(f"constant-product cutoff must be >= 1e5, got {cutoff}")
    factors = [
        ("twin_constant_product", mertens_lab.twin_constant_product(cutoff).value),
        ("divisor_product", _odd_prime_divisor_product(K)),
        ("analytic_factor", 2 * math.exp(-EULER_GAMMA) * limit / math.log(limit) ** 2),
    ]
    main = math.prod(v for _, v in factors)
    return main, factors


def polignac_residue(limit: int) -> ResidueScales:
    limit = int(limit)
    return ResidueScales(bound=math.sqrt(limit) * math.log(limit) ** 2, loss=math.sqrt(limit))


def polignac_report(alpha: int, K: int, limit: int, cutoff: int = DEFAULT_CUTOFF) -> ProblemReport:
    count = polignac_count(alpha, K, limit)
    main, factors = polignac_main_term(alpha, K, limit, cutoff)
    scales = polignac_residue(limit)
    return ProblemReport(
        problem_id="twin_polignac",
        params={"alpha": alpha, "K": K, "limit": limit, "cutoff": cutoff},
        empirical=count,
        main_term=main,
        main_term_factors=factors,
        residue_bound=scales.bound,
        loss_bound=scales.loss,
        ratio=count / main,
    )


# ---------------------------------------------------------------------------
# Problem 3: primes strictly between N^2 and (N+1)^2


MAX_INTERVAL_N = 30_000


def square_interval_count(N: int) -> int:
    """Exact number of primes p with N^2 < p < (N+1)^2."""
    N = int(N)
    if N < 1:
        raise ValueError(f"requires N >= 1, got {N}")
    if N > MAX_INTERVAL_N:
        raise ValueError(
            f"N capped at {MAX_INTERVAL_N} so (N+1)^2 stays within the sieve budget"
        )
    lo = max(2, N * N + 1)
    hi = (N + 1) * (N + 1)
    return int(np.count_nonzero(prime_engine.sieve_range(lo, hi).spf_raw == 0))


def _even_split(n: int) -> tuple[int, int]:
    """n = 2^alpha K with K odd, for even n."""
    alpha = 0
    while n % 2 == 0:
        n //= 2
        alpha += 1
    return alpha, n


def square_interval_estimate(N: int) -> SquareIntervalEstimate:
    """Condensed main term N/log N and residue constant 4 for the interval
    (N^2, (N+1)^2), alongside the raw factors they come from.

    The even member of {N, N+1} is split as 2^alpha K; for odd N the roles
    of N and N+1 swap (the count then walks down from (N+1)^2), so the
    progression density uses the odd member's square as target range and
    the even member's square as modulus.
    """
    N = int(N)
    if N < 2:
        raise ValueError(f"requires N >= 2, got {N}")
    if N % 2 == 0:
        base, other = N, N + 1
    else:
        base, other = N + 1, N
    alpha, K = _even_split(base)
    phi_base_sq = base * prime_engine.euler_phi(base)  # phi(base^2)
    progression_density = other**2 / (phi_base_sq * math.log(other**2))
    class_product = 1.0
    for q, _ in prime_engine.factorize(K):
        if q < base:
            class_product *= 1 - 1 / q
    residue_class_count = 0.5 * class_product * 2 * base
    return SquareIntervalEstimate(
        N=N,
        main=N / math.log(N),
        residue_constant=4.0,
        progression_density=progression_density,
        residue_class_count=residue_class_count,
        base=base,
        alpha=alpha,
        K=K,
    )


def square_interval_report(N: int) -> ProblemReport:
    count = square_interval_count(N)
    est = square_interval_estimate(N)
    return ProblemReport(
        problem_id="square_interval",
        params={"N": N},
        empirical=count,
        main_term=est.main,
        main_term_factors=[("combined_main", est.main)],
        residue_bound=est.residue_constant,
        loss_bound=0.0,
        ratio=count / est.main,
    )


# ---------------------------------------------------------------------------
# Problem 4: primes of the form n^2 + 1


def quadratic_count(limit: int) -> QuadraticCount:
    """Count n < sqrt(limit) with n^2 + 1 prime.

    n = 1 (value 2) is included in total; every other contributor is even,
    and even_n reports that subcount.
    """
    limit = int(limit)
    if limit < 4:
        raise ValueError(f"requires limit >= 4, got {limit}")
    if limit > MAX_COUNT_LIMIT:
        raise ValueError(f"limit capped at {MAX_COUNT_LIMIT}")
    n_max = math.isqrt(limit - 1)
    total = 0
    even = 0
    step = 1 << 16
    for s in range(1, n_max + 1, step):
        n = np.arange(s, min(s + step, n_max + 1), dtype=np.int64)
        hit = prime_engine.is_prime_many(n * n + 1)
        total += int(hit.sum())
        even += int(hit[n % 2 == 0].sum())
    return QuadraticCount(total=total, even_n=even, n_max=n_max)


def quadratic_main_term(
    limit: int, cutoff: int = DEFAULT_CUTOFF
) -> tuple[float, list[tuple[str, float]]]:
    """Main term: class-split constant product x 2 e^(-gamma) sqrt(limit)/log limit."""
    limit = int(limit)
    if limit < 16:
        raise ValueError(f"requires limit >= 16, got {limit}")
    if cutoff < 10**5:
        raise ValueError(f"constant-product cutoff must be >= 1e5, got {cutoff}")
    factors = [
        (
            "quadratic_constant_product",
            mertens_lab.quadratic_constant_product(cutoff).value,
        ),
        (
            "analytic_factor",
            2 * math.exp(-EULER_GAMMA) * math.sqrt(limit) / math.log(limit),
        ),
    ]
    main = math.prod(v for _, v in factors)
    return main, factors


def quadratic_residue(limit: int) -> ResidueScales:
    """Residue scale limit^(1/4) (log limit)^2 and loss scale limit^(1/4)."""
    limit = int(limit)
    root4 = limit**0.25
    return ResidueScales(bound=root4 * math.log(limit) ** 2, loss=root4)


def quadratic_report(limit: int, cutoff: int = DEFAULT_CUTOFF) -> ProblemReport:
    count = quadratic_count(limit)
    main, factors = quadratic_main_term(limit, cutoff)
    scales = quadratic_residue(limit)
    return ProblemReport(
        problem_id="quadratic",
        params={"limit": limit, "cutoff": cutoff},
        empirical=count.total,
        main_term=main,
        main_term_factors=factors,
        residue_bound=scales.bound,
        loss_bound=scales.loss,
        ratio=count.total / main,
    )
