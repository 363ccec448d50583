"""Sieve and arithmetic-function tests against trial-division oracles."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from landaulab import prime_engine as pe

# ---------------------------------------------------------------------------
# Oracles: plain trial division, written without touching the sieve kernels.


def trial_division_is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, math.isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


def trial_division_primes(lo: int, hi: int) -> list[int]:
    return [n for n in range(lo, hi) if trial_division_is_prime(n)]


def naive_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def naive_mu(n: int) -> int:
    if n == 1:
        return 1
    m, k = n, 0
    for q in range(2, n + 1):
        if q * q > m:
            break
        if m % q == 0:
            m //= q
            if m % q == 0:
                return 0
            k += 1
    if m > 1:
        k += 1
    return (-1) ** k


def naive_lambda(n: int) -> float:
    for q in range(2, n + 1):
        if n % q == 0:
            m = n
            while m % q == 0:
                m //= q
            return math.log(q) if m == 1 else 0.0
    return 0.0


# ---------------------------------------------------------------------------
# sieve_range / primes_up_to


def test_sieve_range_examples():
    assert pe.sieve_range(2, 30).primes().tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert pe.sieve_range(2, 3).primes().tolist() == [2]
    assert pe.sieve_range(100, 121).primes().tolist() == [101, 103, 107, 109, 113]


def test_sieve_range_rejects_bad_bounds():
    with pytest.raises(ValueError):
        pe.sieve_range(1, 10)
    with pytest.raises(ValueError):
        pe.sieve_range(10, 10)
    with pytest.raises(ValueError):
        pe.sieve_range(30, 2)


def test_prime_table_invariants():
    t = pe.sieve_range(500, 1000)
    for n in range(500, 1000):
        p = t.spf(n)
        assert n % p == 0
        assert trial_division_is_prime(p)
        assert all(n % q != 0 for q in range(2, p))
        assert t.is_prime(n) == (p == n) == trial_division_is_prime(n)
    root = math.isqrt(1000)
    assert t.base_primes.tolist() == trial_division_primes(2, root + 1)


@settings(max_examples=40, deadline=None)
@given(lo=st.integers(2, 10**6 - 1), width=st.integers(1, 2000))
def test_sieve_window_matches_trial_division(lo, width):
    hi = min(lo + width, 10**6)
    got = pe.sieve_range(lo, hi).primes().tolist()
    assert got == trial_division_primes(lo, hi)


def test_primes_up_to():
    assert pe.primes_up_to(10).tolist() == [2, 3, 5, 7]
    assert pe.primes_up_to(2).tolist() == [2]
    assert pe.primes_up_to(10**6).size == 78498
    with pytest.raises(ValueError):
        pe.primes_up_to(1)


def test_iter_prime_blocks_partitions():
    whole = pe.primes_up_to(30000)
    blocks = list(pe.iter_prime_blocks(2, 30001, block=7001))
    assert np.concatenate(blocks).tolist() == whole.tolist()


def test_determinism_across_runs_and_threads():
    a = pe.sieve_range(2, 200000)
    b = pe.sieve_range(2, 200000)
    c = pe.sieve_range(2, 200000, threads=4)
    assert a.spf_raw.tobytes() == b.spf_raw.tobytes() == c.spf_raw.tobytes()


# ---------------------------------------------------------------------------
# phi / mu / Lambda


def test_point_value_examples():
    assert pe.euler_phi(10) == 4
    assert pe.moebius(12) == 0
    assert pe.von_mangoldt(8) == pytest.approx(math.log(2), rel=1e-15)
    assert pe.euler_phi(1) == 1
    assert pe.moebius(1) == 1
    assert pe.von_mangoldt(1) == 0.0


@pytest.mark.parametrize("fn", [pe.euler_phi, pe.moebius, pe.von_mangoldt, pe.arithmetic_point])
def test_point_values_reject_zero(fn):
    with pytest.raises(ValueError):
        fn(0)


def test_point_values_against_naive():
    for n in list(range(1, 200)) + [720, 1024, 2310, 9973]:
        assert pe.euler_phi(n) == naive_phi(n), n
        assert pe.moebius(n) == naive_mu(n), n
        assert pe.von_mangoldt(n) == pytest.approx(naive_lambda(n), abs=1e-12), n


def test_arithmetic_point_invariants():
    a = pe.arithmetic_point(1)
    assert (a.phi, a.mu, a.lambda_vm) == (1, 1, 0.0)
    for n in range(2, 300):
        a = pe.arithmetic_point(n)
        squareful = any(e > 1 for _, e in pe.factorize(n))
        assert (a.mu == 0) == squareful
        prime_power = len(pe.factorize(n)) == 1
        assert (a.lambda_vm > 0) == prime_power


def test_dense_tables_match_point_values():
    t = pe.tables_up_to(5000)
    for n in range(1, 5001):
        assert t.phi[n] == pe.euler_phi(n)
        assert t.mu[n] == pe.moebius(n)
    lam = t.lam[: 5001]
    for n in (2, 4, 8, 9, 25, 27, 4096, 4913):
        assert lam[n] == pytest.approx(pe.von_mangoldt(n), rel=1e-15)


@settings(max_examples=60, deadline=None)
@given(m=st.integers(1, 10**4), n=st.integers(1, 10**4))
def test_multiplicativity(m, n):
    if math.gcd(m, n) != 1:
        m, n = m, 1
    assert pe.euler_phi(m * n) == pe.euler_phi(m) * pe.euler_phi(n)
    assert pe.moebius(m * n) == pe.moebius(m) * pe.moebius(n)


def test_multiplicativity_random_bulk():
    rng = np.random.default_rng(20260809)
    done = 0
    while done < 1000:
        m, n = (int(v) for v in rng.integers(1, 10**4, size=2))
        if math.gcd(m, n) != 1:
            continue
        assert pe.euler_phi(m * n) == pe.euler_phi(m) * pe.euler_phi(n)
        assert pe.moebius(m * n) == pe.moebius(m) * pe.moebius(n)
        done += 1


def test_lambda_divisor_sum_identity():
    # sum of Lambda(d) over d | n telescopes to log n
    N = 10**4
    t = pe.tables_up_to(N)
    lam = t.lam[: N + 1]
    acc = np.zeros(N + 1)
    for d in range(2, N + 1):
        if lam[d]:
            acc[d::d] += lam[d]
    n = np.arange(2, N + 1)
    assert np.allclose(acc[2:], np.log(n), rtol=1e-9, atol=0)


# ---------------------------------------------------------------------------
# count_primes_in_progression


def test_progression_examples():
    assert pe.count_primes_in_progression(1, 4, 100).count == 11
    assert pe.count_primes_in_progression(1, 1, 100).count == 25
    with pytest.raises(ValueError):
        pe.count_primes_in_progression(2, 4, 100)


def test_progression_main_and_error_fields():
    c = pe.count_primes_in_progression(1, 4, 100)
    assert c.main == pytest.approx(100 / (2 * math.log(100)))
    assert c.error == pytest.approx(c.count - c.main)


def test_progression_validation():
    with pytest.raises(ValueError):
        pe.count_primes_in_progression(0, 4, 100)
    with pytest.raises(ValueError):
        pe.count_primes_in_progression(5, 4, 100)
    with pytest.raises(ValueError):
        pe.count_primes_in_progression(1, 4, 1)
    with pytest.raises(ValueError):
        pe.count_primes_in_progression(1, 200, 100)


@pytest.mark.parametrize("d", [1, 2, 3, 4, 6, 12, 30, 49, 50])
@pytest.mark.parametrize("x", [100, 10**4, 10**5])
def test_progression_partition(d, x):
    # classes coprime to d plus the primes dividing d exhaust all primes <= x
    total = sum(
        pe.count_primes_in_progression(l, d, x).count
        for l in range(1, d + 1)
        if math.gcd(l, d) == 1
    )
    dividing = sum(1 for p, _ in pe.factorize(d) if p <= x)
    assert total + dividing == pe.primes_up_to(x).size


def test_progression_threads_deterministic():
    a = pe.count_primes_in_progression(3, 10, 10**5)
    b = pe.count_primes_in_progression(3, 10, 10**5, threads=4)
    assert a == b


# ---------------------------------------------------------------------------
# helpers


def test_is_prime_many():
    v = np.array([0, 1, 2, 3, 4, 97, 99, 7919, 7920])
    assert pe.is_prime_many(v).tolist() == [
        trial_division_is_prime(int(x)) for x in v
    ]


def test_primality_mask():
    mask = pe.primality_mask(10**4)
    assert mask.sum() == len(trial_division_primes(2, 10**4 + 1))
    idx = np.flatnonzero(mask)
    assert idx[0] == 2 and idx[-1] == 9973


def test_factorize():
    assert pe.factorize(1) == []
    assert pe.factorize(2**10) == [(2, 10)]
    assert pe.factorize(2 * 3 * 3 * 97) == [(2, 1), (3, 2), (97, 1)]
    big = 999983 * 999979  # product of two primes above any cached table
    assert pe.factorize(big) == [(999979, 1), (999983, 1)]
