"""Mertens sums / constant products against hand oracles, rational
arithmetic, and the classical asymptotics."""

import math
from fractions import Fraction

import pytest

from landaulab import mertens_lab as ml
from landaulab import prime_engine as pe


def primes_between(lo, hi):
    return [int(p) for p in pe.primes_up_to(hi) if lo <= p <= hi]


# ---------------------------------------------------------------------------
# mertens_log_sum / mertens_product / phi_reciprocal_sum


def test_log_sum_hand_oracle():
    want = sum(math.log(p) / p for p in (2, 3, 5, 7))
    assert ml.mertens_log_sum(10) == pytest.approx(want, rel=1e-15)
    assert ml.mertens_log_sum(2) == pytest.approx(math.log(2) / 2, rel=1e-15)
    with pytest.raises(ValueError):
        ml.mertens_log_sum(1)


def test_log_sum_constant_window():
    drift6 = ml.mertens_log_sum(10**6) - math.log(10**6)
    drift5 = ml.mertens_log_sum(10**5) - math.log(10**5)
    assert -1.40 <= drift6 <= -1.25
    assert abs(drift6 - drift5) < 0.01


@pytest.mark.parametrize("x", [10**4, 10**5, 10**6])
def test_log_sum_drift_band(x):
    assert -1.5 <= ml.mertens_log_sum(x) - math.log(x) <= -1.1


def test_log_sum_oscillation_bounded():
    drifts = [ml.mertens_log_sum(10**k) - math.log(10**k) for k in (3, 4, 5, 6)]
    assert max(drifts) - min(drifts) <= 0.2


def test_product_hand_oracles():
    assert ml.mertens_product(3) == pytest.approx(3.0, rel=1e-14)
    assert ml.mertens_product(2) == pytest.approx(2.0, rel=1e-15)
    with pytest.raises(ValueError):
        ml.mertens_product(1)


@pytest.mark.parametrize("x", [10**4, 10**5, 10**6])
def test_product_tracks_exp_gamma_log(x):
    ratio = ml.mertens_product(x) / (math.exp(ml.EULER_GAMMA) * math.log(x))
    assert 0.98 <= ratio <= 1.02


def test_phi_reciprocal_sum():
    assert ml.phi_reciprocal_sum(1) == 1.0
    assert ml.phi_reciprocal_sum(4) == pytest.approx(3.0, rel=1e-14)
    ratio = ml.phi_reciprocal_sum(10**6) / math.log(10**6)
    assert ratio < 2.5
    with pytest.raises(ValueError):
        ml.phi_reciprocal_sum(0)


# ---------------------------------------------------------------------------
# tail and window products


def test_tail_product_rejects_zero_factor():
    with pytest.raises(ValueError):
        ml.totient_tail_product(1.0, 2, 100)
    with pytest.raises(ValueError):
        ml.totient_tail_product(0.5, 3, 100)


def test_tail_product_theta1_matches_direct_product():
    got = ml.totient_tail_product(1.0, 3, 1000)
    want = 1.0
    for q in primes_between(3, 1000):
        want *= (1 - 1 / (q - 1)) / (1 - 1 / q)
    assert got.value == pytest.approx(want, rel=1e-12)
    assert got.cutoff == 997
    assert got.tail_note == pytest.approx(2 / 1000)


def test_tail_product_theta1_near_one_for_large_w():
    # the tail product tends to 1 like 1/log w
    for w, slack in ((11, 0.7), (101, 0.35), (1009, 0.25)):
        est = ml.totient_tail_product(1.0, w, 10**6)
        assert 0.5 <= est.value <= 2.0
        assert abs(est.value - 1) <= slack / math.log(w)


def test_tail_product_theta2_positive():
    est = ml.totient_tail_product(2.0, 2, 10**5)
    assert est.value > 0
    want = 1.0
    for q in primes_between(2, 100):
        want *= (1 - 1 / (q * (q - 1))) / (1 - 1 / q)
    assert ml.totient_tail_product(2.0, 2, 100).value == pytest.approx(want, rel=1e-12)


def test_window_product_empty_window():
    w = ml.totient_window_product(1.0, 7, 7)
    assert w.estimate.value == 1.0
    assert w.estimate.cutoff == 2


def test_window_product_direct_product_oracle():
    got = ml.totient_window_product(1.0, 3, 100)
    want = 1.0
    for q in primes_between(3, 97):
        want *= 1 - 1 / (q - 1)
    assert got.estimate.value == pytest.approx(want, rel=1e-12)
    # both orientation ratios are reported; value/(log w / log z) is the one near 1
    assert got.ratio_to_logw_over_logz == pytest.approx(
        got.estimate.value * math.log(100) / math.log(3), rel=1e-12
    )
    assert got.ratio_to_logz_over_logw == pytest.approx(
        got.estimate.value * math.log(3) / math.log(100), rel=1e-12
    )


def test_window_product_tracks_logw_over_logz():
    w = ml.totient_window_product(1.0, 1000, 10**6)
    assert w.estimate.value == pytest.approx(0.5, abs=0.01)
    assert w.ratio_to_logw_over_logz == pytest.approx(1.0, abs=0.02)


def test_window_product_monotone_decreasing_in_z():
    values = [
        ml.totient_window_product(1.0, 3, z).estimate.value for z in (10, 100, 1000, 10**4)
    ]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_window_product_rejects_zero_factor():
    with pytest.raises(ValueError):
        ml.totient_window_product(1.0, 2, 100)
    with pytest.raises(ValueError):
        ml.totient_window_product(1.0, 5, 3)


# ---------------------------------------------------------------------------
# constant products


def test_twin_constant_hand_oracles():
    assert ml.twin_constant_product(3).value == pytest.approx(0.75, rel=1e-15)
    assert ml.twin_constant_product(5).value == pytest.approx(0.703125, rel=1e-15)
    with pytest.raises(ValueError):
        ml.twin_constant_product(2)


def test_twin_constant_convergence():
    p7 = ml.twin_constant_product(10**7)
    p6 = ml.twin_constant_product(10**6)
    assert 0.66014 <= p7.value <= 0.66018
    assert abs(p7.value - p6.value) < 1e-5
    assert p7.cutoff == 9999991


def test_twin_constant_monotone_and_bounded():
    values = [ml.twin_constant_product(10**k).value for k in range(1, 7)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert all(v >= 0.6 for v in values)


def test_quadratic_constant_hand_oracles():
    assert ml.quadratic_constant_product(3).value == pytest.approx(1.5, rel=1e-15)
    assert ml.quadratic_constant_product(5).value == pytest.approx(1.125, rel=1e-15)
    with pytest.raises(ValueError):
        ml.quadratic_constant_product(2)


def test_quadratic_constant_cutoff_sensitivity_small():
    p7 = ml.quadratic_constant_product(10**7).value
    p6 = ml.quadratic_constant_product(10**6).value
    assert abs(p7 - p6) < 1e-3


# ---------------------------------------------------------------------------
# accumulation quality


def test_log_space_matches_rational_arithmetic():
    # first 20 odd primes of the twin product, exactly in Fractions
    primes = primes_between(3, 1000)[:20]
    exact = Fraction(1)
    for q in primes:
        exact *= 1 - Fraction(1, (q - 1) ** 2)
    got = ml.twin_constant_product(primes[-1]).value
    assert abs(got - float(exact)) <= 1e-10 * float(exact)


def test_products_thread_deterministic():
    a = ml.twin_constant_product(10**6)
    b = ml.twin_constant_product(10**6, threads=4)
    assert a.value == b.value
    c = ml.mertens_product(10**6)
    d = ml.mertens_product(10**6, threads=3)
    assert c == d
