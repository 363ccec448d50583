"""Acceptance gate: every criterion with its stated tolerance and runtime
budget, runnable via `landaulab accept` or the pytest wrapper.

Each criterion re-derives its expected values from an oracle that shares
no code with the path under test: pure-python trial division, an odd-wheel
bytearray sieve, literal triple-loop character sums, and hand-enumerated
fixed points.
"""

from __future__ import annotations

import contextlib
import io
import math
import time
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import cli_report, dirichlet_characters, landau_estimators, mertens_lab
from . import prime_engine


@dataclass(frozen=True)
class CriterionResult:
    cid: str
    name: str
    passed: bool
    runtime_s: float
    budget_s: float
    detail: str


def format_line(r: CriterionResult) -> str:
    status = "PASS" if r.passed else "FAIL"
    return f"{status} {r.cid} {r.name} [{r.runtime_s:.2f}s <= {r.budget_s:.0f}s] {r.detail}"


# ---------------------------------------------------------------------------
# oracles (independent of the sieve kernels and character collapse)


@lru_cache(maxsize=8)
def _oracle_base_primes(limit: int) -> tuple[int, ...]:
    out = []
    for m in range(2, limit + 1):
        if all(m % q for q in range(2, math.isqrt(m) + 1)):
            out.append(m)
    return tuple(out)


def _trial_division_window(lo: int, hi: int) -> np.ndarray:
    cand = np.arange(lo, hi, dtype=np.int64)
    composite = cand < 2
    for q in _oracle_base_primes(math.isqrt(max(hi - 1, 2))):
        composite |= (cand % q == 0) & (cand != q)
    return cand[~composite]


def _odd_bitset_sieve(n: int) -> tuple[int, bytearray]:
    """Prime count <= n plus the odd-index sieve: byte i covers 2i+1, 0 = prime."""
    m = (n - 1) // 2
    sieve = bytearray(m + 1)
    sieve[0] = 1  # 1 is not prime
    i = 1
    while (2 * i + 1) ** 2 <= n:
        if not sieve[i]:
            p = 2 * i + 1
            start = (p * p - 1) // 2
            sieve[start::p] = b"\x01" * len(range(start, m + 1, p))
        i += 1
    count = (1 if n >= 2 else 0) + (m - sum(sieve[1:]))
    return count, sieve


# ---------------------------------------------------------------------------
# criteria


def _c1_sieve_oracle() -> tuple[bool, str]:
    rng = np.random.default_rng(20260809)
    for _ in range(200):
        width = int(rng.integers(1, 10**4 + 1))
        lo = int(rng.integers(2, 10**6 - width + 1))
        hi = lo + width
        got = prime_engine.sieve_range(lo, hi).primes()
        want = _trial_division_window(lo, hi)
        if not np.array_equal(got, want):
            return False, f"window [{lo},{hi}) disagrees with trial division"
    pi_sieve = prime_engine.primes_up_to(10**6).size
    pi_bitset, _ = _odd_bitset_sieve(10**6)
    ok = pi_sieve == pi_bitset == 78498
    return ok, f"200 windows agree; pi(1e6) sieve={pi_sieve} bitset={pi_bitset}"


def _c2_character_exactness() -> tuple[bool, str]:
    worst_orth = 0.0
    for d in range(1, 201):
        g = dirichlet_characters.build_character_group(d)
        mat = g.value_matrix()
        idx = np.flatnonzero(np.gcd(np.arange(d), d) == 1)
        v = mat[:, idx]
        gram = v.conj().T @ v
        dev = float(np.max(np.abs(gram - len(g) * np.eye(idx.size))))
        worst_orth = max(worst_orth, dev)
        if dev >= 1e-9:
            return False, f"orthogonality deviation {dev:.2e} at d={d}"
    worst_id = 0.0
    for d in range(1, 501):
        g = dirichlet_characters.build_character_group(d)
        phi = len(g)
        for a in range(1, d + 1):
            if math.gcd(a, d) != 1:
                continue
            got = dirichlet_characters.character_sum_nonprincipal(g, a)
            want = phi - 1 if a % d == 1 % d else -1
            dev = abs(got - want)
            worst_id = max(worst_id, dev)
            if dev >= 1e-9:
                return False, f"nonprincipal-sum identity off by {dev:.2e} at d={d}, a={a}"
    return True, f"worst orthogonality dev {worst_orth:.1e}, worst identity dev {worst_id:.1e}"


def _c3_residue_bound() -> tuple[bool, str]:
    ratios = []
    for x in (10**3, 10**4, 10**5, 10**6):
        r = dirichlet_characters.residue_sum(x, 1)
        ratios.append((x, r.ratio))
        if not r.ratio < 1:
            return False, f"|sum|/bound = {r.ratio:.3f} >= 1 at x={x}"
    for x in (100, 1000):
        fast = dirichlet_characters.residue_sum(x, 1).sum_value
        slow = dirichlet_characters.residue_sum_direct(x, 1)
        scale = max(abs(fast), abs(slow))
        if scale and abs(fast - slow) > 1e-6 * scale:
            return False, f"collapsed vs direct mismatch at x={x}: {fast} vs {slow}"
    ratio_text = ", ".join(f"x=1e{int(math.log10(x))}:{r:.2e}" for x, r in ratios)
    return True, f"ratios {ratio_text}; collapsed = direct at x=100,1000"


def _c4_mertens() -> tuple[bool, str]:
    drift = mertens_lab.mertens_log_sum(10**6) - math.log(10**6)
    ratio = mertens_lab.mertens_product(10**6) / (
        math.exp(mertens_lab.EULER_GAMMA) * math.log(10**6)
    )
    ok = -1.40 <= drift <= -1.25 and 0.99 <= ratio <= 1.01
    return ok, f"log-sum drift {drift:.4f} in [-1.40,-1.25]; product ratio {ratio:.5f} in [0.99,1.01]"


def _c5_twin_constant() -> tuple[bool, str]:
    p7 = mertens_lab.twin_constant_product(10**7).value
    p6 = mertens_lab.twin_constant_product(10**6).value
    ok = 0.66014 <= p7 <= 0.66018 and abs(p7 - p6) < 1e-5
    return ok, f"P(1e7)={p7:.7f}, |P(1e7)-P(1e6)|={abs(p7 - p6):.1e}"


def _c6_goldbach() -> tuple[bool, str]:
    for n, want in ((4, 1), (10, 2), (100, 6)):
        got = landau_estimators.goldbach_count(n).unordered_count
        if got != want:
            return False, f"unordered count at N={n}: {got} != {want}"
    witness = landau_estimators.goldbach_count(10**6)
    if witness.unordered_count <= 0:
        return False, "no representations found at N=1e6"
    hl = landau_estimators.goldbach_hl_reference(10**6)
    hl_ratio = witness.ordered_count / hl
    main, _ = landau_estimators.goldbach_main_term(10**6)
    literal_ratio = witness.unordered_count / main
    ok = 0.90 <= hl_ratio <= 1.10
    return ok, (
        f"counts 1/2/6 at 4/10/100; N=1e6 unordered={witness.unordered_count}, "
        f"ordered/HL={hl_ratio:.4f} in [0.90,1.10] (literal-formula ratio {literal_ratio:.3f}, untoleranced)"
    )


def _c7_twin_pairs() -> tuple[bool, str]:
    spot = landau_estimators.polignac_count(1, 1, 100)
    if spot != 8:
        return False, f"twin count to 100: {spot} != 8"
    got = landau_estimators.polignac_count(1, 1, 10**6)
    _, sieve = _odd_bitset_sieve(10**6)
    flags = np.frombuffer(bytes(sieve), dtype=np.uint8)
    # pair (2i+1, 2i+3) both prime, upper member <= 1e6
    brute = int(np.count_nonzero((flags[1:-1] == 0) & (flags[2:] == 0)))
    ok = got == brute
    return ok, f"polignac(1,1,1e6)={got}, bitset pair scan={brute}"


def _c8_legendre() -> tuple[bool, str]:
    spots = {1: 2, 10: 5}
    minimum = None
    for n in range(1, 3001):
        c = landau_estimators.square_interval_count(n)
        if n in spots and c != spots[n]:
            return False, f"count at N={n}: {c} != {spots[n]}"
        if c < 1:
            return False, f"empty interval at N={n}"
        minimum = c if minimum is None else min(minimum, c)
    return True, f"counts >= 1 for N=1..3000 (min {minimum}); spots N=1->2, N=10->5"


def _c9_quadratic() -> tuple[bool, str]:
    got = landau_estimators.quadratic_count(101)
    if got.total != 5:
        return False, f"count at limit=101: {got.total} != 5"
    c4 = landau_estimators.quadratic_count(10**4)
    c6 = landau_estimators.quadratic_count(10**6)
    if not c4.total <= c6.total:
        return False, f"counts not monotone: {c4.total} > {c6.total}"
    # every counted n > 1 is even <=> exactly one odd contributor (n = 1)
    for c in (got, c4, c6):
        if c.total - c.even_n != 1:
            return False, f"odd n > 1 slipped into the count at n_max={c.n_max}"
    return True, f"limit=101 -> 5; counts {c4.total} <= {c6.total}; all n > 1 even"


_FIXED_COMMANDS = [
    ["goldbach", "--n", "100", "--cutoff", "100000", "--deterministic"],
    ["mertens", "--kind", "product", "--x", "10000", "--deterministic"],
    ["twin", "--limit", "100", "--cutoff", "100000", "--format", "json", "--deterministic"],
]


def _run_cli(argv: list[str]) -> str:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_report.run(argv)
    if code != 0:
        raise AssertionError(f"exit {code} for {argv}")
    return buf.getvalue()


def _c10_serialization() -> tuple[bool, str]:
    for argv in _FIXED_COMMANDS:
        first = _run_cli(argv)
        second = _run_cli(argv)
        if first.encode() != second.encode():
            return False, f"output not byte-identical for {' '.join(argv)}"
        if "json" in argv:
            rows = cli_report.rows_from_json(first)
            if cli_report.rows_to_json(rows) != first:
                return False, f"JSON round-trip changed rows for {' '.join(argv)}"
    csv_text = _run_cli(_FIXED_COMMANDS[0])
    header_ok = csv_text.splitlines()[0] == ",".join(cli_report.CSV_HEADER)
    return header_ok, "3 fixed commands byte-identical across runs; JSON round-trips"


CRITERIA = [
    ("c1", "sieve-oracle-equivalence", 5.0, _c1_sieve_oracle),
    ("c2", "character-exactness", 30.0, _c2_character_exactness),
    ("c3", "residue-sum-bound", 120.0, _c3_residue_bound),
    ("c4", "mertens-validators", 10.0, _c4_mertens),
    ("c5", "twin-constant-product", 10.0, _c5_twin_constant),
    ("c6", "goldbach-fixed-points", 60.0, _c6_goldbach),
    ("c7", "twin-pair-counts", 10.0, _c7_twin_pairs),
    ("c8", "legendre-range-check", 120.0, _c8_legendre),
    ("c9", "quadratic-counts", 10.0, _c9_quadratic),
    ("c10", "serialization-determinism", 1.0, _c10_serialization),
]


def run_one(cid: str) -> CriterionResult:
    entry = next((c for c in CRITERIA if c[0] == cid), None)
    if entry is None:
        raise ValueError(f"unknown criterion {cid!r}")
    cid, name, budget, fn = entry
    start = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # a crash is a failure, not an abort
        passed, detail = False, f"raised {type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if passed and elapsed >= budget:
        passed = False
        detail += f" (over budget: {elapsed:.1f}s >= {budget:.0f}s)"
    return CriterionResult(
        cid=cid, name=name, passed=passed, runtime_s=elapsed, budget_s=budget, detail=detail
    )


def run_all(only: str | None = None) -> list[CriterionResult]:
    selected = [c for c in CRITERIA if only is None or only in c[0] or only in c[1]]
    return [run_one(c[0]) for c in selected]
