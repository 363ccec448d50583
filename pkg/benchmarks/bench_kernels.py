#!/usr/bin/env python3
"""Benchmark the compiled sieve kernels against the pure-numpy fallback.

Usage:
    python benchmarks/bench_kernels.py [--width 10000000] [--tables 2000000]
                                       [--repeat 3]

Each kernel runs on both backends (best of --repeat); outputs are checked
for equality so the timing compares like for like.
"""

import argparse
import math
import time

import numpy as np

from landaulab._kernels import pykern

try:
    from landaulab._kernels import _sievekern
except ImportError:
    _sievekern = None


def best_of(fn, repeat):
    times = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def check_equal(name, a, b):
    arrays_a = a if isinstance(a, tuple) else (a,)
    arrays_b = b if isinstance(b, tuple) else (b,)
    for x, y in zip(arrays_a, arrays_b):
        if x.dtype == np.float64:
            assert np.allclose(x, y, rtol=1e-15, atol=0), name
        else:
            assert np.array_equal(x, y), name


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--width", type=lambda s: int(float(s)), default=10**7,
                        help="window width for the segment kernels")
    parser.add_argument("--lo", type=lambda s: int(float(s)), default=10**8,
                        help="window start for the segment kernels")
    parser.add_argument("--tables", type=lambda s: int(float(s)), default=2 * 10**6,
                        help="size of the dense arithmetic tables")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if _sievekern is None:
        print("compiled extension not built; nothing to compare")
        return

    lo, width = args.lo, args.width
    base = pykern._simple_primes(math.isqrt(lo + width)).astype(np.uint64)
    jobs = [
        (f"mark_composites [{lo:.0e}, +{width:.0e})",
         lambda impl: impl.mark_composites(lo, width, base)),
        (f"smallest_factor_segment [{lo:.0e}, +{width:.0e})",
         lambda impl: impl.smallest_factor_segment(lo, width, base)),
        (f"arithmetic_tables(n={args.tables:.0e})",
         lambda impl: impl.arithmetic_tables(args.tables)),
    ]

    print(f"{'kernel':44s} {'compiled':>10s} {'python':>10s} {'speedup':>8s}")
    for name, job in jobs:
        t_c, out_c = best_of(lambda: job(_sievekern), args.repeat)
        t_p, out_p = best_of(lambda: job(pykern), args.repeat)
        check_equal(name, out_c, out_p)
        print(f"{name:44s} {t_c * 1e3:9.1f}ms {t_p * 1e3:9.1f}ms {t_p / t_c:7.2f}x")


if __name__ == "__main__":
    main()
