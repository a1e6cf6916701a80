#!/usr/bin/env python3
"""Benchmark the JIT kernels against the pure numpy/Python fallback path.

Run directly (`python benchmarks/bench_kernels.py`); the JIT columns are
skipped when numba is not importable or CITEFRAC_DISABLE_NUMBA is set.
"""

import math
import time

import numpy as np

from citefrac import kernels


def timeit(func, repeats, warmup=1):
    for _ in range(warmup):
        func()
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        func()
        best = min(best, time.perf_counter() - start)
    return best


def bench_srange():
    grid = [(q, k, df) for q in (2.0, 3.5, 5.0) for k in (3, 7) for df in (10.0, 60.0)]

    def run_numpy():
        for q, k, df in grid:
            kernels.srange_cdf_numpy(q, k, df)

    rows = []
    t_numpy = timeit(run_numpy, repeats=5) / len(grid)
    rows.append(("numpy fallback", t_numpy))
    if kernels.NUMBA_ENABLED:

        def run_njit():
            for q, k, df in grid:
                kernels.srange_cdf_njit(q, k, df)

        t_njit = timeit(run_njit, repeats=5) / len(grid)
        rows.append(("numba njit", t_njit))
    return "studentized-range CDF (per evaluation)", rows


def bench_accumulate():
    rng = np.random.default_rng(0)
    n_edges = 2_000_000
    n_bins = 200_000
    idx = rng.integers(0, n_bins, size=n_edges)
    weights = 1.0 / rng.integers(1, 80, size=n_edges).astype(float)

    rows = [
        (
            "numpy fallback",
            timeit(lambda: kernels.accumulate_weighted_numpy(idx, weights, n_bins), 3),
        )
    ]
    if kernels.NUMBA_ENABLED:
        out = np.zeros(n_bins)
        comp = np.zeros(n_bins)

        def run_njit():
            out.fill(0.0)
            comp.fill(0.0)
            kernels._accumulate_njit(idx, weights, out, comp)

        rows.append(("numba njit", timeit(run_njit, 3)))
    return f"fractional-score accumulation ({n_edges:,} edges)", rows


def bench_csum():
    rng = np.random.default_rng(1)
    values = 1.0 / rng.integers(1, 80, size=2_000_000).astype(float)
    rows = [("math.fsum fallback", timeit(lambda: math.fsum(values), 3))]
    if kernels.NUMBA_ENABLED:
        rows.append(("numba neumaier", timeit(lambda: kernels._neumaier_sum(values), 3)))
    return "compensated sum (2,000,000 values)", rows


def main():
    print(f"numba available and enabled: {kernels.NUMBA_ENABLED}")
    print("(set CITEFRAC_DISABLE_NUMBA=1 to benchmark the fallback path alone)\n")
    for title, rows in (bench_srange(), bench_accumulate(), bench_csum()):
        print(title)
        baseline = rows[0][1]
        for name, seconds in rows:
            speedup = baseline / seconds
            print(f"  {name:<20} {seconds * 1e3:9.3f} ms   x{speedup:5.1f}")
        print()


if __name__ == "__main__":
    main()
