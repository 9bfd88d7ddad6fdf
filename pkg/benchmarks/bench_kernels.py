#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure NumPy fallback.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

import numpy as np

from dirichlet_lab import _kernels


def best_of(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="smaller sizes, fewer repeats")
    args = parser.parse_args()

    impls = _kernels.available_implementations()
    if "compiled" not in impls:
        print("compiled kernels not available; showing pure timings only")
    repeats = 2 if args.quick else 3

    sieve_sizes = [10**5, 10**6] if args.quick else [10**5, 10**6, 10**7]
    series_sizes = [2048, 8192] if args.quick else [2048, 8192, 32768]

    rows = []
    for limit in sieve_sizes:
        timings = {
            name: best_of(lambda impl=impl: impl.sieve_spf_omega(limit), repeats)
            for name, impl in impls.items()
        }
        rows.append((f"sieve_spf_omega({limit:.0e})", timings))

    rng = np.random.default_rng(0)
    for n in series_sizes:
        a = np.zeros(n + 1, dtype=np.complex128)
        a[1:] = rng.normal(size=n) + 1j * rng.normal(size=n)
        a[1] = 1.5
        timings = {
            name: best_of(lambda impl=impl: impl.exp_series(a), repeats)
            for name, impl in impls.items()
        }
        rows.append((f"exp_series(N={n})", timings))
        f = a.copy()
        g = a[::-1].copy()
        g[0] = 0
        timings = {
            name: best_of(lambda impl=impl: impl.dirichlet_convolve(f, g, n), repeats)
            for name, impl in impls.items()
        }
        rows.append((f"dirichlet_convolve(N={n})", timings))

    names = list(impls)
    header = f"{'kernel':<30}" + "".join(f"{n:>14}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label, timings in rows:
        line = f"{label:<30}" + "".join(f"{timings[n] * 1e3:>12.2f}ms" for n in names)
        if len(names) == 2:
            line += f"{timings['pure'] / timings['compiled']:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
