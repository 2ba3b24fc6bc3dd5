"""Benchmark the circumcenter-iteration kernels: compiled vs pure NumPy.

Runs the same long iteration workload through both backends on periodic
parameter vectors (so the sequence neither collapses nor blows up, and no
truncation guard fires), checks that the outputs agree, and reports timings.

Usage:
    python3 benchmarks/bench_kernels.py [--steps N] [--repeats K] [--dims 2,3,4,5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from circumseq import construct_seed, diameter, max_product, solve_periodic
from circumseq import _kernels_py

try:
    from circumseq import _speedups
except ImportError:
    _speedups = None


def periodic_seed(d: int) -> np.ndarray:
    roots = solve_periodic(d)
    t_star = max_product(d).t_star
    best = min(roots, key=lambda r: abs(float(r[0]) - t_star))
    return construct_seed(best).points


def run_backend(module, seed: np.ndarray, steps: int, repeats: int):
    diam = diameter(seed)
    args = (steps, 1e-9, 1e-9 * diam, 1e12 * diam, seed[0])
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        buf, status, count = module.iterate_circumcenters(seed, *args)
        best = min(best, time.perf_counter() - t0)
        result = (np.asarray(buf)[:count], status, count)
    return best, result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=20000)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--dims", type=str, default="2,3,4,5")
    args = parser.parse_args()
    dims = [int(s) for s in args.dims.split(",")]

    if _speedups is None:
        print("compiled kernel unavailable; timing the pure backend only")

    header = f"{'d':>3} {'steps':>8} {'pure (ms)':>12} {'compiled (ms)':>14} {'speedup':>9} {'max |diff|':>12}"
    print(header)
    print("-" * len(header))
    for d in dims:
        seed = periodic_seed(d)
        t_pure, (buf_p, status_p, count_p) = run_backend(
            _kernels_py, seed, args.steps, args.repeats
        )
        if status_p != _kernels_py.STATUS_OK:
            raise RuntimeError(f"pure backend stopped early (status {status_p})")
        if _speedups is None:
            print(f"{d:>3} {args.steps:>8} {t_pure * 1e3:>12.2f} {'-':>14} {'-':>9} {'-':>12}")
            continue
        t_fast, (buf_c, status_c, count_c) = run_backend(
            _speedups, seed, args.steps, args.repeats
        )
        if status_c != status_p or count_c != count_p:
            raise RuntimeError("backends disagree on status or count")
        diff = float(np.max(np.abs(buf_p - buf_c)))
        print(
            f"{d:>3} {args.steps:>8} {t_pure * 1e3:>12.2f} {t_fast * 1e3:>14.2f}"
            f" {t_pure / t_fast:>8.1f}x {diff:>12.3e}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
