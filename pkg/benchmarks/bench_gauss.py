#!/usr/bin/env python3
"""Benchmark the Gauss-sum enumeration backends (compiled vs numpy fallback).

The kernel walks all 2^dim vectors of a quadratic value table; this is the
hot loop behind bk_gauss and the exhaustive identity suites.  Run after
building the extension:

    python benchmarks/bench_gauss.py [max_dim]
"""
import sys
import time

from sigmod8 import _gauss_py
from sigmod8.rng import SplitMix64
from sigmod8.z2forms import Z2SymForm

try:
    from sigmod8 import _gausskernel
except ImportError:
    _gausskernel = None


def random_enhancement(dim, rng):
    rows = [0] * dim
    for i in range(dim):
        for j in range(i, dim):
            if rng.randrange(2):
                rows[i] |= 1 << j
                if i != j:
                    rows[j] |= 1 << i
    form = Z2SymForm(dim, tuple(rows))
    diag = form.diagonal_mask()
    qdiag = tuple(((diag >> i) & 1) + 2 * rng.randrange(2) for i in range(dim))
    return qdiag, form.rows


def bench(fn, dim, qdiag, rows, min_time=0.2):
    reps = 1
    while True:
        t0 = time.perf_counter()
        for _ in range(reps):
            result = fn(dim, qdiag, rows)
        elapsed = time.perf_counter() - t0
        if elapsed >= min_time:
            return elapsed / reps, result
        reps *= 4


def main():
    max_dim = int(sys.argv[1]) if len(sys.argv) > 1 else 22
    rng = SplitMix64(42)
    print(f"{'dim':>4} {'python (ms)':>14} {'cython (ms)':>14} {'speedup':>9}")
    for dim in range(8, max_dim + 1, 2):
        qdiag, rows = random_enhancement(dim, rng)
        t_py, res_py = bench(_gauss_py.gauss_counts, dim, qdiag, rows)
        if _gausskernel is not None:
            t_cy, res_cy = bench(_gausskernel.gauss_counts, dim, qdiag, rows)
            assert res_py == res_cy, f"backend mismatch at dim {dim}"
            print(f"{dim:>4} {t_py*1e3:>14.3f} {t_cy*1e3:>14.3f} {t_py/t_cy:>8.1f}x")
        else:
            print(f"{dim:>4} {t_py*1e3:>14.3f} {'(no ext)':>14} {'-':>9}")


if __name__ == "__main__":
    main()
