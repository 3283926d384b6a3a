#!/usr/bin/env python3
"""Benchmark the compiled hot-kernel core against the pure-NumPy fallback.

Run:  python3 benchmarks/bench_core.py [--repeat 5]

Covers the three primitives that dominate suite runtime: weighted phase
sums (kernel/oscillatory evaluation), batched phase sums (radial
quadrature of the limit kernel), and lattice-band enumeration.
"""

import argparse
import time

import numpy as np

from weyllab import _purecore

try:
    from weyllab import _fastcore
except ImportError:
    _fastcore = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if _fastcore is None:
        print("compiled core not built; showing fallback timings only")

    rng = np.random.default_rng(42)
    rows = []

    for n_pts in (10_000, 100_000, 1_000_000):
        pts = rng.integers(-400, 401, size=(n_pts, 2)).astype(float)
        w = (rng.normal(size=n_pts) + 1j * rng.normal(size=n_pts)).astype(complex)
        h = np.array([0.37, -1.21])
        rows.append(
            (
                f"phase_sum n={n_pts}",
                best_of(lambda: _purecore.phase_sum(pts, w, h, 1.0), args.repeat),
                best_of(lambda: _fastcore.phase_sum(pts, w, h, 1.0), args.repeat)
                if _fastcore
                else None,
            )
        )

    pts = rng.integers(-400, 401, size=(100_000, 2)).astype(float)
    w = (rng.normal(size=100_000) + 1j * rng.normal(size=100_000)).astype(complex)
    h = np.array([0.37, -1.21])
    ts = np.geomspace(0.01, 1.0, 64)
    rows.append(
        (
            "phase_sum_batch 64x100k",
            best_of(lambda: _purecore.phase_sum_batch(pts, w, h, ts), args.repeat),
            best_of(lambda: _fastcore.phase_sum_batch(pts, w, h, ts), args.repeat)
            if _fastcore
            else None,
        )
    )

    coeffs = np.array([1.0, 1.0])
    exps = np.array([[4, 0], [0, 4]], dtype=np.int64)
    rows.append(
        (
            "enumerate_poly quartic L=1e9",
            best_of(lambda: _purecore.enumerate_poly(coeffs, exps, 200, 1e9), args.repeat),
            best_of(lambda: _fastcore.enumerate_poly(coeffs, exps, 200, 1e9), args.repeat)
            if _fastcore
            else None,
        )
    )
    q = np.eye(2)
    rows.append(
        (
            "enumerate_metric L=4e4",
            best_of(lambda: _purecore.enumerate_metric(q, 2.0, 210, 4e4), args.repeat),
            best_of(lambda: _fastcore.enumerate_metric(q, 2.0, 210, 4e4), args.repeat)
            if _fastcore
            else None,
        )
    )

    v = rng.normal(size=1_000_000) + 1j * rng.normal(size=1_000_000)
    rows.append(
        (
            "pairwise_sum n=1e6",
            best_of(lambda: _purecore.pairwise_sum(v), args.repeat),
            best_of(lambda: _fastcore.pairwise_sum(v), args.repeat) if _fastcore else None,
        )
    )

    width = max(len(r[0]) for r in rows)
    print(f"{'benchmark':<{width}}  {'python':>10}  {'cython':>10}  {'speedup':>8}")
    for name, tp, tc in rows:
        if tc is None:
            print(f"{name:<{width}}  {tp * 1e3:>8.2f}ms  {'-':>10}  {'-':>8}")
        else:
            print(
                f"{name:<{width}}  {tp * 1e3:>8.2f}ms  {tc * 1e3:>8.2f}ms  {tp / tc:>7.2f}x"
            )


if __name__ == "__main__":
    main()
