#!/usr/bin/env python3
"""Compare the compiled kernels against the pure-Python twins.

Two views:

* raw kernel scans (best_pair / best_triple) on a shared support pool,
* a full oracle_search with the backend swapped underneath.

Both backends must return bit-identical values; the benchmark asserts
that before it reports any timing, so a speedup never hides a drift.

Usage:
    python benchmarks/bench_kernels.py [--grid 40] [--steps 32] [--repeat 5]
"""

from __future__ import annotations

import argparse
import statistics
import struct
import time

import numpy as np

from tailmax import _backend
from tailmax import _kernels_py as kpy
from tailmax.distcore import Problem
from tailmax.oracle import OracleConfig, build_support_pool, oracle_search

try:
    from tailmax import _kernels as kc
except ImportError:
    kc = None

KERNEL_NAMES = ("pair_value", "triple_value", "best_pair", "best_triple")


def _best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times), out


def _swap_backend(module):
    previous = {name: getattr(_backend, name) for name in KERNEL_NAMES}
    for name in KERNEL_NAMES:
        setattr(_backend, name, getattr(module, name))
    return previous


def _restore_backend(previous):
    for name, fn in previous.items():
        setattr(_backend, name, fn)


def bench_kernels(grid_n, steps, repeat):
    p = Problem(n=2, m=0.62, t=0.9)
    pool = np.ascontiguousarray(build_support_pool(p, grid_n), dtype=np.float64)
    rows = []
    for label, fn, args in [
        ("best_pair n=2", "best_pair", (2, pool, 0.62, 0.9)),
        ("best_triple n=2", "best_triple", (2, pool, 0.62, 0.9, steps)),
        ("best_triple n=4", "best_triple", (4, pool, 0.55, 1.7, steps)),
    ]:
        t_py, _, out_py = _best_of(lambda: getattr(kpy, fn)(*args), repeat)
        if kc is None:
            rows.append((label, t_py, None, out_py, None))
            continue
        t_c, _, out_c = _best_of(lambda: getattr(kc, fn)(*args), repeat)
        assert struct.pack("<d", out_c[0]) == struct.pack("<d", out_py[0]), label
        assert out_c[1:] == out_py[1:], label
        rows.append((label, t_py, t_c, out_py, out_c))
    return rows


def bench_search(grid_n, steps, repeat):
    p = Problem(n=2, m=0.62, t=0.9)
    cfg = OracleConfig(grid_n=grid_n, prob_steps=steps)
    rows = []
    previous = _swap_backend(kpy)
    try:
        t_py, _, r_py = _best_of(lambda: oracle_search(p, cfg), repeat)
    finally:
        _restore_backend(previous)
    if kc is not None:
        previous = _swap_backend(kc)
        try:
            t_c, _, r_c = _best_of(lambda: oracle_search(p, cfg), repeat)
        finally:
            _restore_backend(previous)
        assert r_c.value == r_py.value
        assert r_c.distribution.atoms == r_py.distribution.atoms
        assert r_c.evaluations == r_py.evaluations
        rows.append(("oracle_search n=2", t_py, t_c, r_py, r_c))
    else:
        rows.append(("oracle_search n=2", t_py, None, r_py, None))
    return rows


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", type=int, default=40)
    ap.add_argument("--steps", type=int, default=32)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if kc is None:
        print("compiled extension unavailable; timing the Python twin only")
    print(f"pool grid N={args.grid}, sweep M={args.steps}, best of {args.repeat}\n")
    print(f"{'workload':<22} {'python':>12} {'compiled':>12} {'speedup':>9}")
    all_rows = bench_kernels(args.grid, args.steps, args.repeat)
    all_rows += bench_search(args.grid, args.steps, args.repeat)
    for label, t_py, t_c, *_ in all_rows:
        if t_c is None:
            print(f"{label:<22} {t_py * 1e3:>10.2f}ms {'n/a':>12} {'n/a':>9}")
        else:
            print(
                f"{label:<22} {t_py * 1e3:>10.2f}ms {t_c * 1e3:>10.2f}ms "
                f"{t_py / t_c:>8.1f}x"
            )
    print("\nresults bit-identical across backends")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
