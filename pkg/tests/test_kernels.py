"""Hot-loop kernels: correctness and bit parity across backends.

The compiled extension and the pure-Python twin must agree to the last
bit, not merely to a tolerance: both fix the same summation order and
the same fused-free arithmetic, so any drift is a porting bug.
"""

import struct

import numpy as np
import pytest

from tailmax import _backend
from tailmax import _kernels_py as kpy
from tailmax.distcore import Problem, cdf_at, iid_sum, make_distribution

try:
    from tailmax import _kernels as kc

    HAVE_COMPILED = True
except ImportError:
    kc = None
    HAVE_COMPILED = False

needs_compiled = pytest.mark.skipif(
    not HAVE_COMPILED, reason="compiled extension not built"
)


def _bits(x: float) -> bytes:
    return struct.pack("<d", x)


def _random_pool(rng, m):
    pool = np.unique(np.concatenate([rng.uniform(0, 1, 12), [0.0, 1.0, m]]))
    return np.ascontiguousarray(pool, dtype=np.float64)


class TestPythonKernelCorrectness:
    def test_pair_value_matches_convolution(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            n = int(rng.integers(1, 7))
            a, b = sorted(rng.uniform(0, 1, 2))
            if b - a < 1e-6:
                continue
            w = float(rng.uniform(0.01, 0.99))
            t = float(rng.uniform(0, n))
            d = make_distribution([(a, 1.0 - w), (b, w)])
            ref = cdf_at(iid_sum(d, n), t)
            assert abs(kpy.pair_value(n, a, b, w, t) - ref) <= 1e-12

    def test_triple_value_matches_convolution(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            n = int(rng.integers(1, 7))
            a, b, c = sorted(rng.uniform(0, 1, 3))
            if b - a < 1e-6 or c - b < 1e-6:
                continue
            m = float(rng.uniform(a + 1e-4, c - 1e-4))
            lo = max(0.0, (m - b) / (c - b))
            hi = (m - a) / (c - a)
            wc = float(rng.uniform(lo, min(hi, 1.0)))
            t = float(rng.uniform(0, n))
            v = kpy.triple_value(n, a, b, c, m, t, wc)
            wb = ((m - a) - wc * (c - a)) / (b - a)
            wa = 1.0 - wb - wc
            if min(wa, wb, wc) < 0.0:
                continue
            d = make_distribution([(a, wa), (b, wb), (c, wc)])
            ref = cdf_at(iid_sum(d, n), t)
            assert abs(v - ref) <= 1e-12

    def test_triple_value_rejects_infeasible_weight(self):
        # wc outside [0,1] or forcing a negative co-weight returns -1
        assert kpy.triple_value(2, 0.0, 0.5, 1.0, 0.4, 0.5, 1.5) == -1.0
        assert kpy.triple_value(2, 0.0, 0.5, 1.0, 0.4, 0.5, -0.1) == -1.0

    def test_best_pair_is_scan_max(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            n = int(rng.integers(1, 5))
            m = float(rng.uniform(0.2, 0.8))
            t = float(rng.uniform(0.01, n * m * 0.95))
            pool = _random_pool(rng, m)
            best, ba, bb, evals = kpy.best_pair(n, pool, m, t)
            # brute rescan
            ref = -1.0
            for i, a in enumerate(pool):
                if a >= m:
                    break
                for b in pool[i + 1 :]:
                    if b <= m:
                        continue
                    w = (m - a) / (b - a)
                    v = kpy.pair_value(n, float(a), float(b), w, t)
                    if v > ref:
                        ref = v
            assert best == ref

    def test_max_n_guard(self):
        pool = np.array([0.0, 0.5, 1.0])
        with pytest.raises(ValueError):
            kpy.best_pair(kpy.MAX_N + 1, pool, 0.5, 0.2)
        with pytest.raises(ValueError):
            kpy.pair_value(kpy.MAX_N + 1, 0.0, 1.0, 0.5, 0.2)


@needs_compiled
class TestBitParity:
    def test_scalar_kernels(self):
        rng = np.random.default_rng(11)
        for _ in range(300):
            n = int(rng.integers(1, 9))
            t = float(rng.uniform(0, n))
            a, b, c = sorted(rng.uniform(0, 1, 3))
            if b - a < 1e-9 or c - b < 1e-9:
                continue
            w = float(rng.uniform(0, 1))
            assert _bits(kc.pair_value(n, a, b, w, t)) == _bits(
                kpy.pair_value(n, a, b, w, t)
            )
            m = float(rng.uniform(a, c))
            wc = float(rng.uniform(0, 1))
            assert _bits(kc.triple_value(n, a, b, c, m, t, wc)) == _bits(
                kpy.triple_value(n, a, b, c, m, t, wc)
            )

    def test_pool_scans(self):
        rng = np.random.default_rng(12)
        for _ in range(150):
            n = int(rng.integers(1, 9))
            m = float(rng.uniform(0.05, 0.95))
            t = float(rng.uniform(0.0, n * m * 0.99))
            pool = _random_pool(rng, m)
            rc = kc.best_pair(n, pool, m, t)
            rp = kpy.best_pair(n, pool, m, t)
            assert _bits(rc[0]) == _bits(rp[0])
            assert rc[1:] == rp[1:]
            steps = int(rng.integers(2, 33))
            rc = kc.best_triple(n, pool, m, t, steps)
            rp = kpy.best_triple(n, pool, m, t, steps)
            assert _bits(rc[0]) == _bits(rp[0])
            assert rc[1:] == rp[1:]

    def test_evaluation_counters_agree(self):
        pool = np.ascontiguousarray(
            np.linspace(0.0, 1.0, 31), dtype=np.float64
        )
        rc = kc.best_triple(3, pool, 0.5, 1.1, 16)
        rp = kpy.best_triple(3, pool, 0.5, 1.1, 16)
        assert rc == rp

    def test_guards_match(self):
        pool = np.array([0.0, 0.5, 1.0])
        for mod in (kc, kpy):
            with pytest.raises(ValueError):
                mod.best_triple(mod.MAX_N + 1, pool, 0.5, 0.2, 8)


class TestBackendSelection:
    def test_name_is_known(self):
        assert _backend.BACKEND_NAME in ("compiled", "python")

    def test_compiled_preferred_when_available(self):
        if HAVE_COMPILED:
            assert _backend.BACKEND_NAME == "compiled"

    def test_package_reexport(self):
        import tailmax

        assert tailmax.BACKEND_NAME == _backend.BACKEND_NAME

    def test_backend_exposes_kernels(self):
        for name in ("pair_value", "triple_value", "best_pair", "best_triple"):
            assert callable(getattr(_backend, name))
