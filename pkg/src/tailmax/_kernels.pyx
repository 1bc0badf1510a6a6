# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; bit-compatible twin of ``_kernels_py``.

Every arithmetic expression here mirrors the pure-Python module
operation for operation: additive Pascal triangle for binomials,
powers by repeated multiplication, fixed association in compound
expressions, identical loop breaks.  SSE2 double arithmetic makes each
C operation round exactly like the interpreter's, so both backends
return bit-identical floats.  Keep the two files in sync; the parity
test suite compares them value for value.
"""

import numpy as _np

BACKEND_NAME = "compiled"

ATOL = 1e-12
MAX_N = 64

cdef double _ATOL = 1e-12
cdef double _NEG_TOL = 1e-12
cdef int _MAX_N = 64
cdef int _STRIDE = 65


cdef void _fill_triangle(double* tri, int n):
    cdef int r, q
    tri[0] = 1.0
    for r in range(1, n + 1):
        tri[r * _STRIDE] = 1.0
        for q in range(1, r):
            tri[r * _STRIDE + q] = (
                tri[(r - 1) * _STRIDE + q - 1] + tri[(r - 1) * _STRIDE + q]
            )
        tri[r * _STRIDE + r] = 1.0


cdef double _pair_value(
    int n, double a, double b, double w, double t,
    double* tri, double* plo, double* phi,
):
    cdef double u = 1.0 - w
    cdef int q, i
    cdef double bound, total, s
    plo[0] = 1.0
    phi[0] = 1.0
    for q in range(1, n + 1):
        plo[q] = plo[q - 1] * u
        phi[q] = phi[q - 1] * w
    bound = t + _ATOL
    total = 0.0
    for i in range(n + 1):
        s = ((n - i) * a) + (i * b)
        if s > bound:
            break
        total += (tri[n * _STRIDE + i] * plo[n - i]) * phi[i]
    return total


cdef double _triple_value(
    int n, double a, double b, double c, double m, double t, double wc,
    double* tri, double* pa, double* pb, double* pc,
):
    if wc < 0.0 or wc > 1.0:
        return -1.0
    cdef double wb = ((m - a) - wc * (c - a)) / (b - a)
    if wb < 0.0:
        if wb < -_NEG_TOL:
            return -1.0
        wb = 0.0
    cdef double wa = (1.0 - wb) - wc
    if wa < 0.0:
        if wa < -_NEG_TOL:
            return -1.0
        wa = 0.0
    cdef int q, cc, cb, ca
    cdef double bound, total, s, coef, coef_c
    cdef bint first
    pa[0] = 1.0
    pb[0] = 1.0
    pc[0] = 1.0
    for q in range(1, n + 1):
        pa[q] = pa[q - 1] * wa
        pb[q] = pb[q - 1] * wb
        pc[q] = pc[q - 1] * wc
    bound = t + _ATOL
    total = 0.0
    for cc in range(n + 1):
        coef_c = tri[n * _STRIDE + cc]
        first = False
        for cb in range(n - cc + 1):
            ca = n - cc - cb
            s = ((ca * a) + (cb * b)) + (cc * c)
            if s > bound:
                break
            if cb == 0:
                first = True
            coef = coef_c * tri[(n - cc) * _STRIDE + cb]
            total += ((coef * pa[ca]) * pb[cb]) * pc[cc]
        if not first:
            # the all-low corner for this cc already exceeds t, and it
            # only grows with cc
            break
    return total


def _check_n(int n):
    if not 1 <= n <= _MAX_N:
        raise ValueError(f"n must lie in [1, {MAX_N}], got {n!r}")


def pair_value(int n, double a, double b, double w, double t):
    """P(S_n <= t) for the two-point law {a: 1-w, b: w}, a < b."""
    _check_n(n)
    cdef double tri[4225]
    cdef double plo[65]
    cdef double phi[65]
    _fill_triangle(tri, n)
    return _pair_value(n, a, b, w, t, tri, plo, phi)


def triple_value(int n, double a, double b, double c, double m, double t, double wc):
    """P(S_n <= t) for the law {a, b, c} with P(X=c) = wc and mean m.

    Returns -1.0 when wc makes a forced weight negative beyond
    roundoff.
    """
    _check_n(n)
    cdef double tri[4225]
    cdef double pa[65]
    cdef double pb[65]
    cdef double pc[65]
    _fill_triangle(tri, n)
    return _triple_value(n, a, b, c, m, t, wc, tri, pa, pb, pc)


def best_pair(int n, pool, double m, double t):
    """Best two-point law {a, b} over the pool with a < m < b.

    Returns (value, a, b, evals); value is -1.0 when no pair is
    feasible.  Ties keep the first pair in lexicographic pool order.
    """
    _check_n(n)
    cdef double[::1] xs = _np.ascontiguousarray(pool, dtype=_np.float64)
    cdef Py_ssize_t size = xs.shape[0]
    cdef double tri[4225]
    cdef double plo[65]
    cdef double phi[65]
    _fill_triangle(tri, n)
    cdef double bound = t + _ATOL
    cdef double best = -1.0
    cdef double ba = 0.0
    cdef double bb = 0.0
    cdef long long evals = 0
    cdef Py_ssize_t i, j
    cdef double a, b, w, v
    for i in range(size):
        a = xs[i]
        if a >= m:
            break
        if n * a > bound:
            break
        for j in range(i + 1, size):
            b = xs[j]
            if b <= m:
                continue
            w = (m - a) / (b - a)
            v = _pair_value(n, a, b, w, t, tri, plo, phi)
            evals += 1
            if v > best:
                best = v
                ba = a
                bb = b
    return best, ba, bb, evals


def best_triple(int n, pool, double m, double t, int steps):
    """Best three-point law {a, b, c} over the pool with a < m < c.

    P(X=c) sweeps its feasible interval in ``steps`` uniform points.
    Returns (value, a, b, c, wc, step_index, evals); value is -1.0
    when nothing is feasible.  Ties keep the lexicographically first
    triple and, within a triple, the smallest wc.
    """
    _check_n(n)
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps!r}")
    cdef double[::1] xs = _np.ascontiguousarray(pool, dtype=_np.float64)
    cdef Py_ssize_t size = xs.shape[0]
    cdef double tri[4225]
    cdef double pa[65]
    cdef double pb_arr[65]
    cdef double pc[65]
    _fill_triangle(tri, n)
    cdef double bound = t + _ATOL
    cdef double best = -1.0
    cdef double ba = 0.0
    cdef double bb = 0.0
    cdef double bc = 0.0
    cdef double bwc = 0.0
    cdef int bidx = 0
    cdef long long evals = 0
    cdef Py_ssize_t i, j, k
    cdef int s, tidx
    cdef double a, b, c, lo, hi, span, wc, v, tbest, twc
    for i in range(size):
        a = xs[i]
        if a >= m:
            break
        if n * a > bound:
            break
        for j in range(i + 1, size):
            b = xs[j]
            for k in range(j + 1, size):
                c = xs[k]
                if c <= m:
                    continue
                lo = (m - b) / (c - b)
                if lo < 0.0:
                    lo = 0.0
                hi = (m - a) / (c - a)
                if hi < lo:
                    continue
                span = hi - lo
                tbest = -1.0
                twc = 0.0
                tidx = 0
                for s in range(steps):
                    wc = lo + span * s / (steps - 1)
                    v = _triple_value(n, a, b, c, m, t, wc, tri, pa, pb_arr, pc)
                    if v < 0.0:
                        continue
                    evals += 1
                    if v > tbest:
                        tbest = v
                        twc = wc
                        tidx = s
                if tbest > best:
                    best = tbest
                    ba = a
                    bb = b
                    bc = c
                    bwc = twc
                    bidx = tidx
    return best, ba, bb, bc, bwc, bidx, evals
