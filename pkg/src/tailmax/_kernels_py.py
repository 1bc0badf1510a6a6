"""Pure-Python search kernels, the fallback twin of ``_kernels``.

The compiled module and this one implement the same four functions and
must return bit-identical floats.  That parity is kept by construction,
not by tolerance:

* binomial coefficients come from an additive Pascal triangle (never
  lgamma or pow), so both backends hold the exact same doubles;
* weight powers are built by repeated multiplication in index order;
* every compound expression fixes its association explicitly, matching
  the C expression tree ((ca*a)+(cb*b))+(cc*c) and friends;
* sweep points are generated as lo + span*s/(steps-1);
* loops break at the same comparisons in the same order.

Anything needing adaptivity (golden-section polish, coordinate
descent) lives in :mod:`tailmax.oracle` on top of these scalars, so it
is literally the same code under either backend.
"""

from __future__ import annotations

from functools import lru_cache

BACKEND_NAME = "python"

ATOL = 1e-12

# Largest n the kernels accept; above this the additive binomials lose
# too much precision to be worth offering.
MAX_N = 64

# Weights this far below zero mean the free parameter left its feasible
# interval; anything closer is clamped as roundoff.
_NEG_TOL = 1e-12


@lru_cache(maxsize=None)
def _triangle(n: int) -> tuple[tuple[float, ...], ...]:
    # Pascal triangle rows 0..n as doubles, built additively.
    rows: list[list[float]] = [[1.0]]
    for r in range(1, n + 1):
        prev = rows[r - 1]
        row = [1.0]
        for q in range(1, r):
            row.append(prev[q - 1] + prev[q])
        row.append(1.0)
        rows.append(row)
    return tuple(tuple(r) for r in rows)


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must lie in [1, {MAX_N}], got {n!r}")


def pair_value(n: int, a: float, b: float, w: float, t: float) -> float:
    """P(S_n <= t) for the two-point law {a: 1-w, b: w}, a < b."""
    _check_n(n)
    row = _triangle(n)[n]
    u = 1.0 - w
    plo = [1.0] * (n + 1)
    phi = [1.0] * (n + 1)
    for q in range(1, n + 1):
        plo[q] = plo[q - 1] * u
        phi[q] = phi[q - 1] * w
    bound = t + ATOL
    total = 0.0
    for i in range(n + 1):
        s = ((n - i) * a) + (i * b)
        if s > bound:
            break
        total += (row[i] * plo[n - i]) * phi[i]
    return total


def triple_value(
    n: int, a: float, b: float, c: float, m: float, t: float, wc: float
) -> float:
    """P(S_n <= t) for the law {a, b, c} with P(X=c) = wc and mean m.

    The remaining weights follow from the mean and normalization.
    Returns -1.0 when wc makes either of them negative beyond roundoff.
    """
    _check_n(n)
    if wc < 0.0 or wc > 1.0:
        return -1.0
    wb = ((m - a) - wc * (c - a)) / (b - a)
    if wb < 0.0:
        if wb < -_NEG_TOL:
            return -1.0
        wb = 0.0
    wa = (1.0 - wb) - wc
    if wa < 0.0:
        if wa < -_NEG_TOL:
            return -1.0
        wa = 0.0
    tri = _triangle(n)
    pa = [1.0] * (n + 1)
    pb = [1.0] * (n + 1)
    pc = [1.0] * (n + 1)
    for q in range(1, n + 1):
        pa[q] = pa[q - 1] * wa
        pb[q] = pb[q - 1] * wb
        pc[q] = pc[q - 1] * wc
    bound = t + ATOL
    top = tri[n]
    total = 0.0
    for cc in range(n + 1):
        coef_c = top[cc]
        row = tri[n - cc]
        first = False
        for cb in range(n - cc + 1):
            ca = n - cc - cb
            s = ((ca * a) + (cb * b)) + (cc * c)
            if s > bound:
                break
            if cb == 0:
                first = True
            coef = coef_c * row[cb]
            total += ((coef * pa[ca]) * pb[cb]) * pc[cc]
        if not first:
            # the all-low corner for this cc already exceeds t, and it
            # only grows with cc
            break
    return total


def best_pair(
    n: int, pool, m: float, t: float
) -> tuple[float, float, float, int]:
    """Best two-point law {a, b} over the pool with a < m < b.

    The weight is forced by the mean.  Returns (value, a, b, evals);
    value is -1.0 when no pair is feasible.  Ties keep the first pair
    in lexicographic pool order.  Pairs whose smallest possible sum
    n*a already exceeds t are skipped: their value is 0, and the pair
    {0, 1} is always feasible with positive value, so they never win.
    """
    _check_n(n)
    xs = [float(x) for x in pool]
    bound = t + ATOL
    best = -1.0
    ba = 0.0
    bb = 0.0
    evals = 0
    for i in range(len(xs)):
        a = xs[i]
        if a >= m:
            break
        if n * a > bound:
            break
        for j in range(i + 1, len(xs)):
            b = xs[j]
            if b <= m:
                continue
            w = (m - a) / (b - a)
            v = pair_value(n, a, b, w, t)
            evals += 1
            if v > best:
                best = v
                ba = a
                bb = b
    return best, ba, bb, evals


def best_triple(
    n: int, pool, m: float, t: float, steps: int
) -> tuple[float, float, float, float, float, int, int]:
    """Best three-point law {a, b, c} over the pool with a < m < c.

    P(X=c) sweeps its feasible interval in ``steps`` uniform points.
    Returns (value, a, b, c, wc, step_index, evals); value is -1.0 when
    nothing is feasible.  Ties keep the lexicographically first triple
    and, within a triple, the smallest wc.
    """
    _check_n(n)
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps!r}")
    xs = [float(x) for x in pool]
    size = len(xs)
    bound = t + ATOL
    best = -1.0
    ba = bb = bc = 0.0
    bwc = 0.0
    bidx = 0
    evals = 0
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
                    v = triple_value(n, a, b, c, m, t, wc)
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
