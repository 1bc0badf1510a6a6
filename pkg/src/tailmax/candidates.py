"""Conjectured extremal families for general n.

For n >= 3 no closed-form maximizer is known.  Two families are
conjectured to contain every maximizer of P(S_n <= t):

* binary candidates, indexed by j in {0, ..., ceil(t/m) - 1}: two-point
  laws on {a_j, b_j} tuned so that the sum lands at or below t exactly
  when at most j draws take the high value; the value is then a
  binomial CDF at j.  For j <= t the high atom is b_j = 1; for j > t
  the low atom is a_j = 0 and b_j = t/j.
* ternary candidates, indexed by integer pairs (k, l) with
  l < t < l + k <= n - 1: three-point laws on {0, a, 1} with
  a = (t - l)/k, whose high weight p solves a stationarity equation
  g(p) = 0 making the certificate slack linear across the support.

``best_candidate`` evaluates both families and picks the maximum; the
result is always a valid lower bound on the true maximum, and under
the conjecture equals it.  Candidates are generated by formula and are
not filtered through certificate verification: selection is by value
alone, and non-maximal roots may well violate the global slack
condition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .distcore import (
    DiscreteDistribution,
    Problem,
    SumDistribution,
    binom_cdf,
    cdf_at,
    iid_sum,
    interval_prob,
    make_distribution,
)

# Cells in the uniform scan of the feasible p-interval.  g is piecewise
# polynomial of degree n - 1 in p, so at desk scale (n <= 8) this many
# cells cannot straddle more than one root each except on a set of
# instances that the brute-force cross-check would expose.
ROOT_SCAN_CELLS = 1024

# Bisection stops when the bracket is this narrow.
ROOT_BRACKET_TOL = 1e-13

# Weight roundoff below this is clamped to zero; a root with any weight
# at or below it is flagged degenerate.
DEGENERATE_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class BinaryCandidate:
    """Two-point candidate {a, b} with P(X = b) = pi, P(X = a) = 1 - pi.

    ``value`` equals binom_cdf(n, pi, j): the sum stays at or below t
    exactly when at most j of the n draws take the value b.
    """

    j: int
    a: float
    b: float
    pi: float
    value: float

    def distribution(self) -> DiscreteDistribution:
        return make_distribution([(self.a, 1.0 - self.pi), (self.b, self.pi)])


@dataclass(frozen=True, slots=True)
class TernaryCandidate:
    """Three-point candidate {0, a, 1} with weights (r, q, p).

    ``a`` = (t - l)/k for the indexing pair (k, l); ``p`` is a root of
    the stationarity function g.  ``degenerate`` flags roots where one
    weight vanishes (the law collapses to a two-point one already
    covered elsewhere); such roots are kept, not filtered.
    """

    k: int
    l: int
    a: float
    p: float
    q: float
    r: float
    value: float
    degenerate: bool

    def distribution(self) -> DiscreteDistribution:
        return make_distribution([(0.0, self.r), (self.a, self.q), (1.0, self.p)])


@dataclass(frozen=True, slots=True)
class CandidateSet:
    """Both families for one instance, with the deterministic best.

    ``best`` is None only if every candidate was infeasible, which
    cannot happen for a nontrivial instance (j = 0 is always feasible);
    ``best_value`` is 0.0 in that vacuous case.
    """

    binary: tuple[BinaryCandidate, ...]
    ternary: tuple[TernaryCandidate, ...]
    best: BinaryCandidate | TernaryCandidate | None
    best_value: float


def _require_nontrivial(p: Problem) -> None:
    if not p.nontrivial:
        raise ValueError(
            f"requires 0 <= t < m*n, got t={p.t!r}, m*n={p.m * p.n!r}"
        )


def binary_candidates(p: Problem) -> list[BinaryCandidate]:
    """All feasible two-point candidates, in increasing j.

    j ranges over 0, ..., ceil(t/m) - 1; an exact integer t/m is
    excluded by the ceiling.  t = 0 still emits j = 0 (the Bernoulli
    law {0: 1-m, 1: m}), the only candidate there.
    """
    _require_nontrivial(p)
    n, m, t = p.n, p.m, p.t
    j_stop = max(1, math.ceil(t / m))
    out: list[BinaryCandidate] = []
    for j in range(j_stop):
        if j <= t:
            a = (t - j) / (n - j)
            b = 1.0
            pi = 1.0 - (1.0 - m) * (n - j) / (n - t)
        elif j < t / m:
            a = 0.0
            b = t / j
            pi = j * m / t
        else:
            continue
        if not (0.0 <= a < m < b <= 1.0 and 0.0 < pi < 1.0):
            continue
        out.append(
            BinaryCandidate(j=j, a=a, b=b, pi=pi, value=binom_cdf(n, pi, j))
        )
    return out


def _ternary_law(
    a: float, p: float, m: float
) -> tuple[DiscreteDistribution, float, float, float] | None:
    # Weights forced by the mean; endpoint roundoff can push a weight
    # a hair negative, which is clamped, but a genuinely negative
    # weight means p left the feasible interval.
    q = (m - p) / a
    r = 1.0 - p - q
    weights = []
    for w in (r, q, p):
        if -DEGENERATE_TOL <= w < 0.0:
            w = 0.0
        if w < 0.0:
            return None
        weights.append(w)
    r, q, p = weights
    mu = make_distribution([(0.0, r), (a, q), (1.0, p)])
    return mu, r, q, p


def _stationarity(
    n: int, m: float, t: float, a: float, p: float
) -> tuple[float, DiscreteDistribution, float, float, float] | None:
    law = _ternary_law(a, p, m)
    if law is None:
        return None
    mu, r, q, pw = law
    s: SumDistribution = iid_sum(mu, n - 1) if n > 1 else SumDistribution(((0.0, 1.0),))
    g = (1.0 - a) * interval_prob(s, t - a, t) - a * interval_prob(s, t - 1.0, t - a)
    return g, mu, r, q, pw


def ternary_candidates(p: Problem) -> list[TernaryCandidate]:
    """All roots of the stationarity equation, over every (k, l) pair.

    For each pair with l < t < l + k <= n - 1 the feasible p-interval
    [max(0, (m-a)/(1-a)), m] is scanned in ``ROOT_SCAN_CELLS`` cells;
    every sign change is bisected down to ``ROOT_BRACKET_TOL``.  All
    roots are kept, including degenerate ones.
    """
    if p.n < 2:
        raise ValueError(f"ternary candidates need n >= 2, got n={p.n}")
    n, m, t = p.n, p.m, p.t
    out: list[TernaryCandidate] = []
    for k in range(1, n):
        for l in range(0, n - k):
            if not l < t < l + k:
                continue
            a = (t - l) / k
            if not 0.0 < a < 1.0:
                continue
            lo = max(0.0, (m - a) / (1.0 - a))
            hi = m
            if hi < lo:
                continue
            for root in _scan_roots(n, m, t, a, lo, hi):
                res = _stationarity(n, m, t, a, root)
                if res is None:
                    continue
                _, mu, r, q, pw = res
                out.append(
                    TernaryCandidate(
                        k=k,
                        l=l,
                        a=a,
                        p=pw,
                        q=q,
                        r=r,
                        value=cdf_at(iid_sum(mu, n), t),
                        degenerate=min(pw, q, r) <= DEGENERATE_TOL,
                    )
                )
    out.sort(key=lambda c: (c.k, c.l, c.p))
    return out


def _scan_roots(
    n: int, m: float, t: float, a: float, lo: float, hi: float
) -> list[float]:
    cells = ROOT_SCAN_CELLS
    span = hi - lo
    grid = [lo + span * i / cells for i in range(cells)] + [hi]
    values: list[float | None] = []
    for x in grid:
        res = _stationarity(n, m, t, a, x)
        values.append(None if res is None else res[0])

    roots: list[float] = []

    def emit(x: float) -> None:
        if not any(abs(x - r) <= 1e-11 for r in roots):
            roots.append(x)

    for i in range(cells):
        g0, g1 = values[i], values[i + 1]
        if g0 is None or g1 is None:
            continue
        if g0 == 0.0:
            emit(grid[i])
            continue
        if g1 == 0.0:
            continue  # picked up as the left endpoint of the next cell
        if (g0 > 0.0) == (g1 > 0.0):
            continue
        x0, x1, s0 = grid[i], grid[i + 1], g0 > 0.0
        while x1 - x0 > ROOT_BRACKET_TOL:
            mid = 0.5 * (x0 + x1)
            res = _stationarity(n, m, t, a, mid)
            gm = res[0] if res is not None else 0.0
            if gm == 0.0:
                x0 = x1 = mid
                break
            if (gm > 0.0) == s0:
                x0 = mid
            else:
                x1 = mid
        emit(0.5 * (x0 + x1))
    if values and values[-1] == 0.0:
        emit(grid[-1])
    return roots


def _preference(c: BinaryCandidate | TernaryCandidate) -> tuple:
    # Order among equal values: binary first, then small indices, then
    # small a, then (ternary only) small p.
    if isinstance(c, BinaryCandidate):
        return (0, (c.j,), c.a, 0.0)
    return (1, (c.k, c.l), c.a, c.p)


def best_candidate(p: Problem) -> CandidateSet:
    """Union of both families with the maximum-value candidate marked.

    Ties break deterministically: binary before ternary, then smaller
    j or lexicographically smaller (k, l), then smaller a, then
    smaller p, so the result does not depend on evaluation order.
    """
    _require_nontrivial(p)
    binary = binary_candidates(p)
    ternary = ternary_candidates(p) if p.n >= 2 else []
    pool: list[BinaryCandidate | TernaryCandidate] = [*binary, *ternary]
    if not pool:
        return CandidateSet(
            binary=tuple(binary), ternary=tuple(ternary), best=None, best_value=0.0
        )
    best = min(pool, key=lambda c: (-c.value, _preference(c)))
    return CandidateSet(
        binary=tuple(binary),
        ternary=tuple(ternary),
        best=best,
        best_value=best.value,
    )
