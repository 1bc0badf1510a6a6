"""Upper confidence bounds on the mean from a clean lower-tail sample.

If n independent draws on [0, 1] sum to at most t, every mean m with
p_n(m, t) <= alpha is rejected at level alpha.  Since p_n(m, t) is
non-increasing in m, the rejection region is an interval [m_u, 1) and
m_u solves p_n(m, t) = alpha; bisection finds it.

The value function is exact for n <= 2 (closed forms) and the
conjectured candidate maximum for n >= 3; ``method`` records which,
because for n >= 3 the bound is only as good as the conjecture.  When
p_n stays above alpha on the whole domain there is no root and m_u
degenerates to the right endpoint; ``root_found`` flags that.  If p_n
were flat at alpha on a segment, bisection converges to the segment's
left edge, the smallest valid bound.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .bounds import markov_bound
from .candidates import best_candidate
from .distcore import Problem
from .exact2 import solve as _solve_n2

# Domain clipping at the open endpoints m = t/n and m = 1.
EPS = 1e-9

# 60 halvings of a unit bracket reach ~1e-18, far inside the 1e-10
# bracket-width contract.
BISECT_ITERS = 60


class Method(enum.Enum):
    """Which value function the bound inverted."""

    EXACT_N2 = "exact closed form (n <= 2)"
    CANDIDATE_HEURISTIC = "conjectured candidate maximum (n >= 3)"


@dataclass(frozen=True, slots=True)
class ConfidenceResult:
    m_u: float
    alpha: float
    achieved: float
    method: Method
    root_found: bool


def _value(n: int, t: float, m: float) -> float:
    p = Problem(n=n, m=m, t=t)
    if not p.nontrivial:
        return 1.0
    if n == 1:
        return markov_bound(m, t)
    if n == 2:
        return _solve_n2(p).value
    return best_candidate(p).best_value


def upper_conf_bound(n: int, t: float, alpha: float) -> ConfidenceResult:
    """Smallest m with p_n(m, t) <= alpha, by bisection.

    Requires 0 < alpha < 1 and 0 <= t < n.  The search interval is
    (max(t/n, 0) + EPS, 1 - EPS); if even its right endpoint has value
    above alpha, the result reports root_found=False with m_u at that
    endpoint.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    if not (isinstance(alpha, (int, float)) and math.isfinite(alpha)):
        raise ValueError(f"alpha must be a finite real, got {alpha!r}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie strictly inside (0, 1), got {alpha!r}")
    if not (isinstance(t, (int, float)) and math.isfinite(t)) or t < 0.0:
        raise ValueError(f"t must be a finite real >= 0, got {t!r}")
    if t >= n:
        raise ValueError(f"t must be < n, got t={t!r}, n={n}")

    method = Method.EXACT_N2 if n <= 2 else Method.CANDIDATE_HEURISTIC
    lo = max(t / n, 0.0) + EPS
    hi = 1.0 - EPS
    if lo >= hi:
        raise ValueError(f"t={t!r} leaves no m-interval for n={n}")

    f_hi = _value(n, t, hi)
    if f_hi > alpha:
        return ConfidenceResult(
            m_u=hi, alpha=alpha, achieved=f_hi, method=method, root_found=False
        )
    f_lo = _value(n, t, lo)
    if f_lo <= alpha:
        return ConfidenceResult(
            m_u=lo, alpha=alpha, achieved=f_lo, method=method, root_found=True
        )

    # invariant: f(a) > alpha >= f(b)
    a, b = lo, hi
    for _ in range(BISECT_ITERS):
        mid = 0.5 * (a + b)
        if _value(n, t, mid) > alpha:
            a = mid
        else:
            b = mid
    achieved = _value(n, t, b)
    return ConfidenceResult(
        m_u=b, alpha=alpha, achieved=achieved, method=method, root_found=True
    )
