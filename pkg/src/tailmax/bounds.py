"""Classical closed-form upper bounds on P(S_n <= t).

Three bounds, each valid for i.i.d. draws on [0, 1] with mean m:

* Markov (n = 1): (1 - m) / (1 - t), attained by a two-point law.
* Hoeffding (any n): ((1-m)/(1-t/n))^(n-t) * (m/(t/n))^t.
* A two-draw bound (n = 2), piecewise in c = (2 - t) / (1 - m):
  1 for c <= 2, 4/c^2 for 2 <= c <= 5/2, and 2/c - 1/c^2 for c >= 5/2.

The two-draw bound is attained on its middle branch by supports of the
form {t/2, 1} and on its outer branch (for t >= 1) by {t - 1, 1}; the
solver in :mod:`tailmax.exact2` reproduces it exactly there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .distcore import Problem


@dataclass(frozen=True, slots=True)
class BoundReport:
    """The applicable bounds for one instance; entries are in [0, 1].

    markov is present only for n = 1 and hs only for n = 2.
    """

    hoeffding: float
    markov: float | None = None
    hs: float | None = None


def markov_bound(m: float, t: float) -> float:
    """One-draw bound (1 - m) / (1 - t) for 0 <= t < m < 1."""
    if not 0.0 < m < 1.0:
        raise ValueError(f"m must lie in (0, 1), got {m!r}")
    if not 0.0 <= t < m:
        raise ValueError(f"t must satisfy 0 <= t < m, got t={t!r}, m={m!r}")
    return min(1.0, max(0.0, (1.0 - m) / (1.0 - t)))


def hoeffding_bound(p: Problem) -> float:
    """Exponential-moment bound for n draws, clamped to [0, 1].

    The exponent form degenerates at t = 0; the continuous limit
    (1 - m)^n is returned there.
    """
    n, m, t = p.n, p.m, p.t
    if not p.nontrivial:
        raise ValueError(f"requires t < m*n, got t={t!r}, m*n={m * n!r}")
    if t == 0.0:
        return (1.0 - m) ** n
    value = ((1.0 - m) / (1.0 - t / n)) ** (n - t) * (m / (t / n)) ** t
    return min(1.0, max(0.0, value))


def hs_bound(m: float, t: float) -> float:
    """Two-draw bound, piecewise in c = (2 - t) / (1 - m).

    Continuous at the branch points c = 2 (value 1) and c = 5/2
    (value 16/25).
    """
    if not 0.0 < m < 1.0:
        raise ValueError(f"m must lie in (0, 1), got {m!r}")
    # Weak upper gate: t = 2m sits exactly on the c = 2 branch point,
    # where the bound degenerates to the trivial value 1.
    if not 0.0 <= t <= 2.0 * m:
        raise ValueError(f"t must satisfy 0 <= t <= 2m, got t={t!r}, m={m!r}")
    c = (2.0 - t) / (1.0 - m)
    if c <= 2.0:
        return 1.0
    if c <= 2.5:
        value = 4.0 / (c * c)
    else:
        value = 2.0 / c - 1.0 / (c * c)
    return min(1.0, max(0.0, value))


def report(p: Problem) -> BoundReport:
    """All bounds applicable to the instance p."""
    if not p.nontrivial:
        raise ValueError(f"requires t < m*n, got t={p.t!r}, m*n={p.m * p.n!r}")
    markov = markov_bound(p.m, p.t) if p.n == 1 else None
    hs = hs_bound(p.m, p.t) if p.n == 2 else None
    return BoundReport(hoeffding=hoeffding_bound(p), markov=markov, hs=hs)
