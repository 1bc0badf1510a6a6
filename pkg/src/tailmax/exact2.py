"""Closed-form solution of the two-draw problem.

For n = 2 the maximum of P(X1 + X2 <= t) over distributions on [0, 1]
with mean m is attained by one of four supports, each with explicit
weights and value:

====================  =============================  ==========================
support               region                         value
====================  =============================  ==========================
{0, t}                4/5 <= t <= 1, m1(t)<=m<=t^2   1 - (m/t)^2
{0, t, 1}             4/5 <= t < sqrt(m)             (1-m)^2 / (1-t^2)
{t-1, 1}              1 <= t <= 2, 5m > 2t+1         1 - ((1+m-t)/(2-t))^2
{t/2, 1}              everywhere else                ((1-m)/(1-t/2))^2
====================  =============================  ==========================

m1(t) is the curve where the {0, t} and {t/2, 1} values cross.  The
solver evaluates every family whose weights are feasible, using the
region conditions only as gates, and takes the argmax; this keeps the
classification robust exactly on the boundary curves, where floating
point cannot decide region membership reliably.  Value ties within
``TIE_TOL`` that correspond to genuinely different distributions are
reported as multiple maximizers; coinciding distributions are merged.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .distcore import DiscreteDistribution, Problem, make_distribution, point_mass

# Two candidate values this close are reported as a tie.
TIE_TOL = 1e-12

# Region gates are widened by this much so that boundary instances are
# decided by the argmax, not by the gate.
GATE_SLACK = 1e-9


class RegionN2(enum.Enum):
    """Support pattern of a two-draw maximizer."""

    ZERO_T = "{0,t}"
    ZERO_T_ONE = "{0,t,1}"
    TMINUS1_ONE = "{t-1,1}"
    HALF_T_ONE = "{t/2,1}"
    TRIVIAL = "{m}"


@dataclass(frozen=True, slots=True)
class SolveResult:
    """Maximal probability and the distributions attaining it.

    ``maximizers`` is nonempty; it has two entries exactly on the tie
    boundaries where distinct supports reach the same value.
    """

    value: float
    maximizers: tuple[tuple[RegionN2, DiscreteDistribution], ...]
    problem: Problem


def m1_curve(t: float) -> float:
    """Crossing curve between the {0, t} and {t/2, 1} families.

    Defined for 4/5 <= t <= 1: below the curve {t/2, 1} wins, above it
    {0, t} does.  m1(4/5) = 16/25 and m1(1) = 3/5.
    """
    if t < 0.8 - 1e-9 or t > 1.0 + 1e-9:
        raise ValueError(f"m1_curve is defined on [4/5, 1], got t={t!r}")
    tc = min(max(t, 0.8), 1.0)
    disc = tc * (5.0 * tc - 4.0)
    if disc < 0.0:
        disc = 0.0
    num = 4.0 * tc * tc - (2.0 - tc) * tc * math.sqrt(disc)
    den = 5.0 * tc * tc - 4.0 * tc + 4.0
    return num / den


def _clamped(pairs: list[tuple[float, float]]) -> DiscreteDistribution:
    # Family formulas can produce weights like -1e-17 on a gate edge.
    fixed = []
    for x, w in pairs:
        if -GATE_SLACK <= w < 0.0:
            w = 0.0
        fixed.append((x, w))
    return make_distribution(fixed)


def _candidates(m: float, t: float) -> list[tuple[RegionN2, float, DiscreteDistribution]]:
    out: list[tuple[RegionN2, float, DiscreteDistribution]] = []

    # {t/2, 1}: feasible on the whole nontrivial range.
    half = 1.0 - 0.5 * t
    value = ((1.0 - m) / half) ** 2
    dist = _clamped([(0.5 * t, (1.0 - m) / half), (1.0, (m - 0.5 * t) / half)])
    out.append((RegionN2.HALF_T_ONE, value, dist))

    # {0, t}: needs t in [4/5, 1] and m between the crossing curve and t^2.
    if 0.8 - 1e-12 <= t <= 1.0:
        lo = m1_curve(t)
        if lo - GATE_SLACK <= m <= t * t + GATE_SLACK:
            value = 1.0 - (m / t) ** 2
            dist = _clamped([(0.0, 1.0 - m / t), (t, m / t)])
            out.append((RegionN2.ZERO_T, value, dist))

    # {0, t, 1}: needs t in [4/5, 1) and m > t^2 (i.e. t < sqrt(m)).
    if 0.8 - 1e-12 <= t < 1.0 and m >= t * t - GATE_SLACK:
        den = 1.0 - t * t
        if den > 1e-12:
            value = (1.0 - m) ** 2 / den
            dist = _clamped(
                [
                    (0.0, (1.0 - m) * (1.0 - t) / den),
                    (t, (1.0 - m) * t / den),
                    (1.0, (m - t * t) / den),
                ]
            )
            out.append((RegionN2.ZERO_T_ONE, value, dist))

    # {t-1, 1}: needs t >= 1 and 5m >= 2t + 1 (equality is the tie curve).
    if 1.0 <= t < 2.0 and 5.0 * m >= 2.0 * t + 1.0 - GATE_SLACK:
        den = 2.0 - t
        value = 1.0 - ((1.0 + m - t) / den) ** 2
        dist = _clamped([(t - 1.0, (1.0 - m) / den), (1.0, (1.0 + m - t) / den)])
        out.append((RegionN2.TMINUS1_ONE, value, dist))

    return out


def _same_distribution(a: DiscreteDistribution, b: DiscreteDistribution) -> bool:
    # Compare ignoring atoms whose weight is below the gate slack; a
    # family evaluated just past its gate degenerates to its neighbor
    # with a vanishing extra atom.
    def significant(d: DiscreteDistribution) -> list[tuple[float, float]]:
        return [(x, w) for x, w in d.atoms if w > GATE_SLACK]

    sa, sb = significant(a), significant(b)
    if len(sa) != len(sb):
        return False
    for (xa, wa), (xb, wb) in zip(sa, sb):
        if abs(xa - xb) > 1e-9 or abs(wa - wb) > 1e-9:
            return False
    return True


def solve(p: Problem) -> SolveResult:
    """Maximal P(S_2 <= t) with every attaining distribution.

    Only n = 2 instances are accepted.  In the trivial regime t >= 2m
    the point mass at m gives probability one.
    """
    if p.n != 2:
        raise ValueError(f"solve handles n = 2 only, got n={p.n}")
    m, t = p.m, p.t
    if not p.nontrivial:
        return SolveResult(1.0, ((RegionN2.TRIVIAL, point_mass(m)),), p)

    candidates = _candidates(m, t)
    best = max(value for _, value, _ in candidates)
    kept = [(r, v, d) for r, v, d in candidates if v >= best - TIE_TOL]
    kept.sort(key=lambda item: item[0].name)

    unique: list[tuple[RegionN2, float, DiscreteDistribution]] = []
    for region, value, dist in kept:
        if any(_same_distribution(dist, other) for _, _, other in unique):
            continue
        unique.append((region, value, dist))

    return SolveResult(best, tuple((r, d) for r, _, d in unique), p)
