"""Optimality certificates for candidate maximizers.

A distribution mu maximizing P(S_n <= t) under the mean constraint
satisfies a two-multiplier stationarity condition: with S_{n-1} the sum
of n - 1 independent copies of mu, the function

    ell(x) = lambda1 - lambda2 * x - P(S_{n-1} <= t - x)

is nonnegative on all of [0, 1] (L1) and vanishes on the support of mu
(L2).  ell inherits the CDF's discontinuities: it is left-continuous
and jumps upward at points x where t - x crosses an atom of S_{n-1}.
Two consequences are checked alongside L1 and L2:

* support condition: every atom x of mu except x = 1 must satisfy
  t - x in supp(S_{n-1}) (at x = 1 the multiplier slack can be zero
  without mass, so it is exempt);
* the certified value lambda1 - lambda2 * m equals P(S_n <= t).

``fit_certificate`` recovers (lambda1, lambda2) from the support alone;
``verify`` then audits the L-conditions on a grid sharpened with the
discontinuity points and small offsets around them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distcore import (
    ATOL,
    DiscreteDistribution,
    Problem,
    SumDistribution,
    cdf_at,
    iid_sum,
    mean,
)

L_TOL = 1e-10       # L1 and L2 violation threshold
SUPPORT_TOL = 1e-9  # atom matching for the support condition
VALUE_TOL = 1e-9    # certified value versus direct evaluation
OFFSET = 1e-9       # probes on both sides of each discontinuity


@dataclass(frozen=True, slots=True)
class Certificate:
    """Multiplier pair; lambda2 > 0 for any certificate that verifies."""

    lambda1: float
    lambda2: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lambda1) and math.isfinite(self.lambda2)):
            raise ValueError("multipliers must be finite")
        if self.lambda1 < -ATOL or self.lambda2 < -ATOL:
            raise ValueError(
                f"multipliers must be nonnegative, got ({self.lambda1!r}, {self.lambda2!r})"
            )


@dataclass(frozen=True, slots=True)
class VerifyReport:
    certificate: Certificate
    max_violation_L1: float
    max_violation_L2: float
    support_condition_ok: bool
    implied_value: float
    direct_value: float
    passed: bool


def _predecessor_sum(mu: DiscreteDistribution, p: Problem) -> SumDistribution:
    # S_0 is the point mass at zero; iid_sum starts at n = 1.
    if p.n == 1:
        return SumDistribution(((0.0, 1.0),))
    return iid_sum(mu, p.n - 1)


def _ell(s: SumDistribution, cert: Certificate, t: float, x: float) -> float:
    return cert.lambda1 - cert.lambda2 * x - cdf_at(s, t - x)


def ell_at(mu: DiscreteDistribution, p: Problem, cert: Certificate, x: float) -> float:
    """The slack function ell at a single point x in [0, 1]."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x!r}")
    return _ell(_predecessor_sum(mu, p), cert, p.t, x)


def fit_certificate(mu: DiscreteDistribution, p: Problem) -> Certificate:
    """Recover multipliers from the L2 condition on the support of mu.

    With two atoms the linear system is solved exactly; with more, a
    least-squares fit is used (L2 demands the support values be
    collinear, so any genuine certificate has negligible residual, and
    a non-collinear pattern simply fails verification afterwards).
    """
    atoms = mu.atoms
    if len(atoms) < 2:
        raise ValueError("fitting needs at least 2 atoms")
    s = _predecessor_sum(mu, p)
    xs = [x for x, _ in atoms]
    ys = [cdf_at(s, p.t - x) for x in xs]

    if len(atoms) == 2:
        denom = xs[1] - xs[0]
        lambda2 = (ys[0] - ys[1]) / denom
        lambda1 = ys[0] + lambda2 * xs[0]
    else:
        design = np.column_stack([np.ones(len(xs)), [-x for x in xs]])
        coef, *_ = np.linalg.lstsq(design, np.asarray(ys), rcond=None)
        lambda1, lambda2 = float(coef[0]), float(coef[1])
    return Certificate(lambda1=lambda1, lambda2=lambda2)


def verify(
    mu: DiscreteDistribution,
    p: Problem,
    cert: Certificate,
    grid_points: int = 201,
) -> VerifyReport:
    """Audit the certificate against mu on a sharpened grid.

    The grid is the uniform grid of ``grid_points`` over [0, 1], plus
    the atoms of mu, plus every x where ell can jump (x = t - y for y
    an atom of S_{n-1}), plus offsets of ``OFFSET`` on both sides of
    each of those points.  A violation found at one resolution persists
    at finer ones because the sharpened points are always included.
    """
    if grid_points < 2:
        raise ValueError(f"grid_points must be >= 2, got {grid_points!r}")
    s = _predecessor_sum(mu, p)
    t = p.t

    special: list[float] = [x for x, _ in mu.atoms]
    for y, _ in s.atoms:
        x = t - y
        if -ATOL <= x <= 1.0 + ATOL:
            special.append(min(max(x, 0.0), 1.0))
    points: list[float] = [i / (grid_points - 1) for i in range(grid_points)]
    for x in special:
        points.append(x)
        for probe in (x - OFFSET, x + OFFSET):
            if 0.0 <= probe <= 1.0:
                points.append(probe)
    points = sorted(set(points))

    worst = math.inf
    for x in points:
        worst = min(worst, _ell(s, cert, t, x))
    max_violation_l1 = max(0.0, -worst)

    max_violation_l2 = 0.0
    for x, _ in mu.atoms:
        max_violation_l2 = max(max_violation_l2, abs(_ell(s, cert, t, x)))

    support_ok = True
    sum_support = [y for y, _ in s.atoms]
    for x, _ in mu.atoms:
        if abs(x - 1.0) <= ATOL:
            continue
        target = t - x
        if min(abs(target - y) for y in sum_support) > SUPPORT_TOL:
            support_ok = False
            break

    implied = cert.lambda1 - cert.lambda2 * mean(mu)
    direct = cdf_at(iid_sum(mu, p.n), t)
    passed = (
        max_violation_l1 <= L_TOL
        and max_violation_l2 <= L_TOL
        and support_ok
        and abs(implied - direct) <= VALUE_TOL
    )
    return VerifyReport(
        certificate=cert,
        max_violation_L1=max_violation_l1,
        max_violation_L2=max_violation_l2,
        support_condition_ok=support_ok,
        implied_value=implied,
        direct_value=direct,
        passed=passed,
    )
