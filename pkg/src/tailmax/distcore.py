"""Finite discrete distributions on [0, 1] and their exact i.i.d. sums.

Everything downstream (the closed-form two-draw solver, certificates,
candidate families, the brute-force search) reduces to arithmetic on a
small list of (atom, weight) pairs.  The i.i.d. sum of n draws is
materialized exactly by multiset enumeration, so mass that sits exactly
on a CDF threshold is kept intact rather than lost to quadrature.

Conventions, used consistently by every consumer:

* atoms closer than ``ATOL`` are merged at construction time;
* ``cdf_at`` counts boundary atoms, i.e. P(S <= t) includes atoms within
  ``ATOL`` above t;
* ``interval_prob`` is half-open: strict at the left endpoint, weak at
  the right, each shifted by ``ATOL``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BudgetExceededError

# Atom comparison tolerance.  Extremal solutions put mass exactly on
# S_n = t, so threshold comparisons are widened by this amount.
ATOL = 1e-12

# Input weights must sum to one within this.
WEIGHT_SUM_TOL = 1e-12

# Materialized sums accumulate rounding from multinomial weights; their
# total is validated against the looser tolerance.
SUM_WEIGHT_SUM_TOL = 1e-10

# Cap on the number of multiset count vectors enumerated by iid_sum:
# C(n + k - 1, k - 1) for k atoms and n draws.
CONVOLUTION_BUDGET = 10_000_000

# Largest n for which floating-point multinomial weights stay accurate.
MAX_SUM_DRAWS = 64


def fmt17(x: float) -> str:
    """Format a float with 17 significant digits (round-trip exact)."""
    return format(x, ".17g")


@dataclass(frozen=True, slots=True)
class DiscreteDistribution:
    """Immutable finite distribution on [0, 1].

    ``atoms`` is a tuple of (value, weight) pairs, sorted by value, with
    strictly positive weights and pairwise separation above ``ATOL``.
    Build instances through :func:`make_distribution`, which validates
    and canonicalizes; the raw constructor trusts its input.
    """

    atoms: tuple[tuple[float, float], ...]

    def support(self) -> tuple[float, ...]:
        return tuple(x for x, _ in self.atoms)

    def __str__(self) -> str:
        return format_distribution(self)


@dataclass(frozen=True, slots=True)
class SumDistribution:
    """Distribution of an i.i.d. sum; atoms live in [0, n]."""

    atoms: tuple[tuple[float, float], ...]

    def support(self) -> tuple[float, ...]:
        return tuple(x for x, _ in self.atoms)


@dataclass(frozen=True, slots=True)
class Problem:
    """An instance (n, m, t): n i.i.d. draws on [0, 1] with mean m,
    asking for the maximal P(S_n <= t).

    t >= m*n is the trivial regime (the point mass at m already gives
    probability one); ``nontrivial`` flags the interesting case.
    """

    n: int
    m: float
    t: float

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be an integer >= 1, got {self.n!r}")
        if not (isinstance(self.m, (int, float)) and math.isfinite(self.m)):
            raise ValueError(f"m must be a finite real, got {self.m!r}")
        if not 0.0 < self.m < 1.0:
            raise ValueError(f"m must lie strictly inside (0, 1), got {self.m!r}")
        if not (isinstance(self.t, (int, float)) and math.isfinite(self.t)):
            raise ValueError(f"t must be a finite real, got {self.t!r}")
        if self.t < 0.0:
            raise ValueError(f"t must be >= 0, got {self.t!r}")

    @property
    def nontrivial(self) -> bool:
        return self.t < self.m * self.n


def make_distribution(pairs: Iterable[tuple[float, float]]) -> DiscreteDistribution:
    """Validate and canonicalize (value, weight) pairs.

    Zero-weight atoms are dropped, values within ``ATOL`` of each other
    are merged (keeping the leftmost representative), and the total
    weight must equal one within ``WEIGHT_SUM_TOL``.  Weights are never
    renormalized: a wrong total is an error in the caller, not noise to
    hide.
    """
    cleaned: list[tuple[float, float]] = []
    for value, weight in pairs:
        value = float(value)
        weight = float(weight)
        if not (math.isfinite(value) and math.isfinite(weight)):
            raise ValueError(f"non-finite atom ({value!r}, {weight!r})")
        if weight < 0.0:
            raise ValueError(f"negative weight {weight!r} at value {value!r}")
        if value < -ATOL or value > 1.0 + ATOL:
            raise ValueError(f"atom value {value!r} outside [0, 1]")
        if weight == 0.0:
            continue
        cleaned.append((min(max(value, 0.0), 1.0), weight))
    if not cleaned:
        raise ValueError("a distribution needs at least one atom with positive weight")

    cleaned.sort()
    merged: list[list[float]] = []
    for value, weight in cleaned:
        if merged and value - merged[-1][0] <= ATOL:
            merged[-1][1] += weight
        else:
            merged.append([value, weight])

    total = 0.0
    for _, weight in merged:
        total += weight
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        raise ValueError(f"weights sum to {total!r}, expected 1 within {WEIGHT_SUM_TOL}")
    return DiscreteDistribution(tuple((v, w) for v, w in merged))


def mean(d: DiscreteDistribution) -> float:
    """Mean of d, summed left to right over the ordered atoms."""
    total = 0.0
    for value, weight in d.atoms:
        total += value * weight
    return total


def _count_vectors(k: int, n: int):
    # All length-k tuples of nonnegative integers summing to n.
    if k == 1:
        yield (n,)
        return
    for c0 in range(n + 1):
        for rest in _count_vectors(k - 1, n - c0):
            yield (c0, *rest)


def iid_sum(d: DiscreteDistribution, n: int) -> SumDistribution:
    """Exact distribution of the sum of n i.i.d. draws from d.

    Enumerates multisets of atoms with multinomial weights
    n! / prod(c_i!) * prod(p_i^c_i).  Coefficients are computed in
    floating point through log-gamma, which is accurate to a few ulps
    for n <= 64; sums within ``ATOL`` of each other are merged.

    Raises BudgetExceededError when the number of count vectors
    C(n + k - 1, k - 1) would exceed ``CONVOLUTION_BUDGET``.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    if n > MAX_SUM_DRAWS:
        raise ValueError(f"n = {n} exceeds the supported maximum {MAX_SUM_DRAWS}")
    if n == 1:
        return SumDistribution(d.atoms)

    k = len(d.atoms)
    n_terms = math.comb(n + k - 1, k - 1)
    if n_terms > CONVOLUTION_BUDGET:
        raise BudgetExceededError(
            f"iid_sum would enumerate {n_terms} count vectors "
            f"(budget {CONVOLUTION_BUDGET}) for k={k} atoms, n={n}"
        )

    values = [x for x, _ in d.atoms]
    weights = [w for _, w in d.atoms]
    lg = [math.lgamma(i + 1) for i in range(n + 1)]

    entries: list[tuple[float, float]] = []
    for counts in _count_vectors(k, n):
        log_coef = lg[n]
        for c in counts:
            log_coef -= lg[c]
        weight = math.exp(log_coef)
        for c, p in zip(counts, weights):
            weight *= p**c
        value = 0.0
        for c, x in zip(counts, values):
            value += c * x
        entries.append((value, weight))

    entries.sort()
    merged: list[list[float]] = []
    for value, weight in entries:
        if merged and value - merged[-1][0] <= ATOL:
            merged[-1][1] += weight
        else:
            merged.append([value, weight])

    total = 0.0
    for _, weight in merged:
        total += weight
    if abs(total - 1.0) > SUM_WEIGHT_SUM_TOL:
        raise ArithmeticError(f"sum weights drifted to {total!r}")
    return SumDistribution(tuple((v, w) for v, w in merged))


def cdf_at(s: SumDistribution, t: float) -> float:
    """P(S <= t), counting atoms within ``ATOL`` above t."""
    total = 0.0
    bound = t + ATOL
    for value, weight in s.atoms:
        if value > bound:
            break
        total += weight
    return total


def interval_prob(s: SumDistribution, u: float, v: float) -> float:
    """P(u < S <= v) with the shared ``ATOL`` convention.

    The left endpoint is strict (atoms within ATOL of u are excluded),
    the right endpoint weak (atoms within ATOL above v are included).
    An empty interval (v < u) has probability zero.
    """
    if v < u:
        return 0.0
    lo = u + ATOL
    hi = v + ATOL
    total = 0.0
    for value, weight in s.atoms:
        if value > hi:
            break
        if value > lo:
            total += weight
    return total


def binom_cdf(n: int, p: float, x: float) -> float:
    """P(Binomial(n, p) <= x) by exact combinatorial summation."""
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")
    kmax = min(n, math.floor(x + ATOL))
    if kmax < 0:
        return 0.0
    q = 1.0 - p
    total = 0.0
    for i in range(kmax + 1):
        total += math.comb(n, i) * p**i * q ** (n - i)
    return total


def parse_distribution(text: str) -> DiscreteDistribution:
    """Parse the ``x:p,x:p`` wire format used by the command line."""
    pairs: list[tuple[float, float]] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError(f"empty atom in distribution text {text!r}")
        value_text, sep, weight_text = chunk.partition(":")
        if not sep:
            raise ValueError(f"atom {chunk!r} is missing the ':' separator")
        try:
            value = float(value_text)
            weight = float(weight_text)
        except ValueError as exc:
            raise ValueError(f"atom {chunk!r} is not a pair of reals") from exc
        pairs.append((value, weight))
    return make_distribution(pairs)


def format_distribution(d: DiscreteDistribution) -> str:
    """Inverse of :func:`parse_distribution`, with round-trip floats."""
    return ",".join(f"{fmt17(x)}:{fmt17(w)}" for x, w in d.atoms)


def point_mass(x: float) -> DiscreteDistribution:
    """The distribution putting all mass at x."""
    return make_distribution([(x, 1.0)])
