"""Brute-force ground truth over 2- and 3-point supports on a grid.

The search space is deliberately small: supports of size two or three
drawn from a finite pool.  Two-point solutions cover the proven n = 2
families, three-point ones the conjectured general-n family; the pool
injects the analytically important points (0, 1, m, t/2, t - 1 and the
mirror t - i/N) so closed-form optima are exactly representable rather
than merely approximable.

Three phases:

1. every pair {a, b} with a < m < b, weight forced by the mean;
2. every triple {a, b, c} with a < m < c, sweeping P(X=c) over its
   feasible interval, then golden-section polish of the winning cell;
3. coordinate descent on the incumbent's support points, step 1/N
   halved each round.

Everything is deterministic: fixed iteration orders, strict-improvement
updates, ties broken toward the lexicographically smaller support
(a pair sorts before any triple extending it).  The heavy loops live
in the kernel backend; this module adds the adaptive parts, which are
the same Python code under either backend.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from . import _backend as backend
from .candidates import best_candidate
from .distcore import ATOL, DiscreteDistribution, Problem, make_distribution
from .errors import BudgetExceededError

# Hard cap on grid_n^3 * prob_steps; beyond this the search is refused
# rather than left to run for hours.
SEARCH_BUDGET = 100_000_000

# A candidate value may exceed the oracle only by noise; an oracle
# value exceeding the candidate by more than this is a counterexample
# to the conjecture.
COUNTEREXAMPLE_TOL = 1e-6

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0

# Golden-section bracket width target and evaluation cap.
_GOLDEN_TOL = 1e-13
_GOLDEN_MAX_EVALS = 120


@dataclass(frozen=True, slots=True)
class OracleConfig:
    """Search resolution: support grid N, probability sweep M, polish rounds."""

    grid_n: int = 40
    prob_steps: int = 32
    refine_iters: int = 2

    def __post_init__(self) -> None:
        if not isinstance(self.grid_n, int) or self.grid_n < 2:
            raise ValueError(f"grid_n must be an integer >= 2, got {self.grid_n!r}")
        if not isinstance(self.prob_steps, int) or self.prob_steps < 2:
            raise ValueError(
                f"prob_steps must be an integer >= 2, got {self.prob_steps!r}"
            )
        if not isinstance(self.refine_iters, int) or self.refine_iters < 0:
            raise ValueError(
                f"refine_iters must be an integer >= 0, got {self.refine_iters!r}"
            )


@dataclass(frozen=True, slots=True)
class OracleResult:
    value: float
    distribution: DiscreteDistribution
    evaluations: int


@dataclass(frozen=True, slots=True)
class ScanPoint:
    m: float
    t: float
    candidate_value: float
    oracle_value: float
    excess: float
    counterexample: bool


@dataclass(frozen=True, slots=True)
class ScanReport:
    """Conjecture stress test over a grid of instances."""

    n: int
    config: OracleConfig
    points: tuple[ScanPoint, ...]
    max_excess: float

    @property
    def counterexamples(self) -> tuple[ScanPoint, ...]:
        return tuple(pt for pt in self.points if pt.counterexample)


def build_support_pool(p: Problem, grid_n: int) -> tuple[float, ...]:
    """Sorted candidate atoms: the uniform grid, its t-mirror, and the
    points 0, 1, m, t/2, t-1 that closed-form solutions use."""
    if grid_n < 2:
        raise ValueError(f"grid_n must be >= 2, got {grid_n!r}")
    pts = [i / grid_n for i in range(grid_n + 1)]
    pts += [0.0, 1.0, p.m, 0.5 * p.t]
    for i in range(grid_n + 1):
        x = p.t - i / grid_n
        if 0.0 <= x <= 1.0:
            pts.append(x)
    if p.t >= 1.0:
        pts.append(p.t - 1.0)
    keep = sorted(x for x in pts if 0.0 <= x <= 1.0)
    pool = [keep[0]]
    for x in keep[1:]:
        if x - pool[-1] > ATOL:
            pool.append(x)
    return tuple(pool)


def _golden_refine(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    seed_x: float,
    seed_v: float,
) -> tuple[float, float, int]:
    # Maximize f on [lo, hi]; returns the best probe seen, never worse
    # than the seed.  Strict improvement keeps ties at the seed, so
    # the polish is deterministic and monotone.
    best_v, best_x = seed_v, seed_x
    a, b = lo, hi
    h = b - a
    if h <= _GOLDEN_TOL:
        return best_v, best_x, 0
    c = b - _INVPHI * h
    d = a + _INVPHI * h
    fc = f(c)
    fd = f(d)
    evals = 2
    if fc > best_v:
        best_v, best_x = fc, c
    if fd > best_v:
        best_v, best_x = fd, d
    while h > _GOLDEN_TOL and evals < _GOLDEN_MAX_EVALS:
        if fc >= fd:
            b, d, fd = d, c, fc
            h = b - a
            c = b - _INVPHI * h
            fc = f(c)
            evals += 1
            if fc > best_v:
                best_v, best_x = fc, c
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INVPHI * h
            fd = f(d)
            evals += 1
            if fd > best_v:
                best_v, best_x = fd, d
    return best_v, best_x, evals


def _golden_on_cell(
    n: int,
    a: float,
    b: float,
    c: float,
    m: float,
    t: float,
    steps: int,
    wc: float,
    s_idx: int,
    sweep_v: float,
) -> tuple[float, float, int]:
    # Bracket the winning sweep cell by its two neighbors and polish.
    lo = (m - b) / (c - b)
    if lo < 0.0:
        lo = 0.0
    hi = (m - a) / (c - a)
    span = hi - lo
    gl = lo if s_idx <= 0 else lo + span * (s_idx - 1) / (steps - 1)
    gr = hi if s_idx >= steps - 1 else lo + span * (s_idx + 1) / (steps - 1)
    return _golden_refine(
        lambda x: backend.triple_value(n, a, b, c, m, t, x), gl, gr, wc, sweep_v
    )


def _triple_polish(
    n: int, a: float, b: float, c: float, m: float, t: float, steps: int
) -> tuple[float, float, int] | None:
    # Sweep one triple, then golden-section its best cell.
    v, _, _, _, wc, s_idx, evals = backend.best_triple(n, (a, b, c), m, t, steps)
    if v < 0.0:
        return None
    gv, gwc, gevals = _golden_on_cell(n, a, b, c, m, t, steps, wc, s_idx, v)
    return gv, gwc, evals + gevals


def _valid_support(xs: Sequence[float], m: float) -> bool:
    for u, v in zip(xs, xs[1:]):
        if v - u <= ATOL:
            return False
    return xs[0] < m < xs[-1]


def _as_distribution(
    atoms: Sequence[float], wc: float | None, m: float
) -> DiscreteDistribution:
    if len(atoms) == 2:
        a, b = atoms
        w = (m - a) / (b - a)
        pairs = [(a, 1.0 - w), (b, w)]
    else:
        a, b, c = atoms
        assert wc is not None
        wb = ((m - a) - wc * (c - a)) / (b - a)
        if -ATOL <= wb < 0.0:
            wb = 0.0
        wa = (1.0 - wb) - wc
        if -ATOL <= wa < 0.0:
            wa = 0.0
        pairs = [(a, wa), (b, wb), (c, wc)]
    return make_distribution(pairs)


def oracle_search(p: Problem, cfg: OracleConfig) -> OracleResult:
    """Best 2- or 3-point distribution on the pool, deterministically.

    Raises BudgetExceededError when grid_n^3 * prob_steps exceeds
    ``SEARCH_BUDGET``, and ValueError on trivial instances (there the
    point mass at m achieves probability one and no search is needed).
    """
    if not p.nontrivial:
        raise ValueError(
            f"requires 0 <= t < m*n, got t={p.t!r}, m*n={p.m * p.n!r}"
        )
    cost = cfg.grid_n**3 * cfg.prob_steps
    if cost > SEARCH_BUDGET:
        raise BudgetExceededError(
            f"grid_n^3 * prob_steps = {cost} exceeds budget {SEARCH_BUDGET}"
        )
    n, m, t = p.n, p.m, p.t
    pool = build_support_pool(p, cfg.grid_n)
    evaluations = 0

    pair_v, pair_a, pair_b, ev = backend.best_pair(n, pool, m, t)
    evaluations += ev

    tri_v, tri_a, tri_b, tri_c, tri_wc, tri_idx, ev = backend.best_triple(
        n, pool, m, t, cfg.prob_steps
    )
    evaluations += ev
    if tri_v >= 0.0:
        tri_v, tri_wc, ev = _golden_on_cell(
            n, tri_a, tri_b, tri_c, m, t, cfg.prob_steps, tri_wc, tri_idx, tri_v
        )
        evaluations += ev

    if pair_v < 0.0 and tri_v < 0.0:
        raise ArithmeticError("no feasible support found; pool must be corrupt")

    # Lexicographic support tie-break; a pair precedes any triple that
    # extends it, hence the -inf sentinel.
    pair_key = (pair_a, pair_b, -math.inf)
    tri_key = (tri_a, tri_b, tri_c)
    if tri_v > pair_v or (tri_v == pair_v and tri_key < pair_key):
        value = tri_v
        atoms = [tri_a, tri_b, tri_c]
        wc: float | None = tri_wc
    else:
        value = pair_v
        atoms = [pair_a, pair_b]
        wc = None

    for round_idx in range(cfg.refine_iters):
        delta = (1.0 / cfg.grid_n) / (2.0**round_idx)
        for idx in range(len(atoms)):
            for sign in (-1.0, 1.0):
                x = atoms[idx] + sign * delta
                if x < 0.0 or x > 1.0:
                    continue
                moved = list(atoms)
                moved[idx] = x
                if not _valid_support(moved, m):
                    continue
                if len(moved) == 2:
                    a2, b2 = moved
                    w = (m - a2) / (b2 - a2)
                    v = backend.pair_value(n, a2, b2, w, t)
                    evaluations += 1
                    new_wc: float | None = None
                else:
                    polished = _triple_polish(n, *moved, m, t, cfg.prob_steps)
                    if polished is None:
                        continue
                    v, new_wc, ev = polished
                    evaluations += ev
                if v > value:
                    value = v
                    atoms = moved
                    wc = new_wc

    return OracleResult(
        value=value,
        distribution=_as_distribution(atoms, wc, m),
        evaluations=evaluations,
    )


def conjecture_scan(
    n: int, grid: Sequence[tuple[float, float]], cfg: OracleConfig
) -> ScanReport:
    """Candidate value versus oracle at every grid point.

    An oracle value exceeding the candidate by more than
    ``COUNTEREXAMPLE_TOL`` marks the point as a counterexample; the
    report carries everything needed to reproduce it.
    """
    points: list[ScanPoint] = []
    max_excess = -math.inf
    for m, t in grid:
        p = Problem(n=n, m=m, t=t)
        cand = best_candidate(p).best_value
        orc = oracle_search(p, cfg).value
        excess = orc - cand
        points.append(
            ScanPoint(
                m=m,
                t=t,
                candidate_value=cand,
                oracle_value=orc,
                excess=excess,
                counterexample=excess > COUNTEREXAMPLE_TOL,
            )
        )
        if excess > max_excess:
            max_excess = excess
    return ScanReport(n=n, config=cfg, points=tuple(points), max_excess=max_excess)
