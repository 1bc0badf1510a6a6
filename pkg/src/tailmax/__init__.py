"""Maximal lower-tail probabilities of i.i.d. sums on [0, 1].

Given n independent draws with mean m, this package computes the
largest possible P(S_n <= t) over all distributions on [0, 1]:

* exact closed forms with attaining distributions for n = 2;
* Lagrange certificates proving a given distribution maximal;
* conjectured extremal families for general n;
* classical bounds (Markov, exponential-moment, two-draw) and
  a brute-force oracle for cross-checking everything;
* upper confidence bounds on the mean for audit-style samples.

The command-line entry point is ``tailmax``; see the README.
"""

from ._backend import BACKEND_NAME
from .bounds import BoundReport, hoeffding_bound, hs_bound, markov_bound
from .candidates import (
    BinaryCandidate,
    CandidateSet,
    TernaryCandidate,
    best_candidate,
    binary_candidates,
    ternary_candidates,
)
from .conflevel import ConfidenceResult, Method, upper_conf_bound
from .distcore import (
    ATOL,
    DiscreteDistribution,
    Problem,
    SumDistribution,
    binom_cdf,
    cdf_at,
    format_distribution,
    iid_sum,
    interval_prob,
    make_distribution,
    mean,
    parse_distribution,
    point_mass,
)
from .errors import BudgetExceededError
from .exact2 import RegionN2, SolveResult, m1_curve, solve
from .lagrange import Certificate, VerifyReport, ell_at, fit_certificate, verify
from .oracle import (
    OracleConfig,
    OracleResult,
    ScanPoint,
    ScanReport,
    build_support_pool,
    conjecture_scan,
    oracle_search,
)

__version__ = "0.1.0"

__all__ = [
    "ATOL",
    "BACKEND_NAME",
    "BinaryCandidate",
    "BoundReport",
    "BudgetExceededError",
    "CandidateSet",
    "Certificate",
    "ConfidenceResult",
    "DiscreteDistribution",
    "Method",
    "OracleConfig",
    "OracleResult",
    "Problem",
    "RegionN2",
    "ScanPoint",
    "ScanReport",
    "SolveResult",
    "SumDistribution",
    "TernaryCandidate",
    "VerifyReport",
    "best_candidate",
    "binary_candidates",
    "binom_cdf",
    "build_support_pool",
    "cdf_at",
    "conjecture_scan",
    "ell_at",
    "fit_certificate",
    "format_distribution",
    "hoeffding_bound",
    "hs_bound",
    "iid_sum",
    "interval_prob",
    "m1_curve",
    "make_distribution",
    "markov_bound",
    "mean",
    "oracle_search",
    "parse_distribution",
    "point_mass",
    "solve",
    "ternary_candidates",
    "upper_conf_bound",
    "verify",
]
