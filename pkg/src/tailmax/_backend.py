"""Selects the search kernel implementation at import time.

The compiled extension is preferred; the pure-Python twin is the
fallback when the extension was not built (no compiler at install
time, unusual platform).  Both expose the same functions and return
bit-identical floats, so nothing downstream needs to care which one
loaded; ``BACKEND_NAME`` says which did.  Benchmarks and parity tests
import the two modules directly instead of going through here.
"""

from __future__ import annotations

try:
    from . import _kernels as _impl  # type: ignore[attr-defined]
except ImportError:
    from . import _kernels_py as _impl  # type: ignore[no-redef]

BACKEND_NAME: str = _impl.BACKEND_NAME
MAX_N: int = _impl.MAX_N

pair_value = _impl.pair_value
triple_value = _impl.triple_value
best_pair = _impl.best_pair
best_triple = _impl.best_triple
