"""Tolerance-threshold arithmetic for categorical productivity decisions.

A pattern that applies to ``n`` items and fails on ``e`` of them counts as
productive when ``e <= n / ln(n)``.  The comparison is categorical: there is
no parameter to tune and no notion of "almost productive".
"""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class TpVerdict:
    """Outcome of a productivity check over a scope of ``n`` items."""

    n: int
    e: int
    threshold: float
    productive: bool


def threshold(n: int) -> float:
    """Return the exception budget n / ln(n).

    Callers must ensure ``n >= 2``; the threshold is undefined below that
    (ln 1 = 0).  Use :func:`is_productive` if small scopes can occur.
    """
    if n < 2:
        raise ValueError(f"threshold undefined for n={n}; need n >= 2")
    return n / math.log(n)


def is_productive(n: int, e: int) -> TpVerdict:
    """Decide whether a pattern with ``e`` exceptions in a scope of ``n`` is productive.

    For n in {0, 1} the threshold is undefined and the pattern counts as
    productive exactly when it has no exceptions: a single consistent
    observation imposes no memorization cost.
    """
    if e < 0 or e > n:
        raise ValueError(f"exception count e={e} outside [0, n={n}]")
    if n < 2:
        return TpVerdict(n=n, e=e, threshold=float(n), productive=(e == 0))
    theta = threshold(n)
    return TpVerdict(n=n, e=e, threshold=theta, productive=(e <= theta))


_THRESHOLDS: dict[int, float] = {}


def tolerates(n: int, e: int) -> bool:
    """Boolean-only fast path of :func:`is_productive` for counting loops.
    Thresholds are memoized; semantics are identical."""
    if n < 2:
        return e == 0
    theta = _THRESHOLDS.get(n)
    if theta is None:
        theta = _THRESHOLDS[n] = n / math.log(n)
    return e <= theta
