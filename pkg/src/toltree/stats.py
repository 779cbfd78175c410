"""Rank correlation and paired t-tests.

Critical values for the two-sided 0.05 t test are bundled for df <= 200, so
no external numeric library is needed at run time.  Degrees of freedom above
the table fall back to the normal approximation (1.96).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

# Two-sided 0.05 critical values of Student's t, df = 1..200.
_T_CRIT_05 = (
    12.706205, 4.302653, 3.182446, 2.776445, 2.570582, 2.446912, 2.364624, 2.306004,
    2.262157, 2.228139, 2.200985, 2.178813, 2.160369, 2.144787, 2.131450, 2.119905,
    2.109816, 2.100922, 2.093024, 2.085963, 2.079614, 2.073873, 2.068658, 2.063899,
    2.059539, 2.055529, 2.051831, 2.048407, 2.045230, 2.042272, 2.039513, 2.036933,
    2.034515, 2.032245, 2.030108, 2.028094, 2.026192, 2.024394, 2.022691, 2.021075,
    2.019541, 2.018082, 2.016692, 2.015368, 2.014103, 2.012896, 2.011741, 2.010635,
    2.009575, 2.008559, 2.007584, 2.006647, 2.005746, 2.004879, 2.004045, 2.003241,
    2.002465, 2.001717, 2.000995, 2.000298, 1.999624, 1.998972, 1.998341, 1.997730,
    1.997138, 1.996564, 1.996008, 1.995469, 1.994945, 1.994437, 1.993943, 1.993464,
    1.992997, 1.992543, 1.992102, 1.991673, 1.991254, 1.990847, 1.990450, 1.990063,
    1.989686, 1.989319, 1.988960, 1.988610, 1.988268, 1.987934, 1.987608, 1.987290,
    1.986979, 1.986675, 1.986377, 1.986086, 1.985802, 1.985523, 1.985251, 1.984984,
    1.984723, 1.984467, 1.984217, 1.983972, 1.983731, 1.983495, 1.983264, 1.983038,
    1.982815, 1.982597, 1.982383, 1.982173, 1.981967, 1.981765, 1.981567, 1.981372,
    1.981180, 1.980992, 1.980808, 1.980626, 1.980448, 1.980272, 1.980100, 1.979930,
    1.979764, 1.979600, 1.979439, 1.979280, 1.979124, 1.978971, 1.978820, 1.978671,
    1.978524, 1.978380, 1.978239, 1.978099, 1.977961, 1.977826, 1.977692, 1.977561,
    1.977431, 1.977304, 1.977178, 1.977054, 1.976931, 1.976811, 1.976692, 1.976575,
    1.976460, 1.976346, 1.976233, 1.976122, 1.976013, 1.975905, 1.975799, 1.975694,
    1.975590, 1.975488, 1.975387, 1.975288, 1.975189, 1.975092, 1.974996, 1.974902,
    1.974808, 1.974716, 1.974625, 1.974535, 1.974446, 1.974358, 1.974271, 1.974185,
    1.974100, 1.974017, 1.973934, 1.973852, 1.973771, 1.973691, 1.973612, 1.973534,
    1.973457, 1.973381, 1.973305, 1.973231, 1.973157, 1.973084, 1.973012, 1.972941,
    1.972870, 1.972800, 1.972731, 1.972663, 1.972595, 1.972528, 1.972462, 1.972396,
    1.972332, 1.972268, 1.972204, 1.972141, 1.972079, 1.972017, 1.971957, 1.971896,
)
_Z_CRIT_05 = 1.959964


def t_critical(df: int) -> float:
    """Two-sided 0.05 critical value for Student's t with ``df`` degrees of freedom."""
    if df < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got {df}")
    if df <= len(_T_CRIT_05):
        return _T_CRIT_05[df - 1]
    return _Z_CRIT_05


class UndefinedCorrelation(ValueError):
    """Raised when an input vector has zero rank variance."""


@dataclass(frozen=True)
class CorrelationResult:
    rho: float
    n: int
    significant: bool


@dataclass(frozen=True)
class TTestResult:
    t: float
    df: int
    significant: bool
    degenerate: bool = False


def _ranks(values: Sequence[float]) -> list[float]:
    """Average ranks (1-based) with ties sharing their mean rank."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        mean_rank = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = mean_rank
        i = j + 1
    return ranks


def _pearson(x: Sequence[float], y: Sequence[float]) -> float:
    n = len(x)
    mx = sum(x) / n
    my = sum(y) / n
    sxy = sum((a - mx) * (b - my) for a, b in zip(x, y))
    sxx = sum((a - mx) ** 2 for a in x)
    syy = sum((b - my) ** 2 for b in y)
    if sxx == 0 or syy == 0:
        raise UndefinedCorrelation("zero rank variance")
    return sxy / math.sqrt(sxx * syy)


def spearman(
    x: Sequence[float],
    y: Sequence[float],
    *,
    method: str = "t-approx",
    n_permutations: int = 10000,
    seed: int = 0,
) -> CorrelationResult:
    """Spearman rank correlation with average-rank tie handling.

    Significance is two-sided at 0.05.  The default uses the t
    approximation ``t = rho * sqrt((n - 2) / (1 - rho^2))``; a permutation
    mode exists for validating the approximation.
    """
    if len(x) != len(y):
        raise ValueError("input vectors must have equal length")
    n = len(x)
    if n < 2:
        raise ValueError("need at least two pairs")
    rx = _ranks(x)
    ry = _ranks(y)
    rho = _pearson(rx, ry)
    rho = max(-1.0, min(1.0, rho))

    if method == "t-approx":
        if n < 3:
            significant = False
        elif abs(rho) >= 1.0:
            significant = True
        else:
            t = rho * math.sqrt((n - 2) / (1 - rho * rho))
            significant = abs(t) > t_critical(n - 2)
    elif method == "permutation":
        import random

        rng = random.Random(seed)
        hits = 0
        perm = list(ry)
        for _ in range(n_permutations):
            rng.shuffle(perm)
            try:
                r = _pearson(rx, perm)
            except UndefinedCorrelation:
                r = 0.0
            if abs(r) >= abs(rho) - 1e-12:
                hits += 1
        significant = (hits + 1) / (n_permutations + 1) < 0.05
    else:
        raise ValueError(f"unknown method {method!r}")
    return CorrelationResult(rho=rho, n=n, significant=significant)


def paired_t_test(a: Sequence[float], b: Sequence[float]) -> TTestResult:
    """Paired t test on elementwise differences, two-sided at 0.05.

    A constant difference has zero variance: zero mean counts as t = 0 and
    not significant, nonzero mean as significant by convention; both are
    flagged degenerate when the variance vanishes with a nonzero mean.
    """
    if len(a) != len(b):
        raise ValueError("input vectors must have equal length")
    n = len(a)
    if n < 2:
        raise ValueError("need at least two pairs")
    d = [x - y for x, y in zip(a, b)]
    mean = sum(d) / n
    var = sum((v - mean) ** 2 for v in d) / (n - 1)
    df = n - 1
    if var == 0:
        if mean == 0:
            return TTestResult(t=0.0, df=df, significant=False)
        return TTestResult(t=math.inf if mean > 0 else -math.inf, df=df,
                           significant=True, degenerate=True)
    t = mean / math.sqrt(var / n)
    return TTestResult(t=t, df=df, significant=abs(t) > t_critical(df))
