import math

import pytest

from toltree.stats import (
    UndefinedCorrelation,
    paired_t_test,
    spearman,
    t_critical,
)


def reference_spearman(x, y):
    """Independent textbook implementation: Pearson over average ranks."""

    def ranks(v):
        order = sorted(range(len(v)), key=lambda i: v[i])
        r = [0.0] * len(v)
        i = 0
        while i < len(order):
            j = i
            while j + 1 < len(order) and v[order[j + 1]] == v[order[i]]:
                j += 1
            for k in range(i, j + 1):
                r[order[k]] = (i + j) / 2 + 1
            i = j + 1
        return r

    rx, ry = ranks(x), ranks(y)
    n = len(x)
    mx, my = sum(rx) / n, sum(ry) / n
    num = sum((a - mx) * (b - my) for a, b in zip(rx, ry))
    den = math.sqrt(sum((a - mx) ** 2 for a in rx) * sum((b - my) ** 2 for b in ry))
    return num / den


def test_perfect_correlation():
    r = spearman([1, 2, 3, 4], [10, 20, 30, 40])
    assert r.rho == pytest.approx(1.0)


def test_perfect_anticorrelation():
    r = spearman([1, 2, 3, 4], [4, 3, 2, 1])
    assert r.rho == pytest.approx(-1.0)


def test_documented_example_value():
    # With d^2 = (1+1+1+1+0) = 4, rho = 1 - 6*4/(5*24) = 0.8.
    r = spearman([1, 2, 3, 4, 5], [2, 1, 4, 3, 5])
    assert r.rho == pytest.approx(0.8)


def test_ties_use_average_ranks():
    x = [1, 1, 2, 3]
    y = [5, 5, 6, 7]
    assert spearman(x, y).rho == pytest.approx(reference_spearman(x, y))


def test_matches_reference_on_random_vectors():
    import random

    rng = random.Random(7)
    for _ in range(100):
        x = [rng.randrange(10) for _ in range(24)]
        y = [rng.randrange(10) for _ in range(24)]
        try:
            expect = reference_spearman(x, y)
        except ZeroDivisionError:
            continue
        assert spearman(x, y).rho == pytest.approx(expect, abs=1e-9)


def test_zero_variance_raises():
    with pytest.raises(UndefinedCorrelation):
        spearman([1, 1, 1], [1, 2, 3])


def test_permutation_mode_agrees_on_strong_signal():
    x = list(range(20))
    y = [v + 0.1 for v in x]
    assert spearman(x, y, method="permutation").significant
    assert spearman(x, y).significant


def test_input_validation():
    with pytest.raises(ValueError):
        spearman([1], [1])
    with pytest.raises(ValueError):
        spearman([1, 2], [1, 2, 3])
    with pytest.raises(ValueError):
        spearman([1, 2], [1, 2], method="bogus")


def test_t_critical_table():
    assert t_critical(1) == pytest.approx(12.7062, abs=1e-3)
    assert t_critical(30) == pytest.approx(2.0423, abs=1e-3)
    assert t_critical(10_000) == pytest.approx(1.96, abs=1e-2)


def test_paired_t_detects_shift():
    a = [1.0, 1.1, 0.9, 1.2, 1.0, 1.1, 0.95, 1.05]
    b = [x - 0.5 for x in a]
    res = paired_t_test(a, b)
    assert res.significant and res.t > 0


def test_paired_t_null():
    a = [1.0, 2.0, 3.0, 4.0]
    res = paired_t_test(a, list(a))
    assert res.t == 0.0 and not res.significant


def test_paired_t_degenerate_constant_shift():
    res = paired_t_test([1, 2, 3], [0, 1, 2])
    assert res.significant and res.degenerate
