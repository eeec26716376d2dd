import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from prelie_pbw.combinat import bernoulli, binomial, ordered_partitions, stirling_first


def bernoulli_by_series(n):
    """B_k from the reciprocal of (e^x - 1)/x = Σ x^k/(k+1)!."""
    d = [Fraction(1, math.factorial(k + 1)) for k in range(n + 1)]
    inv = [Fraction(0)] * (n + 1)
    inv[0] = 1 / d[0]
    for k in range(1, n + 1):
        inv[k] = -sum(d[j] * inv[k - j] for j in range(1, k + 1)) / d[0]
    return [inv[k] * math.factorial(k) for k in range(n + 1)]


def falling_factorial_coeffs(j):
    poly = [1]
    for r in range(j):
        # multiply by (x - r)
        nxt = [0] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k + 1] += c
            nxt[k] -= r * c
        poly = nxt
    return poly


def stirling2(n, k):
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def pascal(n, k):
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row[k] if k < len(row) else 0


def test_bernoulli_examples():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(3) == 0


def test_bernoulli_matches_series_division():
    assert [bernoulli(k) for k in range(16)] == bernoulli_by_series(15)


@pytest.mark.parametrize("n", range(1, 15))
def test_bernoulli_recurrence(n):
    assert sum(binomial(n + 1, k) * bernoulli(k) for k in range(n + 1)) == 0


def test_stirling_examples():
    assert stirling_first(1, 1) == 1
    assert stirling_first(2, 1) == -1
    assert stirling_first(3, 2) == -3


@pytest.mark.parametrize("j", range(1, 9))
def test_stirling_is_falling_factorial(j):
    coeffs = falling_factorial_coeffs(j)
    assert [stirling_first(j, i) for i in range(1, j + 1)] == coeffs[1:]
    for x in range(j + 1):
        ff = math.prod(x - r for r in range(j))
        assert sum(stirling_first(j, i) * x**i for i in range(1, j + 1)) == ff


@pytest.mark.parametrize("j,i", [(3, 0), (3, 4), (1, 2)])
def test_stirling_rejects_out_of_range(j, i):
    with pytest.raises(ValueError):
        stirling_first(j, i)


def test_ordered_partition_examples():
    assert list(ordered_partitions(2, 1)) == [((1, 2),)]
    assert sorted(ordered_partitions(2, 2)) == [((1,), (2,)), ((2,), (1,))]
    assert len(list(ordered_partitions(3, 2))) == 6
    assert list(ordered_partitions(2, 3)) == []


@pytest.mark.parametrize("n", range(1, 7))
def test_ordered_partitions_exhaustive(n):
    for j in range(1, n + 1):
        got = list(ordered_partitions(n, j))
        # brute force: surjections {1..n} -> {1..j}
        expected = set()
        for f in itertools.product(range(j), repeat=n):
            if len(set(f)) == j:
                expected.add(tuple(tuple(e + 1 for e in range(n) if f[e] == b) for b in range(j)))
        assert len(got) == len(set(got)) == math.factorial(j) * stirling2(n, j)
        assert set(got) == expected
        for blocks in got:
            assert all(blocks)
            assert sorted(x for b in blocks for x in b) == list(range(1, n + 1))


def test_ordered_partitions_stream():
    gen = ordered_partitions(7, 3)
    assert next(gen) is not None  # lazily produced


@given(st.integers(0, 30), st.integers(0, 30))
def test_binomial_pascal(n, k):
    assert binomial(n, k) == pascal(n, k)


def test_binomial_examples():
    assert binomial(4, 2) == 6
    assert binomial(7, 0) == 1
    assert binomial(3, 5) == 0
