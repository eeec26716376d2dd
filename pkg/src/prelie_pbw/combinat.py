"""Exact combinatorial numbers used as coefficients throughout the package.

All scalars are :class:`fractions.Fraction`; nothing here ever rounds.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

Rational = Fraction

OrderedPartition = tuple[tuple[int, ...], ...]


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """B_n from the generating function x/(e^x - 1), so B_1 = -1/2.

    Computed with the Akiyama-Tanigawa triangle (which produces the B_1 = +1/2
    convention) and the sign of B_1 flipped afterwards.
    """
    if n < 0:
        raise ValueError("bernoulli index must be nonnegative")
    row = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        row[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
    value = row[0]
    return -value if n == 1 else value


@lru_cache(maxsize=None)
def stirling_first(j: int, i: int) -> int:
    """Signed Stirling number of the first kind: [x^i] x(x-1)...(x-j+1)."""
    if i < 1 or i > j:
        raise ValueError(f"stirling_first needs 1 <= i <= j, got j={j}, i={i}")
    return _stirling_first(j, i)


@lru_cache(maxsize=None)
def _stirling_first(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return _stirling_first(n - 1, k - 1) - (n - 1) * _stirling_first(n - 1, k)


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be nonnegative")
    return math.comb(n, k)


def multinomial(counts) -> int:
    total, out = 0, 1
    for c in counts:
        total += c
        out *= math.comb(total, c)
    return out


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` nonnegative summands."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def set_partitions(n: int, j: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Unordered partitions of {1..n} into exactly j blocks (restricted growth strings)."""
    if j < 1 or j > n:
        return

    def grow(pos, labels, used):
        if n - pos < j - used:
            return
        if pos == n:
            blocks = [[] for _ in range(j)]
            for elem, b in enumerate(labels, start=1):
                blocks[b].append(elem)
            yield tuple(tuple(b) for b in blocks)
            return
        for b in range(min(used + 1, j)):
            labels.append(b)
            yield from grow(pos + 1, labels, max(used, b + 1))
            labels.pop()

    yield from grow(0, [], 0)


def ordered_partitions(n: int, j: int) -> Iterator[OrderedPartition]:
    """Every ordered partition of {1..n} into j nonempty blocks, each exactly once.

    Streams its output; yields nothing when j > n.
    """
    if n < 1 or j < 1:
        raise ValueError("ordered_partitions needs n >= 1 and j >= 1")
    for blocks in set_partitions(n, j):
        yield from itertools.permutations(blocks)
