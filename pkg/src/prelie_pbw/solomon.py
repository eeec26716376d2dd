"""Solomon (eulerian) idempotents, Adams-type operations Ψ^k and the explicit
PBW isomorphism between S(L) and S*(L)."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .combinat import binomial, ordered_partitions, stirling_first
from .hopf import (
    _order,
    _split_forest,
    _conv_power_forest,
    commutative_product,
    commute_slots,
    coproduct,
    iterated_coproduct,
    star_product,
)
from .prelie import Element, as_element
from .trees import Forest


@lru_cache(maxsize=50_000)
def _sol1_forest(f: Forest) -> Element:
    out = Element.zero()
    for n in range(1, len(f) + 1):
        out = out + _conv_power_forest(n, f) * Fraction((-1) ** (n - 1), n)
    return out


def sol1(u, trunc=None) -> Element:
    """First Solomon idempotent, log^⋆(id): Σ_n (-1)^(n-1)/n J^{⋆n}.

    The series stops by itself: J^{⋆n} kills forests with fewer than n trees.
    """
    N = _order(trunc)
    u = as_element(u).truncate(N)
    out = u.map_forests(_sol1_forest)
    out.order = N
    return out


def _star_slots(images: Sequence[Element]) -> Element:
    prod = Element.one()
    for img in images:
        if not img:
            return Element.zero()
        prod = star_product(prod, img)
    return prod


@lru_cache(maxsize=50_000)
def _soln_forest(i: int, f: Forest) -> Element:
    if i > len(f):
        return Element.zero()
    out = Element.zero()
    for key, w in _split_forest(f, i):
        if any(not s.trees for s in key):
            continue
        out = out + _star_slots([_sol1_forest(s) for s in key]) * w
    return out / math.factorial(i)


def soln(i: int, u, trunc=None) -> Element:
    """sol_i = sol_1^{⋆i} / i!.  Zero once i exceeds the number of trees."""
    if i < 1:
        raise ValueError("idempotent index must be >= 1")
    N = _order(trunc)
    u = as_element(u).truncate(N)
    if N is not None and i > N:
        return Element.zero()
    out = u.map_forests(lambda f: _soln_forest(i, f))
    out.order = N
    return out


def solomon_components(u, trunc) -> list[Element]:
    """[sol_1(u), ..., sol_N(u)]."""
    N = _order(trunc)
    return [soln(i, u, N) for i in range(1, N + 1)]


@lru_cache(maxsize=50_000)
def _psi_forest(k: int, f: Forest) -> Element:
    if k == 0:
        return Element.one() if not f.trees else Element.zero()
    out = Element.zero()
    for key, w in _split_forest(f, k):
        out = out + _star_slots([Element.of(s) for s in key]) * w
    return out


def psi(k: int, u, trunc=None) -> Element:
    """Ψ^k = id^{⋆k}; Ψ^0 = unit∘counit."""
    if k < 0:
        raise ValueError("psi needs k >= 0")
    N = _order(trunc)
    u = as_element(u).truncate(N)
    return u.map_forests(lambda f: _psi_forest(k, f))


def _letters(letters) -> list[Element]:
    out = [as_element(l) for l in letters]
    for l in out:
        if not l.is_primitive():
            raise ValueError("letters must lie in L")
    return out


def _partition_sums(letters: list[Element], j: int) -> Element:
    """Σ over ordered partitions (I_1..I_j) of l_{I_1} * ... * l_{I_j}."""
    out = Element.zero()
    for blocks in ordered_partitions(len(letters), j):
        factors = []
        for block in blocks:
            mono = Element.one()
            for idx in block:
                mono = commutative_product(mono, letters[idx - 1])
            factors.append(mono)
        out = out + _star_slots(factors)
    return out


def sol_stirling(i: int, letters) -> Element:
    """sol_i(l_1...l_n) from the closed Stirling-number formula."""
    ls = _letters(letters)
    n = len(ls)
    if i < 1 or i > n:
        raise ValueError(f"sol_stirling needs 1 <= i <= n, got i={i}, n={n}")
    out = Element.zero()
    for j in range(i, n + 1):
        out = out + _partition_sums(ls, j) * Fraction(stirling_first(j, i), math.factorial(j))
    return out


def sol1_closed(letters) -> Element:
    """sol_1(l_1...l_n) as Σ_i (-1)^(i-1)/i over ordered partitions into i blocks."""
    ls = _letters(letters)
    out = Element.zero()
    for i in range(1, len(ls) + 1):
        out = out + _partition_sums(ls, i) * Fraction((-1) ** (i - 1), i)
    return out


def psi_closed(k: int, letters) -> Element:
    """Ψ^k(l_1...l_n) = Σ_j C(k, j) Σ_{ordered partitions into j blocks}."""
    ls = _letters(letters)
    if not ls:
        return Element.one()
    out = Element.zero()
    for j in range(1, len(ls) + 1):
        c = binomial(k, j)
        if c:
            out = out + _partition_sums(ls, j) * c
    return out


def monomial(letters) -> Element:
    """Commutative product l_1...l_n."""
    out = Element.one()
    for l in _letters(letters):
        out = commutative_product(out, l)
    return out


# PBW isomorphism ----------------------------------------------------------

@lru_cache(maxsize=50_000)
def _pbw_forest(f: Forest) -> Element:
    n = len(f)
    if n <= 1:
        return Element.of(f)
    counts: dict[tuple, int] = {}
    for perm in itertools.permutations(f.trees):
        counts[perm] = counts.get(perm, 0) + 1
    out = Element.zero()
    for perm, w in counts.items():
        out = out + _star_slots([Element.of(t) for t in perm]) * w
    return out / math.factorial(n)


def pbw_map(u, trunc=None) -> Element:
    """Symmetrized * product: l_1...l_n -> (1/n!) Σ_σ l_σ(1) * ... * l_σ(n)."""
    N = _order(trunc)
    return as_element(u).truncate(N).map_forests(_pbw_forest)


@lru_cache(maxsize=50_000)
def _pbw_inverse_forest(f: Forest) -> Element:
    out = Element.zero()
    for n in range(1, len(f) + 1):
        acc = Element.zero()
        for key, w in _split_forest(f, n):
            if any(not s.trees for s in key):
                continue
            prod = Element.one()
            for s in key:
                prod = commutative_product(prod, _sol1_forest(s))
            acc = acc + prod * w
        out = out + acc / math.factorial(n)
    if not f.trees:
        out = Element.one()
    return out


def pbw_inverse(u, trunc=None) -> Element:
    """Σ_n (1/n!) m∘sol_1^{⊗n}∘Δ^[n], with m the commutative product."""
    N = _order(trunc)
    return as_element(u).truncate(N).map_forests(_pbw_inverse_forest)


# convolution and composition of idempotents -------------------------------

def _sol_any(i: int, u: Element) -> Element:
    return soln(i, u) if i >= 1 else Element.of(Forest()) * u.counit()


def sol_convolution(i: int, j: int, u, trunc=None) -> Element:
    """(sol_i ⋆ sol_j)(u): coproduct, sol_i ⊗ sol_j, then * product."""
    N = _order(trunc)
    u = as_element(u).truncate(N)
    out = Element.zero()
    for (f, g), c in coproduct(u).terms.items():
        left = _sol_any(i, Element.of(f))
        right = _sol_any(j, Element.of(g))
        if left and right:
            out = out + star_product(left, right) * c
    return out


def sol_composition(i: int, j: int, u, trunc=None) -> Element:
    """sol_i(sol_j(u))."""
    return soln(i, soln(j, u, trunc), trunc)
