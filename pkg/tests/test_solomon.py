import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from prelie_pbw.hopf import commutative_product, coproduct, star_product, sym_exp
from prelie_pbw.prelie import Element, prelie_product
from prelie_pbw.solomon import (
    monomial,
    pbw_inverse,
    pbw_map,
    psi,
    psi_closed,
    sol1,
    sol1_closed,
    sol_composition,
    sol_convolution,
    sol_stirling,
    soln,
    solomon_components,
)
from prelie_pbw.trees import Forest, Tree, enumerate_forests

from conftest import E, random_element

ONE = Element.one()
LETTERS = [Element.of(Tree(c)) for c in "abcde"]


def test_sol1_examples():
    assert sol1(E("a")) == E("a")
    assert sol1(E("a.a"), 3) == E("-a(a)")
    assert sol1(E("1/6 a.a.a"), 3) == E("1/12 a(a,a) + 1/3 a(a(a))")
    assert sol1(E("5")) == 0


def test_soln_examples():
    assert soln(2, E("a.a"), 3) == E("a.a + a(a)")
    assert soln(2, E("a"), 3) == 0
    u = E("a.b + 2 a(b).b")
    assert soln(1, u) == sol1(u)
    assert soln(5, E("a.a.a"), 4) == 0  # beyond the number of trees
    assert soln(5, E("a.a"), 4) == 0  # beyond the truncation order


def test_sol_stirling_examples():
    l1, l2 = LETTERS[:2]
    assert sol_stirling(1, [l1]) == l1
    assert sol_stirling(1, [l1, l2]) == (prelie_product(l1, l2) + prelie_product(l2, l1)) * Fraction(-1, 2)
    expected = commutative_product(l1, l2) + (prelie_product(l1, l2) + prelie_product(l2, l1)) / 2
    assert sol_stirling(2, [l1, l2]) == expected
    assert sol_stirling(2, [l1, l2]) == (star_product(l1, l2) + star_product(l2, l1)) / 2
    with pytest.raises(ValueError):
        sol_stirling(3, [l1, l2])


@pytest.mark.parametrize("n", range(1, 5))
def test_sol_stirling_matches_convolution(n):
    ls = LETTERS[:n]
    for i in range(1, n + 1):
        assert sol_stirling(i, ls) == soln(i, monomial(ls))
    assert sol1_closed(ls) == sol_stirling(1, ls)


def test_psi_examples():
    u = E("a(b) + 1/2 a.b")
    assert psi(1, u) == u
    assert psi(2, E("a")) == E("2 a")
    assert psi(2, E("a.a")) == E("4 a.a + 2 a(a)")
    assert psi(0, E("3 + a")) == E("3")


def test_psi_closed_examples():
    l1, l2 = LETTERS[:2]
    assert psi_closed(1, [l1, l2]) == commutative_product(l1, l2)
    assert psi_closed(1, [l1, l2]) == psi(1, monomial([l1, l2]))
    a = E("a")
    assert psi_closed(2, [a, a]) == E("4 a.a + 2 a(a)")
    assert psi_closed(0, [l1, l2]) == 0


@pytest.mark.parametrize("n", range(1, 5))
def test_psi_closed_matches_psi(n):
    ls = LETTERS[:n]
    for k in range(4):
        assert psi_closed(k, ls) == psi(k, monomial(ls))


@given(st.integers(0, 10**6))
def test_psi_spectral(seed):
    rng = random.Random(seed)
    u = random_element(rng, 4) + ONE * rng.randint(-2, 2)
    for k in range(4):
        rhs = ONE * u.counit() + sum((soln(i, u) * k**i for i in range(1, 5)), Element.zero())
        assert psi(k, u) == rhs


def test_psi_semigroup(rng):
    for _ in range(5):
        u = random_element(rng, 4)
        for k, m in itertools.product(range(1, 4), repeat=2):
            assert psi(k, psi(m, u)) == psi(k * m, u)


def test_completeness_and_primitivity():
    N = 4
    for d in range(0, N + 1):
        for f in enumerate_forests(d, "ab"):
            u = Element.of(f)
            comps = solomon_components(u, N)
            assert sum(comps, Element.zero()) == u - ONE * u.counit()
            assert comps[0].is_primitive()


def test_composition_orthogonality(rng):
    """sol_i ∘ sol_j = δ_ij sol_i."""
    for _ in range(8):
        u = random_element(rng, 4)
        for i, j in itertools.product(range(1, 5), repeat=2):
            expect = soln(i, u) if i == j else Element.zero()
            assert sol_composition(i, j, u) == expect


def test_convolution_of_idempotents(rng):
    """sol_i ⋆ sol_j = C(i+j, i) sol_{i+j}, because sol_n = sol_1^{⋆n}/n!."""
    from math import comb

    for _ in range(6):
        u = random_element(rng, 4)
        for i, j in itertools.product(range(1, 4), repeat=2):
            assert sol_convolution(i, j, u) == soln(i + j, u) * comb(i + j, i)


def test_pbw_map_examples():
    assert pbw_map(E("a")) == E("a")
    assert pbw_map(E("a.a")) == E("a.a + a(a)")
    assert pbw_map(E("a.a.a")) == E("a.a.a + 3 a.a(a) + a(a,a) + a(a(a))")
    l1, l2 = LETTERS[:2]
    assert pbw_map(monomial([l1, l2])) == (star_product(l1, l2) + star_product(l2, l1)) / 2


def test_pbw_inverse_examples():
    assert pbw_inverse(E("a")) == E("a")
    assert pbw_inverse(E("a.a + a(a)")) == E("a.a")
    assert pbw_inverse(ONE) == ONE


@given(st.integers(0, 10**6))
def test_pbw_bijective(seed):
    rng = random.Random(seed)
    u = random_element(rng, 5) + ONE
    assert pbw_inverse(pbw_map(u)) == u
    assert pbw_map(pbw_inverse(u)) == u


def test_pbw_inverse_grades_idempotent_images(rng):
    for _ in range(10):
        u = random_element(rng, 5)
        for i in range(1, 6):
            back = pbw_inverse(soln(i, u))
            assert not back or back.lengths() == {i}


def test_polarization():
    """The multilinear part of sol_i(exp(l_1+...+l_n)) is sol_i(l_1...l_n)."""
    for n in range(1, 4):
        ls = LETTERS[:n]
        s = sum(ls, Element.zero())
        ex = sym_exp(s, n)
        want = {Tree(c).label for c in "abcde"[:n]}
        for i in range(1, n + 1):
            full = soln(i, ex, n)
            multi = Element({f: c for f, c in full.terms.items()
                             if sorted(f.labels().elements()) == sorted(want)})
            assert multi == soln(i, monomial(ls))
