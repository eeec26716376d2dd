import math
from fractions import Fraction

import pytest

from prelie_pbw.combinat import bernoulli
from prelie_pbw.hopf import is_primitive_element, star_exp, sym_exp
from prelie_pbw.magnus import bernoulli_series, magnus_fixed_point, magnus_residual, magnus_via_log
from prelie_pbw.prelie import Element, PreLieCarrier, evaluate_element
from prelie_pbw.solomon import sol1
from prelie_pbw.trees import Tree

from conftest import E


def corolla(n):
    return Tree("a", [Tree("a")] * (n - 1))


def ladder(n):
    t = Tree("a")
    for _ in range(n - 1):
        t = Tree("a", [t])
    return t


def test_bernoulli_series_examples():
    assert bernoulli_series(E("a"), 2) == E("1 - 1/2 a + 1/12 a.a + 1/12 a(a)")
    assert bernoulli_series(Element.zero(), 4) == Element.one()
    assert bernoulli_series(E("a - 1/2 a(a)"), 5).counit() == 1
    with pytest.raises(ValueError):
        bernoulli_series(E("a.a"), 3)


def test_fixed_point_examples():
    assert magnus_fixed_point(1).omega == E("a")
    assert magnus_fixed_point(2).omega == E("a - 1/2 a(a)")
    assert magnus_fixed_point(3).omega == E("a - 1/2 a(a) + 1/12 a(a,a) + 1/3 a(a(a))")


def test_log_examples():
    assert magnus_via_log(2).omega == E("a - 1/2 a(a)")
    assert magnus_via_log(3).omega == magnus_fixed_point(3).omega
    assert magnus_via_log(5).omega.homogeneous(1) == E("a")
    assert magnus_via_log(3).route == "log_star" and magnus_fixed_point(3).route == "fixed_point"


@pytest.mark.parametrize("N", range(1, 7))
def test_routes_agree(N):
    fp = magnus_fixed_point(N)
    assert fp.omega == magnus_via_log(N).omega
    assert fp.iterations <= N + 1


@pytest.mark.parametrize("N", range(1, 7))
def test_defining_equation(N):
    om = magnus_fixed_point(N).omega
    assert magnus_residual(om, N) == 0
    assert is_primitive_element(om)
    assert star_exp(om, N) == sym_exp(E("a"), N)


def test_truncations_nest():
    big = magnus_via_log(6).omega
    for N in range(1, 6):
        assert big.truncate(N) == magnus_via_log(N).omega


def test_corolla_and_ladder_coefficients():
    """Corollas carry B_{n-1}/(n-1)!, ladders (-1)^(n-1)/n: the two one-dimensional
    sub-cases where only the first or only the nested terms contribute."""
    om = magnus_via_log(6).omega
    for n in range(2, 7):
        assert om.coeff(corolla(n)) == bernoulli(n - 1) / math.factorial(n - 1)
    for n in range(2, 7):
        assert om.coeff(ladder(n)) == Fraction((-1) ** (n - 1), n)


def test_degree_four_coefficients():
    om = magnus_via_log(4).omega.homogeneous(4)
    assert om == E("-1/12 a(a,a(a)) - 1/12 a(a(a,a)) - 1/4 a(a(a(a)))")


def test_abelianization():
    """In the zero-product preLie algebra only the generator survives."""
    trivial = PreLieCarrier(curly=lambda x, y: Fraction(0), zero=Fraction(0))
    for N in range(1, 7):
        assert evaluate_element(magnus_via_log(N).omega, {"a": Fraction(1)}, trivial) == 1


def test_sol1_of_exp_is_log():
    from prelie_pbw.hopf import star_log

    g = sym_exp(E("a"), 5)
    assert sol1(g, 5) == star_log(g, 5)
