"""Invariant suites run by ``prelie-pbw verify``.

Each suite returns a list of ``(check name, passed, detail)`` triples.  The
checks are exhaustive over small bases and seeded-random beyond that, so
every run is deterministic.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .hopf import (
    commutative_product,
    coproduct,
    is_grouplike,
    is_primitive_element,
    iterated_coproduct,
    star_exp,
    star_log,
    star_product,
    sym_exp,
    tensor,
    tensor_star,
)
from .magnus import magnus_fixed_point, magnus_residual, magnus_via_log
from .prelie import Element, act, extended_action_closed, lie_bracket, prelie_product
from .solomon import pbw_inverse, pbw_map, sol1, sol_composition, soln
from .trees import Forest, Tree, enumerate_forests, enumerate_trees

Check = tuple[str, bool, str]


def random_element(rng: random.Random, max_degree: int, alphabet: Sequence[str],
                   max_terms: int = 3, min_degree: int = 1, trees_only: bool = False) -> Element:
    """Random rational combination; the degree of each term is uniform in range."""
    terms: dict[Forest, Fraction] = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(min_degree, max_degree)
        pool = [Forest([t]) for t in enumerate_trees(d, alphabet)] if trees_only \
            else enumerate_forests(d, alphabet)
        f = rng.choice(pool)
        terms[f] = terms.get(f, 0) + Fraction(rng.choice([-1, 1]) * rng.randint(1, 6), rng.randint(1, 5))
    out = Element(terms)
    return out if out else random_element(rng, max_degree, alphabet, max_terms, min_degree, trees_only)


def _trees_up_to(n: int, alphabet) -> list[Tree]:
    return [t for k in range(1, n + 1) for t in enumerate_trees(k, alphabet)]


def _check(name: str, ok: bool, detail: str = "") -> Check:
    return (name, bool(ok), detail)


def prelie_suite(max_degree: int = 5, alphabet=("a",), seed: int = 0, samples: int = 50) -> list[Check]:
    rng = random.Random(seed)
    trees = _trees_up_to(max_degree, alphabet)

    def assoc(x, y, z):
        return prelie_product(prelie_product(x, y), z) - prelie_product(x, prelie_product(y, z))

    bad = 0
    count = 0
    for x, y, z in itertools.product(trees, repeat=3):
        if x.size + y.size + z.size > max_degree:
            continue
        count += 1
        if assoc(x, y, z) != assoc(x, z, y):
            bad += 1
    out = [_check("prelie identity (all tree triples)", bad == 0, f"{count} triples")]

    bad = 0
    for _ in range(samples):
        x, y, z = (random_element(rng, max(1, max_degree - 2), alphabet, trees_only=True) for _ in range(3))
        if assoc(x, y, z) != assoc(x, z, y):
            bad += 1
    out.append(_check("prelie identity (random combinations)", bad == 0, f"{samples} samples"))

    bad = 0
    small = _trees_up_to(min(3, max_degree), alphabet)
    for a, b, c in itertools.product(small, repeat=3):
        lhs = prelie_product(prelie_product(c, b), a) - prelie_product(prelie_product(c, a), b)
        if lhs != prelie_product(c, lie_bracket(b, a)):
            bad += 1
    out.append(_check("module property", bad == 0))

    bad = 0
    for _ in range(samples):
        x, y, z = (random_element(rng, 2, alphabet, trees_only=True) for _ in range(3))
        jac = (lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x))
               + lie_bracket(z, lie_bracket(x, y)))
        if jac:
            bad += 1
    out.append(_check("Jacobi identity", bad == 0))

    from .prelie import FREE, extended_action_recursive

    bad = 0
    for s in _trees_up_to(max_degree - 1, alphabet):
        for k in range(0, max_degree - s.size + 1):
            for f in enumerate_forests(k, alphabet):
                closed = extended_action_closed(s, f)
                rec = extended_action_recursive(Element.of(s), [Element.of(t) for t in f.trees], FREE)
                if closed != rec:
                    bad += 1
    out.append(_check("recursive action = closed action", bad == 0))
    return out


def hopf_suite(max_degree: int = 4, alphabet=("a", "b"), seed: int = 0, samples: int = 30) -> list[Check]:
    rng = random.Random(seed)
    rnd = lambda: random_element(rng, max_degree, alphabet)  # noqa: E731
    one = Element.one()
    bad = {k: 0 for k in ("assoc", "coassoc", "cocomm", "counit", "compat", "filtration", "unit")}
    for _ in range(samples):
        u, v, w = rnd(), rnd(), rnd()
        if star_product(star_product(u, v), w) != star_product(u, star_product(v, w)):
            bad["assoc"] += 1
        if star_product(u, one) != u or star_product(one, u) != u:
            bad["unit"] += 1
        d3 = iterated_coproduct(u, 3)
        left = _coproduct_slot(coproduct(u), 0)
        right = _coproduct_slot(coproduct(u), 1)
        if not (left == d3 == right):
            bad["coassoc"] += 1
        if coproduct(u) != coproduct(u).swap():
            bad["cocomm"] += 1
        if not _counit_law(u):
            bad["counit"] += 1
        if coproduct(star_product(u, v)) != tensor_star(coproduct(u), coproduct(v)):
            bad["compat"] += 1
        uh, vh = _length_homogeneous(u, rng), _length_homogeneous(v, rng)
        prod = star_product(uh, vh)
        top = max(uh.lengths()) + max(vh.lengths())
        if max(prod.lengths()) > top or prod.length_part(top) != commutative_product(uh, vh):
            bad["filtration"] += 1
    out = [_check(f"star {k}" if k in ("assoc", "unit") else k, n == 0, f"{samples} samples")
           for k, n in bad.items()]
    primitive_ok = all(is_primitive_element(Element.of(t)) for t in _trees_up_to(max_degree, alphabet))
    out.append(_check("trees are primitive", primitive_ok))
    g = sym_exp(Element.of(Tree(alphabet[0])), max_degree)
    out.append(_check("exp(a) is group-like", is_grouplike(g, max_degree)))
    lg = star_log(g, max_degree)
    out.append(_check("log* of group-like is primitive", is_primitive_element(lg)))
    out.append(_check("exp* log* = id", star_exp(lg, max_degree) == g))
    return out


def _coproduct_slot(t, slot: int):
    """(Δ ⊗ id)Δ for slot 0, (id ⊗ Δ)Δ for slot 1."""
    from .hopf import TensorElement

    out: dict = {}
    for (f, g), c in t.terms.items():
        target = f if slot == 0 else g
        for (x, y), d in coproduct(Element.of(target)).terms.items():
            key = (x, y, g) if slot == 0 else (f, x, y)
            out[key] = out.get(key, 0) + c * d
    return TensorElement(out, 3)


def _counit_law(u: Element) -> bool:
    left = Element.zero()
    right = Element.zero()
    for (f, g), c in coproduct(u).terms.items():
        if not f.trees:
            left = left + Element.of(g) * c
        if not g.trees:
            right = right + Element.of(f) * c
    return left == u == right


def _length_homogeneous(u: Element, rng: random.Random) -> Element:
    k = rng.choice(sorted(u.lengths()))
    return u.length_part(k)


def idempotent_suite(max_degree: int = 4, alphabet=("a", "b"), seed: int = 0, samples: int = 10) -> list[Check]:
    rng = random.Random(seed)
    N = max_degree
    basis = [f for d in range(1, N + 1) for f in enumerate_forests(d, alphabet)]
    inputs = [Element.of(f) for f in basis]
    inputs += [random_element(rng, N, alphabet) for _ in range(samples)]
    bad = {k: 0 for k in ("completeness", "orthogonality", "primitivity", "pbw grading", "pbw bijectivity")}
    for u in inputs:
        comps = [soln(i, u, N) for i in range(1, N + 1)]
        total = Element.zero()
        for c in comps:
            total = total + c
        if total != u - Element.one() * u.counit():
            bad["completeness"] += 1
        if not sol1(u, N).is_primitive():
            bad["primitivity"] += 1
        for i, c in enumerate(comps, start=1):
            back = pbw_inverse(c)
            if back and back.lengths() != {i}:
                bad["pbw grading"] += 1
        if pbw_inverse(pbw_map(u)) != u or pbw_map(pbw_inverse(u)) != u:
            bad["pbw bijectivity"] += 1
    for u in inputs[: len(inputs) // 4 + samples]:
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                expect = soln(i, u, N) if i == j else Element.zero()
                if sol_composition(i, j, u, N) != expect:
                    bad["orthogonality"] += 1
    return [_check(k if k != "orthogonality" else "orthogonality (composition)", n == 0) for k, n in bad.items()]


def magnus_suite(max_degree: int = 5, **_) -> list[Check]:
    N = max_degree
    fp = magnus_fixed_point(N).omega
    lg = magnus_via_log(N).omega
    a = Element.of(Tree("a"))
    out = [
        _check("fixed point = log route", fp == lg, f"N={N}"),
        _check("defining equation residual", not magnus_residual(fp, N)),
        _check("omega is primitive", is_primitive_element(fp)),
        _check("exp*(omega) = exp(a)", star_exp(fp, N) == sym_exp(a, N)),
    ]
    if N >= 3:
        ok = (fp.coeff("a(a)") == Fraction(-1, 2) and fp.coeff("a(a,a)") == Fraction(1, 12)
              and fp.coeff("a(a(a))") == Fraction(1, 3))
        out.append(_check("low-order coefficients", ok))
    return out


def ode_suite(max_degree: int = 4, **_) -> list[Check]:
    from .odemagnus import AIRY, PolyMatrix, error_report, magnus_matrix, rk_reference

    N = max(2, min(max_degree, 6))
    rep = error_report(AIRY, N, [0.2, 0.1], 1e-3)
    comm = PolyMatrix.from_entries([[[1, 2], [0, 1]], [[0, 1], [1, 2]]])
    dev_comm = max(float(np.max(np.abs(magnus_matrix(comm, N, t) - rk_reference(comm, t, 1e-3))))
                   for t in (0.25, 0.5, 1.0))
    low = error_report(AIRY, 2, [0.2], 1e-3).deviations[0]
    return [
        _check("commuting family exact", dev_comm < 1e-9, f"{dev_comm:.2e}"),
        _check("t = 0 gives identity", np.allclose(magnus_matrix(AIRY, N, 0), np.eye(2))),
        _check("deviation decreases with order", N == 2 or rep.deviations[0] < low),
        _check("Airy deviation small at t=0.1", rep.deviations[1] < 1e-6, f"{rep.deviations[1]:.2e}"),
    ]


SUITES: dict[str, Callable[..., list[Check]]] = {
    "prelie": prelie_suite,
    "hopf": hopf_suite,
    "idempotents": idempotent_suite,
    "magnus": magnus_suite,
    "ode": ode_suite,
}


def run_suite(name: str, max_degree: int, alphabet=("a",)) -> list[Check]:
    if name == "all":
        out = []
        for key in SUITES:
            out += [(f"{key}: {n}", ok, d) for n, ok, d in run_suite(key, max_degree, alphabet)]
        return out
    fn = SUITES[name]
    if name in ("hopf", "idempotents") and len(alphabet) < 2:
        alphabet = tuple(alphabet) + ("b",) if "b" not in alphabet else tuple(alphabet)
    return fn(max_degree=max_degree, alphabet=tuple(alphabet))
