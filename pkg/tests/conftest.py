import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import settings

from prelie_pbw.prelie import Element
from prelie_pbw.trees import Forest, Tree, enumerate_forests, enumerate_trees

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


# -- independent oracles on nested tuples (label, (children...)) ------------

def to_nested(t: Tree):
    return (t.label, tuple(to_nested(c) for c in t.children))


def from_nested(n) -> Tree:
    return Tree(n[0], [from_nested(c) for c in n[1]])


def vertex_paths(n, prefix=()):
    yield prefix
    for i, c in enumerate(n[1]):
        yield from vertex_paths(c, prefix + (i,))


def attach_at(n, path, extra):
    """Planar copy of n with the nested trees in ``extra`` appended below ``path``."""
    if not path:
        return (n[0], n[1] + tuple(extra))
    kids = list(n[1])
    kids[path[0]] = attach_at(kids[path[0]], path[1:], extra)
    return (n[0], tuple(kids))


def naive_action(s: Tree, branches) -> dict:
    """s ↶ {t_1..t_m} by enumerating every map from branches to vertices."""
    ns = to_nested(s)
    paths = list(vertex_paths(ns))
    out: dict = {}
    for g in itertools.product(range(len(paths)), repeat=len(branches)):
        # attach all branches; process paths from deepest first is unnecessary
        # because attaching appends children and never renumbers existing ones
        cur = ns
        for idx, b in zip(g, branches):
            cur = attach_at(cur, paths[idx], [to_nested(b)])
        t = from_nested(cur)
        out[t] = out.get(t, 0) + 1
    return out


def naive_star(left: Forest, right: Forest) -> Element:
    """Forest * forest by enumerating all maps {1..m} -> {0..l}."""
    a, b = left.trees, right.trees
    out: dict = {}
    for f in itertools.product(range(len(a) + 1), repeat=len(b)):
        blocks = [[b[j] for j in range(len(b)) if f[j] == i] for i in range(len(a) + 1)]
        partial = {tuple(blocks[0]): 1}
        for i, ai in enumerate(a, start=1):
            acted = naive_action(ai, blocks[i])
            nxt = {}
            for pre, w in partial.items():
                for t, k in acted.items():
                    nxt[pre + (t,)] = nxt.get(pre + (t,), 0) + w * k
            partial = nxt
        for trees, w in partial.items():
            g = Forest(trees)
            out[g] = out.get(g, 0) + w
    return Element(out)


def naive_star_elements(u: Element, v: Element) -> Element:
    out = Element.zero()
    for f, c in u.terms.items():
        for g, d in v.terms.items():
            out = out + naive_star(f, g) * (c * d)
    return out


# -- random data ----------------------------------------------------------

def random_element(rng, max_degree, alphabet=("a", "b"), max_terms=3, trees_only=False, min_degree=1):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(min_degree, max_degree)
        pool = [Forest([t]) for t in enumerate_trees(d, alphabet)] if trees_only else enumerate_forests(d, alphabet)
        f = rng.choice(pool)
        terms[f] = terms.get(f, 0) + Fraction(rng.choice([-1, 1]) * rng.randint(1, 6), rng.randint(1, 5))
    e = Element(terms)
    return e if e else random_element(rng, max_degree, alphabet, max_terms, trees_only, min_degree)


@pytest.fixture
def rng():
    return random.Random(20261016)


def E(text):
    return Element.of(text)


# -- acceptance reporting -------------------------------------------------

ACCEPTANCE_LOG: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_LOG:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
