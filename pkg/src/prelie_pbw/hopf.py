"""Hopf structure on S(L): commutative product, unshuffle coproduct, and the
Guin-Oudom / Grossman-Larson product ``*`` with its series operations."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .combinat import compositions, multinomial
from .prelie import Element, as_element, format_coeff
from .trees import EMPTY_FOREST, Forest, Tree, extend_action, parse_forest, parse_tree, render_forest


@dataclass(frozen=True)
class TruncationOrder:
    """Maximum retained vertex degree for series computations."""

    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("truncation order must be >= 1")


def _order(trunc) -> int | None:
    if trunc is None:
        return None
    if isinstance(trunc, TruncationOrder):
        return trunc.N
    return int(trunc)


def _accumulate(acc: dict, key, value):
    v = acc.get(key, 0) + value
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


# tensors ------------------------------------------------------------------

class TensorElement:
    """Linear combination of n-tuples of forests (fixed arity)."""

    __slots__ = ("terms", "arity")

    def __init__(self, terms=None, arity: int | None = None):
        clean: dict[tuple[Forest, ...], Fraction] = {}
        for k, c in (terms or {}).items():
            c = Fraction(c)
            if not c:
                continue
            if arity is None:
                arity = len(k)
            elif len(k) != arity:
                raise ValueError("mixed arities in one TensorElement")
            clean[tuple(k)] = clean.get(tuple(k), 0) + c
        self.terms = {k: c for k, c in clean.items() if c}
        self.arity = arity

    def __eq__(self, other):
        if isinstance(other, TensorElement):
            return self.terms == other.terms
        return NotImplemented

    __hash__ = None

    def __add__(self, other: TensorElement) -> TensorElement:
        out = dict(self.terms)
        for k, c in other.terms.items():
            _accumulate(out, k, c)
        return TensorElement(out, self.arity or other.arity)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, s):
        return TensorElement({k: c * Fraction(s) for k, c in self.terms.items()}, self.arity)

    __rmul__ = __mul__

    def truncate(self, n: int | None) -> TensorElement:
        if n is None:
            return self
        return TensorElement(
            {k: c for k, c in self.terms.items() if sum(f.degree for f in k) <= n}, self.arity
        )

    def mass(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kc: tuple(f.key for f in kc[0]))

    def swap(self) -> TensorElement:
        """Reverse slot order (the flip, for arity 2)."""
        return TensorElement({k[::-1]: c for k, c in self.terms.items()}, self.arity)

    def map_slots(self, fns) -> TensorElement:
        """Apply one forest -> Element map per slot and expand."""
        out: dict = {}
        for key, c in self.terms.items():
            images = [fn(Element.of(f)) for fn, f in zip(fns, key)]
            for combo in itertools.product(*(img.terms.items() for img in images)):
                w = c
                for _, d in combo:
                    w *= d
                _accumulate(out, tuple(f for f, _ in combo), w)
        return TensorElement(out, self.arity)

    def __str__(self):
        return format_tensor(self)

    def __repr__(self):
        return f"TensorElement({format_tensor(self)!r})"


def tensor(*elements) -> TensorElement:
    """Tensor product of elements."""
    elements = [as_element(e) for e in elements]
    out: dict = {}
    for combo in itertools.product(*(e.terms.items() for e in elements)):
        w = Fraction(1)
        for _, d in combo:
            w *= d
        _accumulate(out, tuple(f for f, _ in combo), w)
    return TensorElement(out, len(elements))


def format_tensor(x: TensorElement) -> str:
    items = x.sorted_terms()
    if not items:
        return "0"
    parts = []
    for i, (key, c) in enumerate(items):
        body = " (x) ".join(render_forest(f) for f in key)
        mag = abs(c)
        text = body if mag == 1 else f"{format_coeff(mag)} {body}"
        if i == 0:
            parts.append(("-" if c < 0 else "") + text)
        else:
            parts.append(("- " if c < 0 else "+ ") + text)
    return " ".join(parts)


def tensor_to_json(x: TensorElement) -> dict:
    return {
        "arity": x.arity,
        "terms": [
            {"coeff": format_coeff(c), "slots": [[str(t) for t in f.trees] for f in key]}
            for key, c in x.sorted_terms()
        ],
    }


def tensor_from_json(data) -> TensorElement:
    out: dict = {}
    for term in data["terms"]:
        key = tuple(Forest([parse_tree(s) for s in slot]) for slot in term["slots"])
        _accumulate(out, key, Fraction(term["coeff"]))
    return TensorElement(out, data.get("arity"))


def parse_tensor(text: str) -> TensorElement:
    """Parse ``"a (x) 1 + 2 a.a (x) a"``-style text."""
    from .prelie import parse_element

    if text.strip() == "0":
        return TensorElement({})
    out: dict = {}
    terms, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and text[start:i].strip():
            terms.append(text[start:i])
            start = i
    terms.append(text[start:])
    arity = None
    for term in terms:
        head, *rest = term.split("(x)")
        # the first slot carries the sign and coefficient
        (f0, c), = parse_element(head).terms.items()
        key = (f0,) + tuple(parse_forest(s) for s in rest)
        if arity is not None and len(key) != arity:
            raise ValueError("mixed arities in tensor text")
        arity = len(key)
        _accumulate(out, key, c)
    return TensorElement(out, arity)


# commutative product and coproduct ----------------------------------------

def commutative_product(u, v) -> Element:
    """Product of the polynomial algebra S(L): multiset union of forests."""
    u, v = as_element(u), as_element(v)
    out: dict = {}
    for f, c in u.terms.items():
        for g, d in v.terms.items():
            _accumulate(out, f.union(g), c * d)
    return Element._raw(out)


def commutative_power(x, n: int, trunc=None) -> Element:
    N = _order(trunc)
    out = Element.one()
    for _ in range(n):
        out = commutative_product(out, x).truncate(N)
    return out


@lru_cache(maxsize=100_000)
def _split_forest(f: Forest, n: int) -> tuple[tuple[tuple[Forest, ...], int], ...]:
    """Iterated coproduct of one forest into n slots, with integer weights."""
    if n == 1:
        return (((f,), 1),)
    groups = f.multiplicities()
    per_group = [list(compositions(m, n)) for _, m in groups]
    out: dict = {}
    for choice in itertools.product(*per_group):
        slots: list[list[Tree]] = [[] for _ in range(n)]
        weight = 1
        for (t, _), comp in zip(groups, choice):
            weight *= multinomial(comp)
            for s, k in enumerate(comp):
                slots[s].extend([t] * k)
        key = tuple(Forest(s) for s in slots)
        out[key] = out.get(key, 0) + weight
    return tuple(out.items())


def iterated_coproduct(u, n: int) -> TensorElement:
    """Δ^[n]; n = 1 is the identity, n = 2 the coproduct."""
    if n < 1:
        raise ValueError("iterated coproduct needs n >= 1")
    u = as_element(u)
    out: dict = {}
    for f, c in u.terms.items():
        for key, w in _split_forest(f, n):
            _accumulate(out, key, c * w)
    return TensorElement(out, n)


def coproduct(u) -> TensorElement:
    return iterated_coproduct(u, 2)


def counit(u) -> Fraction:
    return as_element(u).counit()


# the * product ------------------------------------------------------------

@lru_cache(maxsize=200_000)
def star_forests(left: Forest, right: Forest) -> tuple[tuple[Forest, int], ...]:
    """(a_1...a_l) * (b_1...b_m) as integer counts of forests.

    The defining sum runs over maps f: {1..m} -> {0..l}, with B_0 multiplied in
    commutatively and B_i acting on a_i.  It is evaluated by peeling off a_1:
    choose the sub-multiset B_1 of the b's acting on a_1 (binomial weights for
    repeated b's), then recurse on (a_2...a_l) with the remaining b's.
    """
    if not right.trees:
        return ((left, 1),)
    if not left.trees:
        return ((right, 1),)
    first = left.trees[0]
    rest = Forest(left.trees[1:])
    groups = right.multiplicities()
    out: dict[Forest, int] = {}
    for take in itertools.product(*(range(m + 1) for _, m in groups)):
        weight = 1
        taken: list[Tree] = []
        kept: list[Tree] = []
        for (t, m), k in zip(groups, take):
            weight *= math.comb(m, k)
            taken.extend([t] * k)
            kept.extend([t] * (m - k))
        acted = extend_action(first, Forest(taken))
        for g, k2 in star_forests(rest, Forest(kept)):
            for t, k1 in acted.items():
                h = Forest(g.trees + (t,))
                out[h] = out.get(h, 0) + weight * k1 * k2
    return tuple(out.items())


def star_product(u, v, trunc=None) -> Element:
    """The associative product of S*(L), truncated at vertex degree N.

    ``*`` preserves vertex degree exactly, so truncation only prunes pairs.
    """
    N = _order(trunc)
    u, v = as_element(u), as_element(v)
    out: dict = {}
    for f, c in u.terms.items():
        for g, d in v.terms.items():
            if N is not None and f.degree + g.degree > N:
                continue
            w = c * d
            for h, k in star_forests(f, g):
                out[h] = out.get(h, 0) + w * k
    return Element._raw({h: c for h, c in out.items() if c}, N)


def star_many(factors: Iterable, trunc=None) -> Element:
    out = Element.one()
    for x in factors:
        out = star_product(out, x, trunc)
    return out


def star_power(x, n: int, trunc=None) -> Element:
    return star_many([x] * n, trunc) if n else Element.one()


def tensor_star(s: TensorElement, t: TensorElement, trunc=None) -> TensorElement:
    """Slotwise * product of two tensors of equal arity."""
    if s.arity != t.arity and s.terms and t.terms:
        raise ValueError("arity mismatch")
    N = _order(trunc)
    out: dict = {}
    for k1, c1 in s.terms.items():
        for k2, c2 in t.terms.items():
            if N is not None and sum(f.degree for f in k1 + k2) > N:
                continue
            slots = [star_forests(f, g) for f, g in zip(k1, k2)]
            for combo in itertools.product(*slots):
                w = c1 * c2
                for _, k in combo:
                    w *= k
                _accumulate(out, tuple(h for h, _ in combo), w)
    return TensorElement(out, s.arity or t.arity)


# series -------------------------------------------------------------------

def _require_counit(x: Element, value: int, name: str):
    if x.counit() != value:
        raise ValueError(f"{name}: counit must be {value}, got {format_coeff(x.counit())}")


def sym_exp(x, trunc) -> Element:
    """Σ x^n / n! with commutative powers."""
    N = _order(trunc)
    x = as_element(x)
    _require_counit(x, 0, "sym_exp")
    out, power = Element.one(), Element.one()
    for n in range(1, N + 1):
        power = commutative_product(power, x).truncate(N)
        if not power:
            break
        out = out + power / math.factorial(n)
    out.order = N
    return out


def star_log(u, trunc) -> Element:
    """Σ (-1)^(n-1) (u - 1)^{*n} / n, truncated at degree N."""
    N = _order(trunc)
    u = as_element(u).truncate(N)
    _require_counit(u, 1, "star_log")
    y = u - Element.one()
    out, power = Element.zero(), Element.one()
    for n in range(1, N + 1):
        power = star_product(power, y, N)
        if not power:
            break
        out = out + power * Fraction((-1) ** (n - 1), n)
    out.order = N
    return out


def star_exp(x, trunc) -> Element:
    """Σ x^{*n} / n!, truncated at degree N."""
    N = _order(trunc)
    x = as_element(x).truncate(N)
    _require_counit(x, 0, "star_exp")
    out, power = Element.one(), Element.one()
    for n in range(1, N + 1):
        power = star_product(power, x, N)
        if not power:
            break
        out = out + power / math.factorial(n)
    out.order = N
    return out


def is_grouplike(u, trunc) -> bool:
    N = _order(trunc)
    u = as_element(u)
    return coproduct(u).truncate(N) == tensor(u, u).truncate(N)


def is_primitive_element(x) -> bool:
    x = as_element(x)
    return coproduct(x) == tensor(x, Element.one()) + tensor(Element.one(), x)


# convolution powers of J = id - unit∘counit --------------------------------

def multiply_slots(t: TensorElement, trunc=None) -> Element:
    """Iterated * product of the slots of each tensor term."""
    N = _order(trunc)
    out = Element.zero()
    for key, c in t.terms.items():
        if N is not None and sum(f.degree for f in key) > N:
            continue
        prod = Element.one()
        for f in key:
            prod = star_product(prod, Element.of(f), N)
        out = out + prod * c
    out.order = N
    return out


def commute_slots(t: TensorElement) -> Element:
    """Iterated commutative product of the slots."""
    out: dict = {}
    for key, c in t.terms.items():
        f = EMPTY_FOREST
        for g in key:
            f = f.union(g)
        _accumulate(out, f, c)
    return Element._raw(out)


@lru_cache(maxsize=50_000)
def _conv_power_forest(n: int, f: Forest) -> Element:
    if n == 0:
        return Element.one() if not f.trees else Element.zero()
    if n > len(f):
        return Element.zero()
    out = Element.zero()
    for key, w in _split_forest(f, n):
        if any(not s.trees for s in key):
            continue
        prod = Element.one()
        for s in key:
            prod = star_product(prod, Element.of(s))
        out = out + prod * w
    return out


def conv_power_apply(n: int, u, trunc=None) -> Element:
    """J^{⋆n}(u) where J = id - unit∘counit."""
    if n < 0:
        raise ValueError("convolution power must be nonnegative")
    N = _order(trunc)
    u = as_element(u).truncate(N)
    out = u.map_forests(lambda f: _conv_power_forest(n, f))
    out.order = N
    return out
