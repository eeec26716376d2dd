"""Linear combinations of forests and the free preLie structure on trees."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Generic, Iterable, Mapping, Sequence, TypeVar

from .trees import (
    EMPTY_FOREST,
    Forest,
    Scanner,
    Tree,
    TreeSyntaxError,
    _parse_forest,
    extend_action,
    graft,
    parse_forest,
    render_forest,
)


class Element:
    """Finite linear combination of forests with exact rational coefficients.

    The same type holds elements of L (single-tree forests only), of the
    polynomial algebra S(L) and of the enveloping algebra S*(L); which product
    applies is up to the caller.  ``order`` records the truncation order of a
    series result and is ignored by equality.
    """

    __slots__ = ("terms", "order")

    def __init__(self, terms: Mapping[Forest, Any] | None = None, order: int | None = None):
        clean: dict[Forest, Fraction] = {}
        if terms:
            for f, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[f] = c
        self.terms = clean
        self.order = order

    @classmethod
    def _raw(cls, terms: dict[Forest, Fraction], order=None) -> Element:
        # caller guarantees nonzero Fraction coefficients
        e = cls.__new__(cls)
        e.terms = terms
        e.order = order
        return e

    @classmethod
    def zero(cls) -> Element:
        return cls._raw({})

    @classmethod
    def one(cls) -> Element:
        return cls._raw({EMPTY_FOREST: Fraction(1)})

    @classmethod
    def of(cls, x, coeff=1) -> Element:
        """Element from a Tree, Forest, or text."""
        if isinstance(x, Element):
            return x * coeff
        if isinstance(x, Tree):
            x = Forest([x])
        elif isinstance(x, str):
            return parse_element(x) * coeff
        return cls({x: coeff})

    @classmethod
    def from_counts(cls, counts: Mapping, scale=1) -> Element:
        """From an integer-valued map whose keys are trees or forests."""
        scale = Fraction(scale)
        out: dict[Forest, Fraction] = {}
        for k, c in counts.items():
            f = Forest([k]) if isinstance(k, Tree) else k
            v = out.get(f, 0) + c * scale
            if v:
                out[f] = v
            else:
                out.pop(f, None)
        return cls._raw(out)

    # linear structure -----------------------------------------------------

    def __add__(self, other: Element) -> Element:
        if not isinstance(other, Element):
            if other == 0:
                return self
            return NotImplemented
        out = dict(self.terms)
        for f, c in other.terms.items():
            v = out.get(f, 0) + c
            if v:
                out[f] = v
            else:
                del out[f]
        return Element._raw(out, _min_order(self.order, other.order))

    __radd__ = __add__

    def __neg__(self) -> Element:
        return Element._raw({f: -c for f, c in self.terms.items()}, self.order)

    def __sub__(self, other: Element) -> Element:
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar) -> Element:
        if isinstance(scalar, Element):
            return NotImplemented
        s = Fraction(scalar)
        if not s:
            return Element.zero()
        return Element._raw({f: c * s for f, c in self.terms.items()}, self.order)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> Element:
        return self * (1 / Fraction(scalar))

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None  # mutable-looking container; compare by value only

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.sorted_terms())

    def coeff(self, f) -> Fraction:
        if isinstance(f, Tree):
            f = Forest([f])
        elif isinstance(f, str):
            f = parse_forest(f)
        return self.terms.get(f, Fraction(0))

    def sorted_terms(self) -> list[tuple[Forest, Fraction]]:
        return sorted(self.terms.items(), key=lambda fc: fc[0].key)

    # grading ----------------------------------------------------------------

    def degree(self) -> int:
        """Maximum vertex count; -1 for zero."""
        return max((f.degree for f in self.terms), default=-1)

    def truncate(self, n: int | None) -> Element:
        if n is None:
            return self
        return Element._raw({f: c for f, c in self.terms.items() if f.degree <= n}, n)

    def homogeneous(self, n: int) -> Element:
        """Vertex-degree n part."""
        return Element._raw({f: c for f, c in self.terms.items() if f.degree == n})

    def length_part(self, k: int) -> Element:
        """Part made of forests with exactly k trees."""
        return Element._raw({f: c for f, c in self.terms.items() if len(f) == k})

    def lengths(self) -> set[int]:
        return {len(f) for f in self.terms}

    def counit(self) -> Fraction:
        return self.terms.get(EMPTY_FOREST, Fraction(0))

    def is_primitive(self) -> bool:
        """True iff every forest is a single tree (i.e. the element lies in L)."""
        return all(len(f) == 1 for f in self.terms)

    def map_forests(self, fn: Callable[[Forest], Element]) -> Element:
        """Linear extension of a forest -> Element map."""
        acc: dict[Forest, Fraction] = {}
        for f, c in self.terms.items():
            for g, d in fn(f).terms.items():
                v = acc.get(g, 0) + c * d
                if v:
                    acc[g] = v
                else:
                    del acc[g]
        return Element._raw(acc)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({format_element(self)!r})"


def _min_order(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def as_element(x) -> Element:
    if isinstance(x, Element):
        return x
    return Element.of(x)


# the free preLie product --------------------------------------------------

def _require_lie(x: Element, name: str):
    for f in x.terms:
        if len(f) != 1:
            raise ValueError(f"{name}: expected an element of L, got forest {render_forest(f)!r}")


def prelie_product(x, y) -> Element:
    """Bilinear extension of grafting: x ↶ y for x, y in L."""
    x, y = as_element(x), as_element(y)
    _require_lie(x, "prelie_product")
    _require_lie(y, "prelie_product")
    acc: dict[Forest, Fraction] = {}
    for fs, cs in x.terms.items():
        s = fs.trees[0]
        for ft, ct in y.terms.items():
            w = cs * ct
            for tree, k in graft(s, ft.trees[0]).items():
                g = Forest([tree])
                v = acc.get(g, 0) + w * k
                if v:
                    acc[g] = v
                else:
                    del acc[g]
    return Element._raw(acc)


def lie_bracket(x, y) -> Element:
    return prelie_product(x, y) - prelie_product(y, x)


def extended_action_closed(x, B: Forest) -> Element:
    """x ↶ B for x in L and a forest B, summing over all attachments of B's trees."""
    x = as_element(x)
    _require_lie(x, "extended_action_closed")
    if isinstance(B, Tree):
        B = Forest([B])
    acc: dict[Forest, Fraction] = {}
    for fs, cs in x.terms.items():
        for tree, k in extend_action(fs.trees[0], B).items():
            g = Forest([tree])
            v = acc.get(g, 0) + cs * k
            if v:
                acc[g] = v
            else:
                del acc[g]
    return Element._raw(acc)


def act(x, u: Element) -> Element:
    """x ↶ u for x in L and u any element of S*(L), extended linearly."""
    x = as_element(x)
    out = Element.zero()
    for f, c in u.terms.items():
        out = out + extended_action_closed(x, f) * c
    return out


# generic carriers ---------------------------------------------------------

T = TypeVar("T")


@dataclass(frozen=True)
class PreLieCarrier(Generic[T]):
    """A preLie algebra given by its product.  Values must support +, - and
    multiplication by a Fraction."""

    curly: Callable[[T, T], T]
    zero: T
    name: str = "carrier"


FREE = PreLieCarrier(curly=prelie_product, zero=Element.zero(), name="free")


def extended_action_recursive(x: T, B: Sequence[T], alg: PreLieCarrier[T]) -> T:
    """Guin-Oudom extension of the preLie product to monomials, by recursion.

    x ↶ () = x and x ↶ (u, b) = (x ↶ u) ↶ b - x ↶ (u ↶ b), where u ↶ b replaces
    one entry e of u by e ↶ b, summed over entries.
    """
    B = list(B)
    if not B:
        return x
    *u, b = B
    result = alg.curly(extended_action_recursive(x, u, alg), b)
    for i in range(len(u)):
        v = list(u)
        v[i] = alg.curly(u[i], b)
        result = result - extended_action_recursive(x, v, alg)
    return result


def evaluate_tree(t: Tree, images: Mapping[str, T] | Callable[[str], T], alg: PreLieCarrier[T],
                  cache: dict | None = None) -> T:
    """Image of a tree under the preLie morphism fixed by the generator images."""
    if cache is not None and t in cache:
        return cache[t]
    root = images(t.label) if callable(images) else images[t.label]
    branches = [evaluate_tree(c, images, alg, cache) for c in t.children]
    value = extended_action_recursive(root, branches, alg)
    if cache is not None:
        cache[t] = value
    return value


def evaluate_element(x: Element, images, alg: PreLieCarrier[T]) -> T:
    """Termwise morphism image of an element of L."""
    _require_lie(x, "evaluate_element")
    cache: dict = {}
    out = alg.zero
    for f, c in x.sorted_terms():
        out = out + evaluate_tree(f.trees[0], images, alg, cache) * c
    return out


# text and JSON forms ------------------------------------------------------

def format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_term(f: Forest, c: Fraction) -> str:
    """One term, e.g. ``-1/2 a(a)``; a unit coefficient is omitted."""
    if not f.trees:
        return format_coeff(c)
    if c == 1:
        return render_forest(f)
    return f"{format_coeff(c)} {render_forest(f)}"


def format_element(x: Element) -> str:
    items = x.sorted_terms()
    if not items:
        return "0"
    parts = []
    for i, (f, c) in enumerate(items):
        if i == 0:
            parts.append(format_term(f, c))
        elif c < 0:
            parts.append("- " + format_term(f, -c))
        else:
            parts.append("+ " + format_term(f, c))
    return " ".join(parts)


_NUM_RE = re.compile(r"\d+(?:/\d+)?")


def _parse_number(sc: Scanner) -> Fraction | None:
    start = sc.pos
    tok = sc.match(_NUM_RE)
    if tok is None:
        return None
    num, _, den = tok.partition("/")
    if den and int(den) == 0:
        raise TreeSyntaxError("zero denominator", start)
    return Fraction(int(num), int(den) if den else 1)


def parse_element(text: str, alphabet: Sequence[str] | None = None) -> Element:
    """Parse e.g. ``"a - 1/2 a(a) + 1/12 a.a"``; ``1`` is the empty forest."""
    sc = Scanner(text)
    if sc.at_end():
        raise TreeSyntaxError("empty input", sc.pos)
    acc: dict[Forest, Fraction] = {}
    first = True
    while True:
        sign = 1
        ch = sc.peek()
        if ch in "+-":
            sc.pos += 1
            sign = -1 if ch == "-" else 1
        elif not first:
            raise TreeSyntaxError(f"expected '+' or '-', found {ch!r}", sc.pos)
        first = False
        coeff = _parse_number(sc)
        nxt = sc.peek()
        if nxt == "*" and coeff is not None:
            sc.pos += 1
            nxt = sc.peek()
        if coeff is None:
            forest = _parse_forest(sc, alphabet)
            coeff = Fraction(1)
        elif nxt and (nxt.isalpha() or nxt.isdigit()):
            forest = _parse_forest(sc, alphabet)
        else:
            forest = EMPTY_FOREST
        acc[forest] = acc.get(forest, 0) + sign * coeff
        if sc.at_end():
            break
    return Element(acc)


def element_to_json(x: Element) -> dict:
    return {
        "terms": [
            {"coeff": format_coeff(c), "forest": [str(t) for t in f.trees]}
            for f, c in x.sorted_terms()
        ]
    }


def element_from_json(data, alphabet: Sequence[str] | None = None) -> Element:
    from .trees import parse_tree

    if isinstance(data, str):
        data = json.loads(data)
    acc: dict[Forest, Fraction] = {}
    for term in data["terms"]:
        f = Forest([parse_tree(s, alphabet) for s in term["forest"]])
        acc[f] = acc.get(f, 0) + Fraction(term["coeff"])
    return Element(acc)


def elements_of(items: Iterable) -> list[Element]:
    return [as_element(i) for i in items]
