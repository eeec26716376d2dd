"""Canonical non-planar rooted trees with labeled vertices, and forests of them.

Trees are always built in canonical form: children are sorted by the total
order (vertex count, root label, ordered child list).  Labels compare as
strings, which is the alphabet order for any sorted alphabet.
"""
from __future__ import annotations

import re
from collections import Counter
from functools import lru_cache
from typing import Iterable, Sequence

DEFAULT_ALPHABET = ("a",)

_LABEL_RE = re.compile(r"[a-z][a-z0-9]*")


class TreeSyntaxError(ValueError):
    """Raised on malformed tree/forest text.  ``offset`` is 0-based."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownLabelError(ValueError):
    pass


class Tree:
    __slots__ = ("label", "children", "size", "key", "_hash")

    def __init__(self, label: str, children: Iterable[Tree] = ()):
        kids = tuple(sorted(children, key=_tree_key))
        self.label = label
        self.children = kids
        self.size = 1 + sum(c.size for c in kids)
        self.key = (self.size, label, tuple(c.key for c in kids))
        self._hash = hash(self.key)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Tree):
            return NotImplemented
        return self._hash == other._hash and self.key == other.key

    def __hash__(self):
        return self._hash

    def __lt__(self, other: Tree):
        return self.key < other.key

    def __le__(self, other: Tree):
        return self.key <= other.key

    @property
    def degree(self) -> int:
        return self.size

    def vertices(self) -> int:
        return self.size

    def labels(self) -> Counter:
        out = Counter([self.label])
        for c in self.children:
            out.update(c.labels())
        return out

    def __repr__(self):
        return f"Tree({render_tree(self)!r})"

    def __str__(self):
        return render_tree(self)


def _tree_key(t: Tree):
    return t.key


class Forest:
    """A multiset of trees, i.e. a monomial of the symmetric algebra.

    The empty forest is the unit.
    """

    __slots__ = ("trees", "degree", "key", "_hash")

    def __init__(self, trees: Iterable[Tree] = ()):
        ts = tuple(sorted(trees, key=_tree_key))
        self.trees = ts
        self.degree = sum(t.size for t in ts)
        self.key = (self.degree, tuple(t.key for t in ts))
        self._hash = hash(self.key)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Forest):
            return NotImplemented
        return self._hash == other._hash and self.key == other.key

    def __hash__(self):
        return self._hash

    def __lt__(self, other: Forest):
        return self.key < other.key

    def __len__(self):
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)

    def __bool__(self):
        return bool(self.trees)

    @property
    def length(self) -> int:
        """Number of trees (the symmetric-power grading)."""
        return len(self.trees)

    def multiplicities(self) -> tuple[tuple[Tree, int], ...]:
        out: list[list] = []
        for t in self.trees:
            if out and out[-1][0] == t:
                out[-1][1] += 1
            else:
                out.append([t, 1])
        return tuple((t, c) for t, c in out)

    def union(self, other: Forest) -> Forest:
        return Forest(self.trees + other.trees)

    def labels(self) -> Counter:
        out: Counter = Counter()
        for t in self.trees:
            out.update(t.labels())
        return out

    def __repr__(self):
        return f"Forest({render_forest(self)!r})"

    def __str__(self):
        return render_forest(self)


EMPTY_FOREST = Forest()


def leaf(label: str = "a") -> Tree:
    return Tree(label)


def canonicalize(raw, alphabet: Sequence[str] | None = None) -> Tree:
    """Canonical tree from a raw nested ``(label, children)`` structure.

    ``raw`` may also be a :class:`Tree` (re-canonicalized, e.g. to check labels)
    or a bare label string.
    """
    if isinstance(raw, Tree):
        label, kids = raw.label, raw.children
    elif isinstance(raw, str):
        label, kids = raw, ()
    else:
        label, kids = raw[0], (raw[1] if len(raw) > 1 else ())
    if alphabet is not None and label not in alphabet:
        raise UnknownLabelError(f"unknown label {label!r}")
    return Tree(label, [canonicalize(k, alphabet) for k in kids])


def graft(s: Tree, t: Tree) -> dict[Tree, int]:
    """Sum over vertices v of s of s with t's root attached as a new child of v."""
    out: dict[Tree, int] = {}
    for tree, c in _attach(s, Forest([t])).items():
        out[tree] = out.get(tree, 0) + c
    return out


@lru_cache(maxsize=200_000)
def _attach(s: Tree, branches: Forest) -> dict[Tree, int]:
    """Sum over all maps from the trees of ``branches`` to the vertices of ``s``.

    Each tree of ``branches`` is grafted as a new child of its image vertex.
    Identical branches are handled by multinomial counts over positions.
    """
    if not branches.trees:
        return {s: 1}
    from .combinat import compositions, multinomial

    kids = s.children
    positions = len(kids) + 1  # slot 0 is the root itself
    groups = branches.multiplicities()
    # per branch type, the ways of splitting its copies among the positions
    splits = [list(compositions(m, positions)) for _, m in groups]

    out: dict[Tree, int] = {}

    def rec(g, per_pos, weight):
        if g == len(groups):
            at_root = per_pos[0]
            partial: dict[tuple[Tree, ...], int] = {(): weight}
            for k, child in enumerate(kids):
                sub = _attach(child, Forest(per_pos[k + 1]))
                nxt: dict[tuple[Tree, ...], int] = {}
                for prefix, w in partial.items():
                    for ct, cw in sub.items():
                        key = prefix + (ct,)
                        nxt[key] = nxt.get(key, 0) + w * cw
                partial = nxt
            for new_kids, w in partial.items():
                tree = Tree(s.label, new_kids + tuple(at_root))
                out[tree] = out.get(tree, 0) + w
            return
        tree_type, _ = groups[g]
        for comp in splits[g]:
            lists = [per_pos[p] + [tree_type] * comp[p] for p in range(positions)]
            rec(g + 1, lists, weight * multinomial(comp))

    rec(0, [[] for _ in range(positions)], 1)
    return out


def extend_action(s: Tree, branches: Forest) -> dict[Tree, int]:
    """Closed-form extended action of a forest on a single tree, as integer counts."""
    return dict(_attach(s, branches))


@lru_cache(maxsize=None)
def _trees_of_size(n: int, alphabet: tuple[str, ...]) -> tuple[Tree, ...]:
    if n < 1:
        return ()
    out = [Tree(lab, f.trees) for lab in alphabet for f in _forests_of_degree(n - 1, alphabet)]
    return tuple(sorted(out, key=_tree_key))


@lru_cache(maxsize=None)
def _forests_of_degree(n: int, alphabet: tuple[str, ...]) -> tuple[Forest, ...]:
    if n == 0:
        return (EMPTY_FOREST,)
    pool = [t for k in range(1, n + 1) for t in _trees_of_size(k, alphabet)]
    out: list[Forest] = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(Forest(acc))
            return
        for idx in range(start, len(pool)):
            t = pool[idx]
            if t.size > remaining:
                break
            acc.append(t)
            rec(idx, remaining - t.size, acc)
            acc.pop()

    rec(0, n, [])
    return tuple(sorted(out))


def enumerate_trees(n: int, alphabet: Sequence[str] = DEFAULT_ALPHABET) -> list[Tree]:
    """All canonical trees with n vertices over ``alphabet``, each once."""
    if n < 1:
        raise ValueError("tree size must be positive")
    return list(_trees_of_size(n, tuple(sorted(set(alphabet)))))


def enumerate_forests(n: int, alphabet: Sequence[str] = DEFAULT_ALPHABET) -> list[Forest]:
    """All forests of total degree n (n = 0 gives the empty forest only)."""
    if n < 0:
        raise ValueError("forest degree must be nonnegative")
    return list(_forests_of_degree(n, tuple(sorted(set(alphabet)))))


# text form ------------------------------------------------------------------

def render_tree(t: Tree) -> str:
    if not t.children:
        return t.label
    return t.label + "(" + ",".join(render_tree(c) for c in t.children) + ")"


def render_forest(f: Forest) -> str:
    if not f.trees:
        return "1"
    return ".".join(render_tree(t) for t in f.trees)


class Scanner:
    """Character cursor that skips whitespace; shared by the text parsers."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        return self.peek() == ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise TreeSyntaxError(f"expected {ch!r}, found {found}", self.pos)
        self.pos += 1

    def match(self, pattern: re.Pattern) -> str | None:
        self.skip()
        m = pattern.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return m.group(0)


def _parse_tree(sc: Scanner, alphabet) -> Tree:
    start = sc.pos
    label = sc.match(_LABEL_RE)
    if label is None:
        sc.skip()
        raise TreeSyntaxError("expected a label", sc.pos)
    if alphabet is not None and label not in alphabet:
        raise UnknownLabelError(f"unknown label {label!r} at offset {start}")
    kids: list[Tree] = []
    if sc.peek() == "(":
        sc.pos += 1
        kids.append(_parse_tree(sc, alphabet))
        while sc.peek() == ",":
            sc.pos += 1
            kids.append(_parse_tree(sc, alphabet))
        sc.expect(")")
    return Tree(label, kids)


def _parse_forest(sc: Scanner, alphabet) -> Forest:
    if sc.peek() == "1":
        sc.pos += 1
        return EMPTY_FOREST
    trees = [_parse_tree(sc, alphabet)]
    while sc.peek() == ".":
        sc.pos += 1
        trees.append(_parse_tree(sc, alphabet))
    return Forest(trees)


def _finish(sc: Scanner):
    if not sc.at_end():
        raise TreeSyntaxError(f"unexpected {sc.peek()!r}", sc.pos)


def parse_tree(text: str, alphabet: Sequence[str] | None = None) -> Tree:
    sc = Scanner(text)
    t = _parse_tree(sc, alphabet)
    _finish(sc)
    return t


def parse_forest(text: str, alphabet: Sequence[str] | None = None) -> Forest:
    sc = Scanner(text)
    f = _parse_forest(sc, alphabet)
    _finish(sc)
    return f
