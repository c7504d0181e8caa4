"""Finite ordered unranked labeled trees.

Trees are written in term syntax::

    tree := sym | sym '(' tree (',' tree)* ')'

where ``sym`` is a run of letters, digits and underscores. Positions are
tuples of 0-based child indices; the empty tuple is the root.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator

Position = tuple

_SYMBOL = re.compile(r"[A-Za-z0-9_]+")


class TreeSyntaxError(ValueError):
    def __init__(self, message, text, pos):
        super().__init__(f"{message} at offset {pos}: {text!r}")
        self.text = text
        self.pos = pos


@dataclass(frozen=True, eq=True)
class Tree:
    label: str
    children: tuple = ()

    def __post_init__(self):
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.label, self.children))
            object.__setattr__(self, "_hash", h)
        return h

    def __str__(self):
        return serialize_tree(self)

    def __repr__(self):
        return f"Tree({serialize_tree(self)!r})"

    @property
    def is_leaf(self):
        return not self.children

    @property
    def height(self):
        if not self.children:
            return 0
        return 1 + max(c.height for c in self.children)

    @property
    def width(self):
        """Largest number of children of any node."""
        return max([len(self.children)] + [c.width for c in self.children])

    def size(self):
        return 1 + sum(c.size() for c in self.children)

    def labels(self):
        out = {self.label}
        for c in self.children:
            out |= c.labels()
        return out


def leaf(label):
    return Tree(label)


def parse_tree(text: str) -> Tree:
    """Parse term syntax. Whitespace between tokens is ignored."""
    pos = 0
    n = len(text)

    def skip():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def symbol():
        nonlocal pos
        skip()
        m = _SYMBOL.match(text, pos)
        if not m:
            raise TreeSyntaxError("expected symbol", text, pos)
        pos = m.end()
        return m.group()

    def node():
        nonlocal pos
        label = symbol()
        skip()
        if pos < n and text[pos] == "(":
            pos += 1
            kids = [node()]
            skip()
            while pos < n and text[pos] == ",":
                pos += 1
                kids.append(node())
                skip()
            if pos >= n or text[pos] != ")":
                raise TreeSyntaxError("expected ',' or ')'", text, pos)
            pos += 1
            return Tree(label, tuple(kids))
        return Tree(label)

    t = node()
    skip()
    if pos != n:
        raise TreeSyntaxError("trailing input", text, pos)
    return t


def serialize_tree(t: Tree) -> str:
    if not t.children:
        return t.label
    return t.label + "(" + ",".join(serialize_tree(c) for c in t.children) + ")"


def positions(t: Tree) -> list:
    """dom(t) in pre-order."""
    out = [()]
    for i, c in enumerate(t.children):
        out.extend((i,) + p for p in positions(c))
    return out


def leaf_positions(t: Tree) -> list:
    if not t.children:
        return [()]
    out = []
    for i, c in enumerate(t.children):
        out.extend((i,) + p for p in leaf_positions(c))
    return out


def subtree(t: Tree, u: Position) -> Tree:
    for i in u:
        if not 0 <= i < len(t.children):
            raise IndexError(f"position {u} not in tree domain")
        t = t.children[i]
    return t


def substitute(outer: Tree, u: Position, inner: Tree) -> Tree:
    """outer(u <- inner): replace the subtree at ``u``."""
    if not u:
        return inner
    i = u[0]
    if not 0 <= i < len(outer.children):
        raise IndexError(f"position {u} not in tree domain")
    kids = list(outer.children)
    kids[i] = substitute(kids[i], u[1:], inner)
    return Tree(outer.label, tuple(kids))


def concat_trees(t: Tree, tprime: Tree) -> frozenset:
    return frozenset(substitute(tprime, u, t) for u in leaf_positions(tprime))


def concat_finite_languages(l1: Iterable[Tree], l2: Iterable[Tree]) -> frozenset:
    l2 = list(l2)
    out = set()
    for t in l1:
        for tp in l2:
            out |= concat_trees(t, tp)
    return frozenset(out)


def _trees_by_height(alphabet, max_height, max_width):
    """Lists of trees of height exactly h, for h = 0..max_height."""
    syms = sorted(alphabet)
    layers = [[Tree(s) for s in syms]]
    upto = list(layers[0])
    for h in range(1, max_height + 1):
        below = upto
        taller = set(layers[h - 1])
        layer = []
        for s in syms:
            for k in range(1, max_width + 1):
                for kids in itertools.product(below, repeat=k):
                    if any(c in taller for c in kids):
                        layer.append(Tree(s, kids))
        layers.append(layer)
        upto = upto + layer
    return layers


def enumerate_trees(alphabet, max_height=3, max_width=3) -> Iterator[Tree]:
    """Every tree with height <= max_height and arity <= max_width, once each.

    Ordered by height, then by label, arity and children in enumeration
    order. Materializes one height layer at a time, so only use this on
    corpora that fit in memory (see :func:`corpus_size`).
    """
    if max_height < 0 or max_width < 1:
        raise ValueError("need max_height >= 0 and max_width >= 1")
    for layer in _trees_by_height(alphabet, max_height, max_width):
        yield from layer


def corpus_size(alphabet_size, max_height, max_width) -> int:
    """Number of trees :func:`enumerate_trees` yields, computed without enumerating."""
    n = alphabet_size
    for _ in range(max_height):
        n = alphabet_size * sum(n**i for i in range(max_width + 1))
    return n
