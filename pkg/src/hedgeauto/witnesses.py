"""Worst-case witness languages and automata.

``string_dfa_A``/``string_dfa_B`` are the string DFAs behind the
concatenation lower bound; ``make_MA``/``make_MB`` lift them to SDTAs in
which every horizontal language requires all children to agree on their
state (``i+``), except for the ``c``-nodes of ``M_B`` which accept any
non-empty child word.
"""

from __future__ import annotations

from dataclasses import dataclass

from .horizontal import HorizontalMachine, StateRef
from .sdta import Sdta
from .trees import Tree, positions, subtree


@dataclass(frozen=True)
class StringDfa:
    states: int
    start: int
    finals: frozenset
    trans: dict
    alphabet: frozenset

    def run(self, word):
        q = self.start
        for x in word:
            q = self.trans.get((q, x))
            if q is None:
                return None
        return q

    def accepts(self, word):
        return self.run(word) in self.finals


def string_dfa_B(n: int) -> StringDfa:
    if n < 2:
        raise ValueError("string_dfa_B needs n >= 2")
    trans = {}
    for j in range(n):
        trans[(j, "a")] = j
        trans[(j, "b")] = (j + 1) % n
        trans[(j, "c")] = 1
        trans[(j, "d")] = j
    return StringDfa(n, 0, frozenset([n - 1]), trans, frozenset("abcd"))


def string_dfa_A(m: int) -> StringDfa:
    if m < 2:
        raise ValueError("string_dfa_A needs m >= 2")
    trans = {}
    for i in range(m):
        trans[(i, "a")] = (i + 1) % m
        trans[(i, "b")] = 0
        trans[(i, "c")] = i
    return StringDfa(m, 0, frozenset([m - 1]), trans, frozenset("abc"))


def _agreement(k, node_out, leaf_out=None):
    # state 0: no child read yet; state j+1: every child so far is in state j
    trans = {}
    for j in range(k):
        trans[(0, StateRef(j))] = j + 1
        trans[(j + 1, StateRef(j))] = j + 1
    output = {j + 1: node_out(j) for j in range(k)}
    if leaf_out is not None:
        output[0] = leaf_out
    return HorizontalMachine(frozenset(range(k + 1)), 0, trans, output=output)


def _any_nonempty(k, value):
    trans = {}
    for j in range(k):
        trans[(0, StateRef(j))] = 1
        trans[(1, StateRef(j))] = 1
    return HorizontalMachine(frozenset([0, 1]), 0, trans, output={1: value})


def make_MB(n: int) -> Sdta:
    """SDTA with states 0..n-1 and final state n-1 for the ``T_B`` language.

    * leaf ``a`` -> 0; ``a``- and ``d``-nodes keep the common child state;
    * a ``b``-node whose children are all in ``j-1`` gets ``j`` (mod n);
    * a ``c``-node with any non-empty child word gets 1.
    """
    if n < 2:
        raise ValueError("make_MB needs n >= 2")
    classifiers = {
        "a": _agreement(n, lambda j: j, leaf_out=0),
        "b": _agreement(n, lambda j: (j + 1) % n),
        "c": _any_nonempty(n, 1),
        "d": _agreement(n, lambda j: j),
    }
    return Sdta(frozenset(range(n)), frozenset("abcd"), frozenset([n - 1]), classifiers)


def make_MA(m: int) -> Sdta:
    """SDTA with states 0..m-1 and final state m-1 lifting ``string_dfa_A(m)``.

    Leaf ``a`` -> 0; an ``a``-node with all children in ``i`` gets
    ``i+1 mod m``, a ``b``-node gets 0 and a ``c``-node keeps ``i``. Children
    that disagree leave the node without a state, and there are no
    ``d`` transitions.
    """
    if m < 2:
        raise ValueError("make_MA needs m >= 2")
    classifiers = {
        "a": _agreement(m, lambda i: (i + 1) % m, leaf_out=0),
        "b": _agreement(m, lambda i: 0),
        "c": _agreement(m, lambda i: i),
    }
    return Sdta(frozenset(range(m)), frozenset("abc"), frozenset([m - 1]), classifiers)


def _height_one(t: Tree):
    return [u for u in positions(t)
            if subtree(t, u).children and all(c.is_leaf for c in subtree(t, u).children)]


def membership_TB(t: Tree, n: int) -> bool:
    """Direct check of the three conditions defining ``T_B``.

    1. every leaf is labeled ``a``, and a node with a leaf child has only
       leaf children;
    2. ``B`` accepts the labels on the path from every height-one node up
       to the root (leaf labels are not read);
    3. paths from two height-one nodes below a common node ``u`` drive
       ``B`` to the same state at ``u``.
    """
    dfa = string_dfa_B(n)
    for u in positions(t):
        node = subtree(t, u)
        if node.is_leaf:
            if node.label != "a":
                return False
        elif any(c.is_leaf for c in node.children) and not all(c.is_leaf for c in node.children):
            return False
    at = {}
    for v in _height_one(t):
        q = dfa.start
        for k in range(len(v), -1, -1):
            u = v[:k]
            q = dfa.trans[(q, subtree(t, u).label)]
            at.setdefault(u, set()).add(q)
        if q not in dfa.finals:
            return False
    return all(len(qs) == 1 for qs in at.values())


def build_chain(word, leaf="a") -> Tree:
    """Unary tree whose labels read ``word`` from the height-one node up to the root."""
    t = Tree(leaf)
    for sym in word:
        t = Tree(sym, (t,))
    return t


def chain_word(t: Tree) -> tuple:
    """Inverse of :func:`build_chain` on unary trees (leaf label excluded)."""
    labels = []
    while t.children:
        if len(t.children) != 1:
            raise ValueError("not a unary tree")
        labels.append(t.label)
        t = t.children[0]
    return tuple(reversed(labels))


def _counter(k, leaf_sym, step_sym, loop_syms):
    classifiers = {
        leaf_sym: HorizontalMachine(frozenset([0]), 0, {}, output={0: 0}),
    }
    unary = {step_sym: lambda i: (i + 1) % k}
    for s in loop_syms:
        unary[s] = lambda i: i
    for s, f in unary.items():
        trans = {(0, StateRef(i)): i + 1 for i in range(k)}
        output = {i + 1: f(i) for i in range(k)}
        classifiers[s] = HorizontalMachine(frozenset(range(k + 1)), 0, trans, output=output)
    alphabet = frozenset(classifiers)
    return Sdta(frozenset(range(k)), alphabet, frozenset([0]), classifiers)


def derived_boolean_witnesses(m: int, n: int):
    """Unary divisibility languages with ``m`` and ``n`` vertical states.

    First: chains over ``{a, b, c}`` above an ``e`` leaf whose number of
    ``a``-nodes is divisible by ``m``. Second: chains over ``{a, b, d}``
    whose number of ``b``-nodes is divisible by ``n``. ``c`` and ``d`` are
    each unknown to the other automaton, so either run can die alone.
    """
    if m < 2 or n < 2:
        raise ValueError("derived witnesses need m, n >= 2")
    return _counter(m, "e", "a", "bc"), _counter(n, "e", "b", "ad")
