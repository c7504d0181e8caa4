"""Boolean operations and tree concatenation.

All constructions materialize only reachable states. Inputs are first
rewritten so that no horizontal machine reads a literal leaf letter (see
:func:`~hedgeauto.sdta.lift_leaf_letters`); after that, leaves either carry
a vertical state or are unusable, which keeps the product rules simple.
"""

from __future__ import annotations

from dataclasses import dataclass

from .common import DEAD, canonical_key, sorted_states
from .horizontal import (
    HorizontalMachine,
    Leaf,
    StateRef,
    dfa_complement_acceptor,
    dfa_minimize,
    dfa_product,
    relabel_letters,
    union_acceptors,
)
from .sdta import Sdta, explore, lift_leaf_letters
from .wdta import Wdta, lift_wdta_leaf_letters


class ConstructionError(ValueError):
    pass


# ---------------------------------------------------------------- SDTA boolean

def _sdta_product(a1: Sdta, a2: Sdta, padded: bool) -> Sdta:
    a1, a2 = lift_leaf_letters(a1), lift_leaf_letters(a2)
    c1, c2 = a1.classifiers, a2.classifiers

    def start_of(s):
        h1 = c1[s].start if s in c1 else DEAD
        h2 = c2[s].start if s in c2 else DEAD
        if padded:
            return None if h1 is DEAD and h2 is DEAD else (h1, h2)
        return None if h1 is DEAD or h2 is DEAD else (h1, h2)

    def side(d, h, q):
        if h is DEAD or q is DEAD:
            return None
        return d.step(h, StateRef(q))

    def step(s, h, letter):
        if not isinstance(letter, StateRef):
            return None
        q1, q2 = letter.id
        t1, t2 = side(c1.get(s), h[0], q1), side(c2.get(s), h[1], q2)
        if padded:
            if t1 is None and t2 is None:
                return None
            return (DEAD if t1 is None else t1, DEAD if t2 is None else t2)
        return None if t1 is None or t2 is None else (t1, t2)

    def out(s, h):
        o1 = None if h[0] is DEAD else c1[s].out(h[0])
        o2 = None if h[1] is DEAD else c2[s].out(h[1])
        if padded:
            if o1 is None and o2 is None:
                return None
            return (DEAD if o1 is None else o1, DEAD if o2 is None else o2)
        return None if o1 is None or o2 is None else (o1, o2)

    if padded:
        def is_final(q):
            return q[0] in a1.final or q[1] in a2.final
    else:
        def is_final(q):
            return q[0] in a1.final and q[1] in a2.final

    return explore(a1.alphabet | a2.alphabet, start_of, step, out, is_final)


def sdta_union(a1: Sdta, a2: Sdta) -> Sdta:
    """Product automaton with dead padding; final if either component is final.

    Vertical states are pairs ``(q1, q2)`` where a component is
    :data:`DEAD` when that automaton has no run.
    """
    return _sdta_product(a1, a2, padded=True)


def sdta_intersection(a1: Sdta, a2: Sdta) -> Sdta:
    """Plain product automaton; final iff both components are final."""
    return _sdta_product(a1, a2, padded=False)


# ---------------------------------------------------------------- WDTA boolean

def _pair_letters(states):
    return [StateRef(p) for p in sorted_states(states)]


def _project(i):
    def fn(letter):
        if isinstance(letter, StateRef):
            c = letter.id[i]
            return None if c is DEAD else StateRef(c)
        return None
    return fn


def _empty_acceptor():
    return HorizontalMachine(frozenset([0]), 0, {}, accept=frozenset())


def _wdta_trim(vstates, alphabet, final, hlangs) -> Wdta:
    """Keep the vertical states some tree reaches; minimize the surviving acceptors."""
    reach = set()
    while True:
        letters = {StateRef(q) for q in reach}
        grown = set(reach)
        for (q, s), m in hlangs.items():
            if q in grown:
                continue
            r = dfa_minimize(m, letters)
            if r.accept:
                grown.add(q)
        if grown == reach:
            break
        reach = grown
    letters = {StateRef(q) for q in reach}
    out = {}
    for (q, s), m in hlangs.items():
        if q not in reach:
            continue
        r = dfa_minimize(m, letters)
        if r.accept:
            out[(q, s)] = r
    return Wdta(frozenset(reach), alphabet, frozenset(q for q in reach if q in final), out)


def wdta_union(a1: Wdta, a2: Wdta) -> Wdta:
    """WDTA for ``L(a1) | L(a2)`` over pair states padded with :data:`DEAD`.

    For a pair ``(q, p)`` the language under ``s`` is the product of
    ``D1[q, s]`` and ``D2[p, s]`` read through the pair letters. For
    ``(q, DEAD)`` it is ``D1[q, s]`` intersected with the complement of
    the union of every ``D2[p, s]``, so exactly one pair state claims each
    child word; ``(DEAD, p)`` is symmetric.
    """
    a1, a2 = lift_wdta_leaf_letters(a1), lift_wdta_leaf_letters(a2)
    alphabet = a1.alphabet | a2.alphabet
    q1 = sorted_states(a1.vstates) + [DEAD]
    q2 = sorted_states(a2.vstates) + [DEAD]
    pairs = [(q, p) for q in q1 for p in q2 if not (q is DEAD and p is DEAD)]
    letters = _pair_letters(pairs)
    pi1, pi2 = _project(0), _project(1)
    hlangs = {}
    for s in sorted(alphabet):
        m1 = {q: relabel_letters(m, letters, pi1) for q, m in a1.machines_for(s)}
        m2 = {p: relabel_letters(m, letters, pi2) for p, m in a2.machines_for(s)}
        none1 = dfa_complement_acceptor(union_acceptors(m1.values(), letters), letters)
        none2 = dfa_complement_acceptor(union_acceptors(m2.values(), letters), letters)
        for q, p in pairs:
            if q is DEAD:
                if p in m2:
                    hlangs[((q, p), s)] = dfa_product(none1, m2[p], "and", letters)
            elif p is DEAD:
                if q in m1:
                    hlangs[((q, p), s)] = dfa_product(m1[q], none2, "and", letters)
            elif q in m1 and p in m2:
                hlangs[((q, p), s)] = dfa_product(m1[q], m2[p], "and", letters)
    final = {(q, p) for q, p in pairs if q in a1.final or p in a2.final}
    return _wdta_trim(pairs, alphabet, final, hlangs)


def wdta_intersection(a1: Wdta, a2: Wdta) -> Wdta:
    """Pair states; the language of ``(q, p)`` under ``s`` is the product of ``D1[q, s]`` and ``D2[p, s]``."""
    a1, a2 = lift_wdta_leaf_letters(a1), lift_wdta_leaf_letters(a2)
    alphabet = a1.alphabet | a2.alphabet
    pairs = [(q, p) for q in sorted_states(a1.vstates) for p in sorted_states(a2.vstates)]
    letters = _pair_letters(pairs)
    pi1, pi2 = _project(0), _project(1)
    hlangs = {}
    for s in sorted(alphabet):
        m1 = {q: relabel_letters(m, letters, pi1) for q, m in a1.machines_for(s)}
        m2 = {p: relabel_letters(m, letters, pi2) for p, m in a2.machines_for(s)}
        for q, p in pairs:
            if q in m1 and p in m2:
                hlangs[((q, p), s)] = dfa_product(m1[q], m2[p], "and", letters)
    final = {(q, p) for q, p in pairs if q in a1.final and p in a2.final}
    return _wdta_trim(pairs, alphabet, final, hlangs)


# ---------------------------------------------------------------- concatenation

@dataclass(frozen=True)
class ConcatState:
    """Vertical state ``(p1, P2, q)`` of the concatenation automaton.

    ``p1``: outer state of the tree as is (or DEAD); ``P2``: outer states
    reachable by replacing exactly one subtree in the inner language with
    a leaf; ``q``: inner state (or DEAD).
    """

    p1: object
    P2: frozenset
    q: object

    def sort_key(self):
        return (canonical_key(self.p1), canonical_key(self.P2), canonical_key(self.q))

    def __repr__(self):
        ps = ",".join(repr(p) for p in sorted_states(self.P2))
        return f"<{self.p1!r},{{{ps}}},{self.q!r}>"


@dataclass(frozen=True)
class ConcatHState:
    """Horizontal state ``(c1, (C2, x), c2)`` of a concatenation classifier.

    ``x`` is 1 once some child on the current sibling word carried a
    substitution; ``C2`` then holds the outer horizontal states reached
    with exactly one substituted child.
    """

    c1: object
    C2: frozenset
    x: int
    c2: object

    def sort_key(self):
        return (canonical_key(self.c1), canonical_key(self.C2), self.x, canonical_key(self.c2))

    def __repr__(self):
        cs = ",".join(repr(c) for c in sorted_states(self.C2))
        return f"<{self.c1!r},({{{cs}}},{self.x}),{self.c2!r}>"


def leaf_states(a: Sdta) -> frozenset:
    """States ``a`` assigns to single leaves."""
    out = set()
    for s in a.alphabet:
        q = a.leaf_state(s)
        if q is not None:
            out.add(q)
    return frozenset(out)


def sdta_concat(inner: Sdta, outer: Sdta) -> Sdta:
    """SDTA for ``L(inner) . L(outer)``: trees of ``outer`` with one leaf replaced by a tree of ``inner``.

    When the inner run at a node is final, every outer leaf state is added
    to the ``P2`` component (with a single leaf state this is exactly the
    one-state rule; with several it covers every leaf label the replaced
    leaf could have carried).
    """
    outer = lift_leaf_letters(outer)
    inner = lift_leaf_letters(inner)
    p_leaf = leaf_states(outer)
    if not p_leaf:
        raise ConstructionError("outer automaton has no leaf states")
    d1, d2 = outer.classifiers, inner.classifiers
    f1, f2 = outer.final, inner.final

    def g1(s, c, letter):
        if c is DEAD or s not in d1:
            return None
        return d1[s].step(c, letter)

    def g2(s, c, letter):
        if c is DEAD or s not in d2:
            return None
        return d2[s].step(c, letter)

    def start_of(s):
        c1 = d1[s].start if s in d1 else DEAD
        c2 = d2[s].start if s in d2 else DEAD
        if c1 is DEAD and c2 is DEAD:
            return None
        return ConcatHState(c1, frozenset() if c1 is DEAD else frozenset([c1]), 0, c2)

    def collect(s, cs, letter):
        out = set()
        for c in cs:
            t = g1(s, c, letter)
            if t is not None:
                out.add(t)
        return out

    def step(s, h, letter):
        if isinstance(letter, Leaf):
            c1 = g1(s, h.c1, letter)
            C2 = collect(s, h.C2, letter)
            x = h.x
            c2 = g2(s, h.c2, letter)
        else:
            p1, P2, q = letter.id.p1, letter.id.P2, letter.id.q
            sub = [StateRef(p) for p in P2]
            c1 = None if p1 is DEAD else g1(s, h.c1, StateRef(p1))
            if P2 and h.x == 0:
                C2, x = set().union(*(collect(s, [h.c1], l) for l in sub)), 1
            elif P2:
                C2 = set().union(*(collect(s, [h.c1], l) for l in sub))
                if p1 is not DEAD:
                    C2 |= collect(s, h.C2, StateRef(p1))
                x = 1
            elif h.x == 0:
                C2, x = set(), 0
            else:
                C2 = set() if p1 is DEAD else collect(s, h.C2, StateRef(p1))
                x = 1
            c2 = None if q is DEAD else g2(s, h.c2, StateRef(q))
        assert x >= h.x, "substitution flag went back to 0"
        if c1 is None and c2 is None and (x == 0 or not C2):
            return None
        return ConcatHState(
            DEAD if c1 is None else c1, frozenset(C2), x, DEAD if c2 is None else c2
        )

    def out(s, h):
        p1 = None if h.c1 is DEAD else d1[s].out(h.c1)
        q = None if h.c2 is DEAD else d2[s].out(h.c2)
        P2 = set()
        if h.x == 1:
            for c in h.C2:
                v = d1[s].out(c)
                if v is not None:
                    P2.add(v)
        if q is not None and q in f2:
            P2 |= p_leaf
        if p1 is None and q is None and not P2:
            return None
        return ConcatState(DEAD if p1 is None else p1, frozenset(P2), DEAD if q is None else q)

    def is_final(v):
        return bool(v.P2 & f1)

    return explore(outer.alphabet | inner.alphabet, start_of, step, out, is_final)


def concat_vertical_bound(n_outer: int, n_inner: int) -> int:
    """Upper bound on vertical states of :func:`sdta_concat`."""
    return (n_outer + 1) * (2**n_outer * (n_inner + 1) - 2 ** (n_outer - 1)) - 1


def concat_horizontal_bound(c_outer: int, c_inner: int) -> int:
    """Per-symbol horizontal bound for :func:`sdta_concat`."""
    return (c_inner + 1) * (c_outer + 1) * 2 ** (c_outer + 1)


def union_vertical_bound(n1, n2):
    return (n1 + 1) * (n2 + 1) - 1


def intersection_vertical_bound(n1, n2):
    return n1 * n2


__all__ = [
    "ConstructionError", "sdta_union", "sdta_intersection", "wdta_union", "wdta_intersection",
    "ConcatState", "ConcatHState", "leaf_states", "sdta_concat", "concat_vertical_bound",
    "concat_horizontal_bound", "union_vertical_bound", "intersection_vertical_bound",
]
