"""Weakly deterministic unranked tree automata (WDTAs).

A WDTA gives one acceptor per (vertical state, symbol) pair. A node
labeled ``a`` whose children contribute the word ``w`` gets the unique
``q`` with ``w`` in ``L(hlangs[q, a])``. Leaves follow the SDTA rule: a
leaf gets the state whose language contains the empty word, and is read
as the literal letter ``Leaf(a)`` otherwise.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .common import DEAD, LeafState, canonical_key, sorted_states
from .horizontal import (
    HorizontalMachine,
    Leaf,
    StateRef,
    accepts as h_accepts,
    common_word,
    dfa_minimize,
    sorted_letters,
)
from .sdta import Sdta, SizePair, Violation
from .trees import Tree


class AmbiguousRun(RuntimeError):
    """Two horizontal languages of one symbol accepted the same child word."""


@dataclass(frozen=True, eq=True)
class Wdta:
    vstates: frozenset
    alphabet: frozenset
    final: frozenset
    hlangs: dict

    def __post_init__(self):
        object.__setattr__(self, "vstates", frozenset(self.vstates))
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "final", frozenset(self.final))

    def machines_for(self, sym):
        """(q, acceptor) pairs for ``sym`` in canonical state order."""
        qs = [q for (q, s) in self.hlangs if s == sym]
        return [(q, self.hlangs[(q, sym)]) for q in sorted_states(qs)]

    def accepts(self, t: Tree) -> bool:
        return accepts_wdta(self, t)


def validate_wdta(a: Wdta) -> list:
    found = []
    for q in sorted_states(a.final - a.vstates):
        found.append(Violation("final not in vstates", f"final state {q!r} is not a vertical state"))
    for (q, sym) in sorted(a.hlangs, key=lambda k: (k[1], canonical_key(k[0]))):
        m = a.hlangs[(q, sym)]
        if q not in a.vstates:
            found.append(Violation("unknown state", f"hdfa for {sym!r} targets unknown state {q!r}"))
        if sym not in a.alphabet:
            found.append(Violation("unknown symbol", f"hdfa for {sym!r} outside the alphabet"))
        if m.is_classifier:
            found.append(Violation("not an acceptor", f"hdfa ({q!r}, {sym!r}) has no accept set"))
            continue
        for p in m.problems():
            found.append(Violation("malformed acceptor", f"({q!r}, {sym}): {p}"))
        for letter in sorted_letters(m.letters):
            if isinstance(letter, StateRef) and letter.id not in a.vstates:
                found.append(Violation("dangling letter", f"({q!r}, {sym}): reads unknown state {letter.id!r}"))
            if isinstance(letter, Leaf) and letter.symbol not in a.alphabet:
                found.append(Violation("unknown leaf symbol", f"({q!r}, {sym}): reads leaf {letter.symbol!r}"))
    for sym in sorted({s for (_, s) in a.hlangs}):
        ms = a.machines_for(sym)
        for i, (q1, m1) in enumerate(ms):
            for q2, m2 in ms[i + 1:]:
                if m1.is_classifier or m2.is_classifier:
                    continue
                w = common_word(m1, m2)
                if w is not None:
                    found.append(Violation(
                        "overlapping languages",
                        f"states {q1!r} and {q2!r} both accept {list(w)!r} under {sym!r}",
                        detail=(q1, q2, sym, w),
                    ))
    return found


def is_valid_wdta(a: Wdta) -> bool:
    return not any(v.level == "error" for v in validate_wdta(a))


def _unique(hits, sym, word):
    if len(hits) > 1:
        raise AmbiguousRun(f"states {hits!r} all accept {list(word)!r} under {sym!r}")
    return hits[0] if hits else None


def wdta_contribution(a: Wdta, t: Tree):
    """Letter ``t`` contributes to its parent: StateRef, Leaf or None."""
    ms = a.machines_for(t.label)
    if not t.children:
        q = _unique([q for q, m in ms if m.start in m.accept], t.label, ())
        return Leaf(t.label) if q is None else StateRef(q)
    word = []
    for c in t.children:
        letter = wdta_contribution(a, c)
        if letter is None:
            return None
        word.append(letter)
    q = _unique([q for q, m in ms if h_accepts(m, word)], t.label, word)
    return None if q is None else StateRef(q)


def eval_wdta(a: Wdta, t: Tree):
    letter = wdta_contribution(a, t)
    return letter.id if isinstance(letter, StateRef) else None


def accepts_wdta(a: Wdta, t: Tree) -> bool:
    letter = wdta_contribution(a, t)
    return isinstance(letter, StateRef) and letter.id in a.final


def wdta_size(a: Wdta) -> SizePair:
    return SizePair(len(a.vstates), sum(len(m.states) for m in a.hlangs.values()))


def sdta_to_wdta(a: Sdta) -> Wdta:
    """Split every classifier into one acceptor per output value.

    The acceptors for one symbol share the classifier's states and
    transitions and differ only in their accept sets.
    """
    hlangs = {}
    for sym, d in a.classifiers.items():
        for q in sorted_states(set(d.output.values())):
            acc = frozenset(h for h, v in d.output.items() if v == q)
            hlangs[(q, sym)] = HorizontalMachine(d.states, d.start, dict(d.trans), accept=acc)
    return Wdta(a.vstates, a.alphabet, a.final, hlangs)


def tuple_product(machines, letters):
    """Reachable padded product of several acceptors.

    States are tuples with :data:`DEAD` for components that have no run.
    The all-dead tuple is never built. Returns (states, start, trans).
    """
    letters = sorted_letters(letters)
    start = tuple(m.start for m in machines)
    seen = {start: None}
    queue = deque([start])
    trans = {}
    while queue:
        s = queue.popleft()
        for l in letters:
            nxt = tuple(DEAD if c is DEAD else _none_to_dead(m.step(c, l))
                        for m, c in zip(machines, s))
            if all(c is DEAD for c in nxt):
                continue
            trans[(s, l)] = nxt
            if nxt not in seen:
                seen[nxt] = None
                queue.append(nxt)
    return list(seen), start, trans


def _none_to_dead(x):
    return DEAD if x is None else x


def wdta_to_sdta(a: Wdta, minimize=True) -> Sdta:
    """Product of the acceptors of each symbol; output = the unique accepting state.

    Before minimization the classifier for ``sym`` has at most
    ``prod(|D_q| + 1) - 1`` states.
    """
    classifiers = {}
    for sym in sorted({s for (_, s) in a.hlangs}):
        pairs = a.machines_for(sym)
        qs = [q for q, _ in pairs]
        ms = [m for _, m in pairs]
        letters = set()
        for m in ms:
            letters |= m.letters
        states, start, trans = tuple_product(ms, letters)
        output = {}
        for s in states:
            hits = [q for q, m, c in zip(qs, ms, s) if c is not DEAD and c in m.accept]
            q = _unique(hits, sym, "?")
            if q is not None:
                output[s] = q
        d = HorizontalMachine(frozenset(states), start, trans, output=output)
        classifiers[sym] = dfa_minimize(d) if minimize else d
    return Sdta(a.vstates, a.alphabet, a.final, classifiers)


def lift_wdta_leaf_letters(a: Wdta) -> Wdta:
    """Equivalent WDTA whose acceptors never read literal leaf letters.

    A literal leaf symbol ``s`` that some acceptor reads becomes the state
    ``LeafState(s)`` whose language under ``s`` is just the empty word.
    """
    read = {l.symbol for m in a.hlangs.values() for l in m.letters if isinstance(l, Leaf)}
    if not read:
        return a
    literal = set()
    for s in read:
        if s in a.alphabet and not any(m.start in m.accept for _, m in a.machines_for(s)):
            literal.add(s)
    hlangs = {}
    for key, m in a.hlangs.items():
        trans = {}
        for (h, l), t in m.trans.items():
            if isinstance(l, Leaf):
                if l.symbol not in literal:
                    continue
                l = StateRef(LeafState(l.symbol))
            trans[(h, l)] = t
        hlangs[key] = HorizontalMachine(m.states, m.start, trans, accept=m.accept)
    for s in literal:
        fresh = LeafState(s)
        hlangs[(fresh, s)] = HorizontalMachine(frozenset([0]), 0, {}, accept=frozenset([0]))
    return Wdta(a.vstates | {LeafState(s) for s in literal}, a.alphabet, a.final, hlangs)


__all__ = [
    "Wdta", "AmbiguousRun", "validate_wdta", "is_valid_wdta", "wdta_contribution", "eval_wdta",
    "accepts_wdta", "wdta_size", "sdta_to_wdta", "wdta_to_sdta", "lift_wdta_leaf_letters",
    "tuple_product",
]
