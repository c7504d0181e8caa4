"""Strongly deterministic unranked tree automata (SDTAs).

An SDTA has one classifier per symbol. At a node labeled ``a`` whose
children contribute the letters ``l1 ... lk``, the node gets the vertical
state ``classify(D_a, l1 ... lk)``.

Leaves: a leaf labeled ``a`` gets ``classify(D_a, ())`` when that is
defined, and otherwise contributes the literal letter ``Leaf(a)`` to its
parent. A child with no run kills its parent's run; nothing is completed
implicitly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Optional

from .common import SINK, LeafState, canonical_key, sorted_states
from .horizontal import (
    HorizontalMachine,
    Leaf,
    StateRef,
    complete,
    empty_classifier,
)
from .trees import Tree


@dataclass(frozen=True, eq=True)
class Sdta:
    vstates: frozenset
    alphabet: frozenset
    final: frozenset
    classifiers: dict

    def __post_init__(self):
        object.__setattr__(self, "vstates", frozenset(self.vstates))
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "final", frozenset(self.final))

    def classifier(self, sym) -> Optional[HorizontalMachine]:
        return self.classifiers.get(sym)

    def leaf_state(self, sym):
        """State assigned to a leaf labeled ``sym``, or None if the leaf is literal."""
        d = self.classifiers.get(sym)
        return None if d is None else d.out(d.start)

    def accepts(self, t: Tree) -> bool:
        return accepts(self, t)


@dataclass(frozen=True)
class SizePair:
    vertical: int
    horizontal: int

    def __str__(self):
        return f"[{self.vertical}, {self.horizontal}]"


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    level: str = "error"
    detail: tuple = ()

    def __str__(self):
        return f"{self.level}: {self.kind}: {self.message}"


def validate(a: Sdta) -> list:
    """All invariant violations. Warnings (level "warning") do not make ``a`` invalid."""
    found = []
    for q in sorted_states(a.final - a.vstates):
        found.append(Violation("final not in vstates", f"final state {q!r} is not a vertical state"))
    for sym in sorted(a.classifiers):
        d = a.classifiers[sym]
        if sym not in a.alphabet:
            found.append(Violation("unknown symbol", f"classifier for {sym!r} outside the alphabet"))
        if not d.is_classifier:
            found.append(Violation("not a classifier", f"machine for {sym!r} has no output map"))
            continue
        for p in d.problems():
            found.append(Violation("malformed classifier", f"{sym}: {p}"))
        for letter in sorted(d.letters, key=lambda l: l.sort_key()):
            if isinstance(letter, StateRef) and letter.id not in a.vstates:
                found.append(Violation("dangling letter", f"{sym}: reads unknown vertical state {letter.id!r}"))
            if isinstance(letter, Leaf) and letter.symbol not in a.alphabet:
                found.append(Violation("unknown leaf symbol", f"{sym}: reads leaf {letter.symbol!r}"))
        for h, q in d.output.items():
            if q not in a.vstates:
                found.append(Violation("dangling output", f"{sym}: state {h!r} outputs unknown {q!r}"))
    read = {l.symbol for d in a.classifiers.values() for l in d.letters if isinstance(l, Leaf)}
    for sym in sorted(read & a.alphabet):
        if a.leaf_state(sym) is not None:
            found.append(Violation(
                "ambiguous leaf role",
                f"leaf {sym!r} is assigned a state and also read as a literal letter",
                level="warning",
            ))
    return found


def is_valid(a: Sdta) -> bool:
    return not any(v.level == "error" for v in validate(a))


def contribution(a: Sdta, t: Tree):
    """Letter a subtree contributes to its parent: StateRef, Leaf, or None (no run)."""
    d = a.classifiers.get(t.label)
    if not t.children:
        q = None if d is None else d.out(d.start)
        return Leaf(t.label) if q is None else StateRef(q)
    if d is None:
        return None
    h = d.start
    for c in t.children:
        letter = contribution(a, c)
        if letter is None:
            return None
        h = d.step(h, letter)
        if h is None:
            return None
    q = d.out(h)
    return None if q is None else StateRef(q)


def evaluate(a: Sdta, t: Tree):
    """Vertical state at the root, or None."""
    letter = contribution(a, t)
    return letter.id if isinstance(letter, StateRef) else None


def accepts(a: Sdta, t: Tree) -> bool:
    letter = contribution(a, t)
    return isinstance(letter, StateRef) and letter.id in a.final


def size_of(a: Sdta) -> SizePair:
    return SizePair(len(a.vstates), sum(len(d.states) for d in a.classifiers.values()))


def explore(alphabet, start_of, step, out, is_final, order=None) -> Sdta:
    """Build the reachable part of an SDTA given lazily.

    ``start_of(sym)`` is the classifier start for ``sym`` (None: no
    classifier), ``step(sym, h, letter)`` a horizontal move (None:
    undefined), ``out(sym, h)`` the output (None: undefined) and
    ``is_final(q)`` the acceptance test. ``order``, if given, receives the
    vertical states in discovery order. Vertical and horizontal states are
    discovered together: a vertical state exists once some classifier
    outputs it along a word of already reachable letters.
    """
    syms = sorted(alphabet)
    starts = {s: start_of(s) for s in syms}
    vstates = {}
    letters = []
    for s in syms:
        h0 = starts[s]
        if h0 is None or out(s, h0) is None:
            letters.append(Leaf(s))
    hstates = {s: {} for s in syms if starts[s] is not None}
    trans = {s: {} for s in hstates}
    outputs = {s: {} for s in hstates}
    done = {}
    queue = deque()
    queued = set()

    def enqueue_all():
        for key, n in done.items():
            if n < len(letters) and key not in queued:
                queued.add(key)
                queue.append(key)

    def register(s, h):
        hstates[s][h] = None
        done[(s, h)] = 0
        queued.add((s, h))
        queue.append((s, h))
        q = out(s, h)
        if q is not None:
            outputs[s][h] = q
            if q not in vstates:
                vstates[q] = None
                if order is not None:
                    order.append(q)
                letters.append(StateRef(q))
                enqueue_all()

    for s in hstates:
        register(s, starts[s])
    while queue:
        key = queue.popleft()
        queued.discard(key)
        s, h = key
        while done[key] < len(letters):
            letter = letters[done[key]]
            done[key] += 1
            t = step(s, h, letter)
            if t is None:
                continue
            trans[s][(h, letter)] = t
            if t not in hstates[s]:
                register(s, t)

    classifiers = {
        s: HorizontalMachine(frozenset(hstates[s]), starts[s], trans[s], output=outputs[s])
        for s in hstates
    }
    final = frozenset(q for q in vstates if is_final(q))
    return Sdta(frozenset(vstates), frozenset(syms), final, classifiers)


def trim(a: Sdta) -> Sdta:
    """Reachable part: reachable vertical states and the horizontal states they drive."""
    cls = a.classifiers

    def start_of(s):
        d = cls.get(s)
        return None if d is None else d.start

    return explore(
        a.alphabet,
        start_of,
        lambda s, h, l: cls[s].step(h, l),
        lambda s, h: cls[s].output.get(h),
        lambda q: q in a.final,
    )


def _map_letters(d: HorizontalMachine, fn) -> HorizontalMachine:
    trans = {}
    for (h, l), t in d.trans.items():
        nl = fn(l)
        if nl is not None:
            trans[(h, nl)] = t
    return HorizontalMachine(d.states, d.start, trans, output=dict(d.output))


def lift_leaf_letters(a: Sdta) -> Sdta:
    """Equivalent SDTA whose classifiers never read literal leaf letters.

    Every literal leaf symbol that some classifier reads gets its own
    vertical state (a :class:`LeafState`); transitions on leaf letters that
    can never be contributed are dropped. Returns ``a`` unchanged when there
    is nothing to do.
    """
    read = {l.symbol for d in a.classifiers.values() for l in d.letters if isinstance(l, Leaf)}
    if not read:
        return a
    lift = {s for s in read if s in a.alphabet and a.leaf_state(s) is None}

    def fn(l):
        if isinstance(l, Leaf):
            return StateRef(LeafState(l.symbol)) if l.symbol in lift else None
        return l

    classifiers = {s: _map_letters(d, fn) for s, d in a.classifiers.items()}
    for s in lift:
        d = classifiers.get(s)
        fresh = LeafState(s)
        if d is None:
            classifiers[s] = HorizontalMachine(frozenset([fresh]), fresh, {}, output={fresh: fresh})
            continue
        if fresh in d.states:
            raise ValueError(f"classifier for {s!r} already uses state {fresh!r}")
        trans = dict(d.trans)
        for l, t in d.moves(d.start).items():
            trans[(fresh, l)] = t
        output = dict(d.output)
        output[fresh] = fresh
        classifiers[s] = HorizontalMachine(d.states | {fresh}, fresh, trans, output=output)
    vstates = a.vstates | {LeafState(s) for s in lift}
    return Sdta(vstates, a.alphabet, a.final, classifiers)


def renumber(a: Sdta) -> Sdta:
    """Rename vertical states to 0..k-1 and every classifier's states to 0..n-1.

    Order is the canonical order of the old ids.
    """
    vnum = {q: i for i, q in enumerate(sorted_states(a.vstates))}

    def letter(l):
        return StateRef(vnum[l.id]) if isinstance(l, StateRef) else l

    classifiers = {}
    for s, d in a.classifiers.items():
        hnum = {h: i for i, h in enumerate(sorted_states(d.states))}
        trans = {(hnum[h], letter(l)): hnum[t] for (h, l), t in d.trans.items()}
        out = {hnum[h]: vnum[q] for h, q in d.output.items()}
        classifiers[s] = HorizontalMachine(frozenset(hnum.values()), hnum[d.start], trans, output=out)
    return Sdta(frozenset(vnum.values()), a.alphabet, frozenset(vnum[q] for q in a.final), classifiers)


def is_complete(a: Sdta) -> bool:
    """Every symbol has a classifier that is total on StateRef letters and outputs."""
    letters = [StateRef(q) for q in a.vstates]
    for s in a.alphabet:
        d = a.classifiers.get(s)
        if d is None:
            return False
        for h in d.states:
            if h not in d.output:
                return False
            if any(d.step(h, l) is None for l in letters):
                return False
    return True


def complement(a: Sdta) -> Sdta:
    """SDTA accepting exactly the trees over ``a.alphabet`` that ``a`` rejects.

    Adds at most one vertical state (the reserved sink) beyond those that
    :func:`lift_leaf_letters` introduces.
    """
    a = lift_leaf_letters(a)
    used = set(a.vstates)
    for d in a.classifiers.values():
        used |= d.states
    if SINK in used:
        a = renumber(a)
    if is_complete(a):
        return Sdta(a.vstates, a.alphabet, a.vstates - a.final, dict(a.classifiers))
    vstates = a.vstates | {SINK}
    letters = [StateRef(q) for q in sorted_states(vstates)]
    classifiers = {}
    for s in sorted(a.alphabet):
        d = a.classifiers.get(s) or empty_classifier()
        classifiers[s] = complete(d, letters, sink_output=SINK)
    return Sdta(vstates, a.alphabet, vstates - a.final, classifiers)


def used_states(a: Sdta) -> set:
    out = set(a.vstates)
    for d in a.classifiers.values():
        out |= d.states
    return out


__all__ = [
    "Sdta", "SizePair", "Violation", "validate", "is_valid", "contribution", "evaluate",
    "accepts", "size_of", "explore", "trim", "lift_leaf_letters", "renumber", "is_complete",
    "complement", "canonical_key",
]
