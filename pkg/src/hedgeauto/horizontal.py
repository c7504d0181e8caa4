"""Horizontal DFAs over the mixed letter alphabet (vertical states and leaf symbols).

A :class:`HorizontalMachine` plays one of two roles:

* acceptor (``accept`` is set): recognizes a horizontal language, as used
  by weakly deterministic automata;
* classifier (``output`` is set): a Moore machine whose output map assigns
  a vertical state to the word read, as used by strongly deterministic
  automata.

Machines may be incomplete. A missing transition means "no run"; callers
get ``None`` back rather than an exception.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Optional

from .common import DEAD, SINK, canonical_key, sorted_states


@dataclass(frozen=True)
class StateRef:
    """A child that carries vertical state ``id``."""

    id: Hashable

    def sort_key(self):
        return (0, canonical_key(self.id))

    def __repr__(self):
        return f"q{self.id!r}" if isinstance(self.id, int) else f"q<{self.id!r}>"


@dataclass(frozen=True)
class Leaf:
    """A leaf child read as its literal symbol."""

    symbol: str

    def sort_key(self):
        return (1, self.symbol)

    def __repr__(self):
        return f"'{self.symbol}'"


def letter_key(letter):
    return letter.sort_key()


def sorted_letters(letters):
    return sorted(letters, key=letter_key)


@dataclass(frozen=True, eq=True)
class HorizontalMachine:
    states: frozenset
    start: Hashable
    trans: dict
    accept: Optional[frozenset] = None
    output: Optional[dict] = None
    _delta: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        if self.accept is not None:
            object.__setattr__(self, "accept", frozenset(self.accept))
        if (self.accept is None) == (self.output is None):
            raise ValueError("exactly one of accept/output must be given")
        delta = {s: {} for s in self.states}
        for (s, letter), t in self.trans.items():
            delta.setdefault(s, {})[letter] = t
        object.__setattr__(self, "_delta", delta)

    @property
    def is_classifier(self):
        return self.output is not None

    def __len__(self):
        return len(self.states)

    def step(self, s, letter):
        row = self._delta.get(s)
        return None if row is None else row.get(letter)

    def moves(self, s):
        """Outgoing transitions of ``s`` as a letter -> state dict."""
        return self._delta.get(s, {})

    @property
    def letters(self):
        return frozenset(letter for (_, letter) in self.trans)

    def is_final(self, s):
        if self.accept is not None:
            return s in self.accept
        return s in self.output

    def out(self, s):
        return None if s is None else self.output.get(s)

    def problems(self):
        """Structural defects, as human-readable strings."""
        found = []
        if self.start not in self.states:
            found.append(f"start {self.start!r} is not a state")
        for (s, letter), t in self.trans.items():
            if s not in self.states or t not in self.states:
                found.append(f"transition {s!r} --{letter!r}--> {t!r} uses an unknown state")
            if not isinstance(letter, (StateRef, Leaf)):
                found.append(f"transition letter {letter!r} is not a StateRef or Leaf")
        if self.accept is not None and not self.accept <= self.states:
            found.append("accept set contains unknown states")
        if self.output is not None and not set(self.output) <= self.states:
            found.append("output map is defined on unknown states")
        return found


def acceptor(states, start, trans, accept):
    return HorizontalMachine(frozenset(states), start, dict(trans), accept=frozenset(accept))


def classifier(states, start, trans, output):
    return HorizontalMachine(frozenset(states), start, dict(trans), output=dict(output))


def empty_classifier():
    return HorizontalMachine(frozenset([0]), 0, {}, output={})


def run(m: HorizontalMachine, w: Iterable) -> Optional[Hashable]:
    s = m.start
    for letter in w:
        s = m.step(s, letter)
        if s is None:
            return None
    return s


def classify(m: HorizontalMachine, w: Iterable):
    return m.out(run(m, w))


def accepts(m: HorizontalMachine, w: Iterable) -> bool:
    s = run(m, w)
    return s is not None and s in m.accept


def reachable_states(m: HorizontalMachine, letters=None) -> list:
    """States reachable from start, in BFS order. ``letters`` restricts the alphabet."""
    allowed = None if letters is None else set(letters)
    seen = {m.start: None}
    queue = deque([m.start])
    while queue:
        s = queue.popleft()
        for letter in sorted_letters(m.moves(s)):
            if allowed is not None and letter not in allowed:
                continue
            t = m.moves(s)[letter]
            if t not in seen:
                seen[t] = None
                queue.append(t)
    return list(seen)


def restrict(m: HorizontalMachine, letters) -> HorizontalMachine:
    """Drop transitions on letters outside ``letters`` and unreachable states."""
    letters = set(letters)
    live = reachable_states(m, letters)
    live_set = set(live)
    trans = {(s, l): t for (s, l), t in m.trans.items() if s in live_set and l in letters}
    if m.is_classifier:
        out = {s: v for s, v in m.output.items() if s in live_set}
        return HorizontalMachine(frozenset(live), m.start, trans, output=out)
    return HorizontalMachine(frozenset(live), m.start, trans, accept=m.accept & live_set)


def relabel_letters(m: HorizontalMachine, letters, project: Callable) -> HorizontalMachine:
    """Machine over ``letters`` where letter ``l`` behaves like ``project(l)`` in ``m``.

    ``project`` may return None, meaning the letter is unreadable.
    """
    letters = sorted_letters(letters)
    trans = {}
    for s in m.states:
        row = m.moves(s)
        for l in letters:
            inner = project(l)
            if inner is not None and inner in row:
                trans[(s, l)] = row[inner]
    if m.is_classifier:
        return HorizontalMachine(m.states, m.start, trans, output=dict(m.output))
    return HorizontalMachine(m.states, m.start, trans, accept=m.accept)


def _identity_pair(letter):
    return letter, letter


def dfa_product(m1, m2, mode="and", letters=None, project=None, combine=None):
    """Reachable product of two horizontal machines.

    ``mode="and"`` pairs states and is defined only where both sides are;
    ``mode="or"`` pads each side with :data:`DEAD` and keeps going while
    either side is alive (the pair of two dead components is never built).

    ``project(letter) -> (l1, l2)`` maps a product letter to the component
    letters (None: that component cannot read it). ``letters`` is the
    product alphabet; both default to the shared alphabet with identity
    projection.

    Acceptor inputs produce an acceptor (both/either accepting). Otherwise
    ``combine(o1, o2)`` builds the output from the component outputs, where
    a dead or undefined component contributes None; the default combine pairs
    the outputs, padding with DEAD in "or" mode.
    """
    if mode not in ("and", "or"):
        raise ValueError(f"unknown product mode {mode!r}")
    if letters is None:
        letters = m1.letters | m2.letters
    letters = sorted_letters(letters)
    project = project or _identity_pair
    padded = mode == "or"

    def side(m, s, l):
        if s is DEAD or l is None:
            return None
        return m.step(s, l)

    start = (m1.start, m2.start)
    seen = {start: None}
    queue = deque([start])
    trans = {}
    while queue:
        pair = queue.popleft()
        s1, s2 = pair
        for l in letters:
            l1, l2 = project(l)
            t1, t2 = side(m1, s1, l1), side(m2, s2, l2)
            if padded:
                if t1 is None and t2 is None:
                    continue
                t1 = DEAD if t1 is None else t1
                t2 = DEAD if t2 is None else t2
            elif t1 is None or t2 is None:
                continue
            nxt = (t1, t2)
            trans[(pair, l)] = nxt
            if nxt not in seen:
                seen[nxt] = None
                queue.append(nxt)
    states = frozenset(seen)

    if combine is None and not m1.is_classifier and not m2.is_classifier:
        def fin(m, s):
            return s is not DEAD and s in m.accept
        if padded:
            acc = {p for p in states if fin(m1, p[0]) or fin(m2, p[1])}
        else:
            acc = {p for p in states if fin(m1, p[0]) and fin(m2, p[1])}
        return HorizontalMachine(states, start, trans, accept=frozenset(acc))

    def comp_out(m, s):
        if s is DEAD:
            return None
        if m.is_classifier:
            return m.output.get(s)
        return True if s in m.accept else None

    if combine is None:
        if padded:
            def combine(o1, o2):
                if o1 is None and o2 is None:
                    return None
                return (DEAD if o1 is None else o1, DEAD if o2 is None else o2)
        else:
            def combine(o1, o2):
                if o1 is None or o2 is None:
                    return None
                return (o1, o2)
    output = {}
    for p in states:
        o = combine(comp_out(m1, p[0]), comp_out(m2, p[1]))
        if o is not None:
            output[p] = o
    return HorizontalMachine(states, start, trans, output=output)


_BOTTOM = object()


def _moore_blocks(objects, letters, succ, initial):
    """Coarsest partition of ``objects`` refining ``initial`` and stable under ``succ``.

    ``succ(obj, letter)`` must return an object from ``objects``.
    Returns a dict object -> block number.
    """
    ids = {}
    block = {}
    for o in objects:
        block[o] = ids.setdefault(initial(o), len(ids))
    count = len(ids)
    while True:
        ids = {}
        new = {}
        for o in objects:
            sig = (block[o], tuple(block[succ(o, l)] for l in letters))
            new[o] = ids.setdefault(sig, len(ids))
        block = new
        if len(ids) == count:
            return block
        count = len(ids)


def dfa_minimize(m: HorizontalMachine, letters=None) -> HorizontalMachine:
    """Minimal trim machine with the same language (acceptor) or classification.

    Unreachable states and states from which no output/acceptance is
    reachable are removed; for classifiers the initial partition is by
    output value. ``letters`` restricts the alphabet considered.
    """
    if letters is None:
        letters = m.letters
    letters = sorted_letters(letters)
    live = reachable_states(m, letters)
    objects = live + [_BOTTOM]

    def succ(s, l):
        if s is _BOTTOM:
            return _BOTTOM
        t = m.step(s, l)
        return _BOTTOM if t is None else t

    if m.is_classifier:
        def initial(s):
            return None if s is _BOTTOM else m.output.get(s)
    else:
        def initial(s):
            return s is not _BOTTOM and s in m.accept

    block = _moore_blocks(objects, letters, succ, initial)
    dead = block[_BOTTOM]
    rep = {}
    for s in live:
        rep.setdefault(block[s], s)
    if block[m.start] == dead:
        if m.is_classifier:
            return HorizontalMachine(frozenset([0]), 0, {}, output={})
        return HorizontalMachine(frozenset([0]), 0, {}, accept=frozenset())
    trans = {}
    for b, s in rep.items():
        if b == dead:
            continue
        for l in letters:
            t = m.step(s, l)
            if t is not None and block[t] != dead:
                trans[(b, l)] = block[t]
    states = frozenset(b for b in rep if b != dead)
    if m.is_classifier:
        out = {b: m.output[s] for b, s in rep.items() if b != dead and s in m.output}
        res = HorizontalMachine(states, block[m.start], trans, output=out)
    else:
        acc = frozenset(b for b, s in rep.items() if b != dead and s in m.accept)
        res = HorizontalMachine(states, block[m.start], trans, accept=acc)
    return canonicalize(res)


def canonicalize(m: HorizontalMachine) -> HorizontalMachine:
    """Renumber reachable states 0.. in BFS order (letters in canonical order)."""
    order = reachable_states(m)
    num = {s: i for i, s in enumerate(order)}
    trans = {(num[s], l): num[t] for (s, l), t in m.trans.items() if s in num}
    if m.is_classifier:
        out = {num[s]: v for s, v in m.output.items() if s in num}
        return HorizontalMachine(frozenset(num.values()), 0, trans, output=out)
    acc = frozenset(num[s] for s in m.accept if s in num)
    return HorizontalMachine(frozenset(num.values()), 0, trans, accept=acc)


def isomorphic(m1: HorizontalMachine, m2: HorizontalMachine) -> bool:
    """Letter-preserving isomorphism of the reachable parts."""
    if m1.is_classifier != m2.is_classifier:
        return False
    return canonicalize(m1) == canonicalize(m2)


def complete(m: HorizontalMachine, letters, sink_output=None) -> HorizontalMachine:
    """Total machine over ``letters``; missing moves go to a fresh :data:`SINK` state.

    For classifiers, ``sink_output`` (if given) is also assigned to every
    state whose output is undefined.
    """
    letters = sorted_letters(letters)
    trans = dict(m.trans)
    need_sink = any(m.step(s, l) is None for s in m.states for l in letters)
    states = set(m.states)
    if need_sink:
        if SINK in states:
            raise ValueError("machine already uses the reserved sink state")
        states.add(SINK)
        for s in states:
            for l in letters:
                if (s, l) not in trans:
                    trans[(s, l)] = SINK
    if m.is_classifier:
        out = dict(m.output)
        if sink_output is not None:
            for s in states:
                out.setdefault(s, sink_output)
        return HorizontalMachine(frozenset(states), m.start, trans, output=out)
    return HorizontalMachine(frozenset(states), m.start, trans, accept=m.accept)


def dfa_complement_acceptor(m: HorizontalMachine, letters=None) -> HorizontalMachine:
    """Acceptor for the complement of L(m) over ``letters`` (default: m's letters)."""
    if m.is_classifier:
        raise ValueError("complement needs an acceptor")
    if letters is None:
        letters = m.letters
    c = complete(m, letters)
    return HorizontalMachine(c.states, c.start, c.trans, accept=c.states - c.accept)


def common_word(m1: HorizontalMachine, m2: HorizontalMachine):
    """A shortest word accepted by both acceptors, or None."""
    start = (m1.start, m2.start)
    parent = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        s1, s2 = pair
        if s1 in m1.accept and s2 in m2.accept:
            word = []
            while parent[pair] is not None:
                pair, l = parent[pair]
                word.append(l)
            return tuple(reversed(word))
        row2 = m2.moves(s2)
        for l in sorted_letters(m1.moves(s1)):
            if l in row2:
                nxt = (m1.moves(s1)[l], row2[l])
                if nxt not in parent:
                    parent[nxt] = (pair, l)
                    queue.append(nxt)
    return None


def acceptor_disjoint(m1: HorizontalMachine, m2: HorizontalMachine) -> bool:
    return common_word(m1, m2) is None


def is_empty(m: HorizontalMachine) -> bool:
    live = reachable_states(m)
    if m.is_classifier:
        return not any(s in m.output for s in live)
    return not any(s in m.accept for s in live)


def union_acceptors(machines, letters=None) -> HorizontalMachine:
    """Minimal acceptor for the union of several acceptors."""
    machines = list(machines)
    if not machines:
        return HorizontalMachine(frozenset([0]), 0, {}, accept=frozenset())
    acc = machines[0]
    for m in machines[1:]:
        acc = dfa_minimize(dfa_product(acc, m, mode="or", letters=letters), letters)
    return dfa_minimize(acc, letters)


def words(letters, max_len):
    """All words over ``letters`` up to ``max_len``, shortest first."""
    letters = sorted_letters(letters)
    layer = [()]
    yield ()
    for _ in range(max_len):
        layer = [w + (l,) for w in layer for l in letters]
        yield from layer


__all__ = [
    "StateRef", "Leaf", "HorizontalMachine", "acceptor", "classifier", "empty_classifier",
    "run", "classify", "accepts", "dfa_product", "dfa_minimize", "dfa_complement_acceptor",
    "acceptor_disjoint", "common_word", "canonicalize", "isomorphic", "complete",
    "relabel_letters", "restrict", "reachable_states", "union_acceptors", "is_empty",
    "sorted_letters", "letter_key", "words", "sorted_states",
]
