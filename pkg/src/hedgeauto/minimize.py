"""SDTA minimization.

Two vertical states are equivalent when every context (a tree with one
hole) accepts both or neither. The partition is computed as the coarsest
relation that is stable for vertical and horizontal states at once:

* vertical ``p ~ q`` needs equal finality and, for every symbol and every
  reachable horizontal state ``s``, ``step(s, p) ~ step(s, q)``;
* horizontal ``s ~ t`` (same symbol) needs ``out(s) ~ out(t)`` and
  ``step(s, l) ~ step(t, l)`` for every usable letter ``l``.

"No state" and "no run" are objects of the refinement too, so states with
no accepting context end up in the dead block.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .common import canonical_key, sorted_states
from .horizontal import (
    HorizontalMachine,
    Leaf,
    StateRef,
    canonicalize,
    dfa_minimize,
    reachable_states,
    sorted_letters,
)
from .sdta import Sdta, explore, trim
from .trees import Tree, positions, subtree

_NONE = ("none",)


def reachable_vertical(a: Sdta) -> set:
    """Vertical states assigned to some tree (least fixpoint over reachable letters)."""
    return set(trim(a).vstates)


def _literal_leaves(a: Sdta):
    return [Leaf(s) for s in sorted(a.alphabet) if a.leaf_state(s) is None]


def usable_letters(a: Sdta, reach=None):
    if reach is None:
        reach = reachable_vertical(a)
    return sorted_letters([StateRef(q) for q in reach] + _literal_leaves(a))


@dataclass(frozen=True)
class Partition:
    """Blocks of equivalent reachable states; ``dead`` is the block with no accepting context."""

    blocks: tuple
    dead: frozenset = frozenset()

    def block_of(self, q) -> Optional[frozenset]:
        for b in self.blocks:
            if q in b:
                return b
        return None

    def same(self, p, q) -> bool:
        b = self.block_of(p)
        return b is not None and q in b

    @property
    def all_singletons(self):
        return all(len(b) == 1 for b in self.blocks)

    def __len__(self):
        return len(self.blocks)


def _refine(a: Sdta, reach):
    letters = usable_letters(a, reach)
    vert = [("v", q) for q in sorted_states(reach)] + [("v", _NONE)]
    hor = {}
    for s in sorted(a.classifiers):
        d = a.classifiers[s]
        hor[s] = [("h", s, h) for h in reachable_states(d, letters)] + [("h", s, _NONE)]
    objects = vert + [o for s in sorted(hor) for o in hor[s]]

    def vobj(q):
        return ("v", _NONE if q is None or q not in reach else q)

    def hobj(s, h):
        return ("h", s, _NONE if h is None else h)

    block = {}
    for o in objects:
        if o[0] == "v":
            block[o] = ("v", o[1] is not _NONE and o[1] in a.final)
        else:
            block[o] = ("h", o[1])
    ids = {}
    block = {o: ids.setdefault(k, len(ids)) for o, k in block.items()}
    count = len(ids)
    syms = sorted(hor)
    while True:
        new = {}
        ids = {}
        for o in objects:
            if o[0] == "v":
                q = o[1]
                if q is _NONE:
                    sig = tuple(block[hobj(s, None)] for s in syms for _ in hor[s])
                else:
                    sig = tuple(
                        block[hobj(s, None if h[2] is _NONE else a.classifiers[s].step(h[2], StateRef(q)))]
                        for s in syms for h in hor[s]
                    )
            else:
                s, h = o[1], o[2]
                d = a.classifiers[s]
                if h is _NONE:
                    sig = (block[vobj(None)],) + tuple(block[hobj(s, None)] for _ in letters)
                else:
                    sig = (block[vobj(d.out(h))],) + tuple(block[hobj(s, d.step(h, l))] for l in letters)
            new[o] = ids.setdefault((block[o], sig), len(ids))
        block = new
        if len(ids) == count:
            return block, letters, hor
        count = len(ids)


def inequivalence_partition(a: Sdta) -> Partition:
    """Partition of the reachable vertical states into context-equivalence classes."""
    reach = reachable_vertical(a)
    block, _, _ = _refine(a, reach)
    groups = {}
    for q in sorted_states(reach):
        groups.setdefault(block[("v", q)], []).append(q)
    dead_id = block[("v", _NONE)]
    blocks = tuple(frozenset(g) for g in groups.values())
    return Partition(blocks, frozenset(groups.get(dead_id, ())))


def minimize_sdta(a: Sdta) -> Sdta:
    """Minimal SDTA for ``L(a)``.

    Vertical states are named by the least member (canonical order) of
    their block; classifiers are rebuilt over the merged letters and
    Moore-minimized. Symbols whose classifier does nothing are dropped.
    """
    reach = reachable_vertical(a)
    block, letters, hor = _refine(a, reach)
    dead_v = block[("v", _NONE)]
    rep = {}
    for q in sorted_states(reach):
        b = block[("v", q)]
        if b != dead_v:
            rep.setdefault(b, q)
    name = {q: rep[block[("v", q)]] for q in reach if block[("v", q)] != dead_v}

    def letter_map(l):
        if isinstance(l, StateRef):
            return StateRef(name[l.id]) if l.id in name else None
        return l

    classifiers = {}
    for s in sorted(hor):
        d = a.classifiers[s]
        dead_h = block[("h", s, _NONE)]
        hrep = {}
        for o in hor[s]:
            if o[2] is not _NONE and block[o] != dead_h:
                hrep.setdefault(block[o], o[2])
        if block[("h", s, d.start)] == dead_h:
            continue
        trans = {}
        output = {}
        for b, h in hrep.items():
            for l in letters:
                nl = letter_map(l)
                t = d.step(h, l)
                if nl is None or t is None or block[("h", s, t)] == dead_h:
                    continue
                trans[(b, nl)] = block[("h", s, t)]
            q = d.out(h)
            if q is not None and q in name:
                output[b] = name[q]
        m = HorizontalMachine(frozenset(hrep), block[("h", s, d.start)], trans, output=output)
        classifiers[s] = dfa_minimize(m)
    vstates = frozenset(name.values())
    return Sdta(vstates, a.alphabet, frozenset(q for q in vstates if q in a.final), classifiers)


def canonical_form(a: Sdta) -> Sdta:
    """Renaming of the trimmed automaton that depends only on its structure.

    Vertical states become 0.. in discovery order and every classifier is
    renumbered breadth-first, so two SDTAs are isomorphic iff their
    canonical forms are equal.
    """
    order = []
    cls = a.classifiers

    def start_of(s):
        d = cls.get(s)
        return None if d is None else d.start

    t = explore(a.alphabet, start_of, lambda s, h, l: cls[s].step(h, l),
                lambda s, h: cls[s].output.get(h), lambda q: q in a.final, order=order)
    num = {q: i for i, q in enumerate(order)}
    classifiers = {}
    for s, d in t.classifiers.items():
        trans = {}
        for (h, l), g in d.trans.items():
            trans[(h, StateRef(num[l.id]) if isinstance(l, StateRef) else l)] = g
        out = {h: num[q] for h, q in d.output.items()}
        m = canonicalize(HorizontalMachine(d.states, d.start, trans, output=out))
        if m.trans or m.output:
            classifiers[s] = m
    return Sdta(frozenset(num.values()), t.alphabet, frozenset(num[q] for q in t.final), classifiers)


def sdta_isomorphic(a: Sdta, b: Sdta) -> bool:
    return canonical_form(a) == canonical_form(b)


# ---------------------------------------------------------------- contexts

HOLE = "x"


@dataclass(frozen=True)
class Context:
    """A tree with exactly one marked leaf, the hole."""

    tree: Tree
    hole: tuple

    def __post_init__(self):
        node = subtree(self.tree, self.hole)
        if node.children:
            raise ValueError("the hole must be a leaf")

    def __str__(self):
        return _show(self.tree, self.hole)


def _show(t, hole):
    if hole == ():
        return HOLE
    if not t.children:
        return t.label
    parts = [_show(c, hole[1:]) if hole and hole[0] == i else str(c) for i, c in enumerate(t.children)]
    return t.label + "(" + ",".join(parts) + ")"


def plug_contribution(a: Sdta, ctx: Context, state):
    """Letter at the root of ``ctx`` when the hole carries vertical ``state``."""
    from .sdta import contribution

    def go(t, u):
        if u == ():
            return StateRef(state)
        d = a.classifiers.get(t.label)
        if d is None:
            return None
        h = d.start
        for i, c in enumerate(t.children):
            letter = go(c, u[1:]) if i == u[0] else contribution(a, c)
            if letter is None:
                return None
            h = d.step(h, letter)
            if h is None:
                return None
        q = d.out(h)
        return None if q is None else StateRef(q)

    return go(ctx.tree, ctx.hole)


def plug_accepts(a: Sdta, ctx: Context, state) -> bool:
    r = plug_contribution(a, ctx, state)
    return isinstance(r, StateRef) and r.id in a.final


def context_distinguish_oracle(a: Sdta, p, q, max_height=4, max_width=3) -> Optional[Context]:
    """A context within the bounds that accepts exactly one of ``p``, ``q``, or None.

    Exhaustive over the bounded contexts, but computed on summaries: a
    context is represented by the pair of root letters it yields for ``p``
    and ``q``, and plain subtrees by their contributions, so contexts with
    the same summary are explored once.
    """
    from .corpus import SdtaAlgebra, summaries

    plain = summaries(SdtaAlgebra(a), a.alphabet, max(max_height - 1, 0), max_width)
    hole_tree = Tree(HOLE)
    layer = {(StateRef(p), StateRef(q)): (hole_tree, ())}
    known = dict(layer)

    def fin(r):
        return isinstance(r, StateRef) and r.id in a.final

    def check(found):
        for (rp, rq), (t, u) in found.items():
            if fin(rp) != fin(rq):
                return Context(t, u)
        return None

    hit = check(layer)
    if hit:
        return hit
    for height in range(1, max_height + 1):
        below = plain[height - 1]
        ctxs = list(known.items())
        new = {}
        for s in sorted(a.classifiers):
            d = a.classifiers[s]
            # configurations: (hp, hq, used) -> (kids, hole index)
            frontier = {(d.start, d.start, False): ((), None)}
            for _ in range(max_width):
                nxt = {}
                for (hp, hq, used), (kids, hi) in frontier.items():
                    for letter, tree in below.items():
                        if letter is None:
                            continue
                        key = (_step(d, hp, letter), _step(d, hq, letter), used)
                        if key[0] is None and key[1] is None:
                            continue
                        nxt.setdefault(key, (kids + (tree,), hi))
                    if used:
                        continue
                    for (cp, cq), (ct, cu) in ctxs:
                        key = (_step(d, hp, cp), _step(d, hq, cq), True)
                        if key[0] is None and key[1] is None:
                            continue
                        nxt.setdefault(key, (kids + (ct,), (len(kids), cu)))
                for (hp, hq, used), (kids, hi) in nxt.items():
                    if not used:
                        continue
                    pair = (_out(d, hp), _out(d, hq))
                    if pair not in known and pair not in new:
                        i, cu = hi
                        new[pair] = (Tree(s, kids), (i,) + cu)
                frontier = nxt
        hit = check(new)
        if hit:
            return hit
        known.update(new)
    return None


def _step(d, h, letter):
    if h is None or letter is None:
        return None
    return d.step(h, letter)


def _out(d, h):
    q = d.out(h)
    return None if q is None else StateRef(q)


def brute_force_contexts(alphabet, max_height, max_width):
    """Every context over ``alphabet`` within the bounds (small bounds only)."""
    from .trees import enumerate_trees

    plain = {}
    for t in enumerate_trees(alphabet, max(max_height - 1, 0), max_width):
        plain.setdefault(t.height, []).append(t)
    out = [Context(Tree(HOLE), ())]
    by_height = {0: list(out)}
    for h in range(1, max_height + 1):
        upto = [c for k in range(h) for c in by_height.get(k, [])]
        trees = [t for k in range(h) for t in plain.get(k, [])]
        layer = []
        for s in sorted(alphabet):
            for k in range(1, max_width + 1):
                for i in range(k):
                    for ctx in upto:
                        for rest in _tuples(trees, k - 1):
                            kids = rest[:i] + (ctx.tree,) + rest[i:]
                            t = Tree(s, kids)
                            if t.height == h:
                                layer.append(Context(t, (i,) + ctx.hole))
        by_height[h] = layer
        out.extend(layer)
    return out


def _tuples(items, k):
    import itertools
    return itertools.product(items, repeat=k)


__all__ = [
    "reachable_vertical", "usable_letters", "Partition", "inequivalence_partition",
    "minimize_sdta", "canonical_form", "sdta_isomorphic", "Context", "plug_contribution",
    "plug_accepts", "context_distinguish_oracle", "brute_force_contexts", "HOLE",
]
