"""Exact bounded-corpus checks without listing every tree.

The corpus of all trees with height <= H and arity <= W over four
letters is astronomically large for H = W = 3 (about 10^25 trees), so
whole-corpus checks run on *summaries*. An algebra maps each tree to a
finite summary computed bottom-up: ``leaf(sym)`` for leaves, and for an
internal node a left-to-right fold ``start -> step(child summary) ->
finish`` over its children. Every property we test (acceptance by an
automaton, membership in ``T_B``, membership in a concatenation) depends
on a tree only through such a summary.

``summaries`` computes, for each height bound ``h``, the set of summaries
realized by trees of height <= h and arity <= W, each with a witness
tree. Since the fold state after ``k`` children depends only on the
children's summaries, the set is computed exactly from the previous
level. Products of algebras give joint summaries, so "A and B agree on
every corpus tree" is decided exactly, with a concrete counterexample
when they do not.
"""

from __future__ import annotations

from dataclasses import dataclass

from .common import DEAD
from .horizontal import Leaf, StateRef
from .trees import Tree, corpus_size, enumerate_trees


class Algebra:
    """Bottom-up summary of trees. Subclasses override the five hooks."""

    def leaf(self, sym):
        raise NotImplementedError

    def start(self, sym):
        raise NotImplementedError

    def step(self, sym, config, child):
        raise NotImplementedError

    def finish(self, sym, config):
        raise NotImplementedError

    def is_dead(self, config) -> bool:
        """True when no continuation can change ``finish`` (lets the search stop early)."""
        return False

    def accept(self, summary) -> bool:
        raise NotImplementedError

    def summarize(self, t: Tree):
        if not t.children:
            return self.leaf(t.label)
        c = self.start(t.label)
        for child in t.children:
            c = self.step(t.label, c, self.summarize(child))
        return self.finish(t.label, c)


def summaries(alg: Algebra, alphabet, max_height, max_width):
    """``out[h]`` maps each summary of a tree with height <= h to a witness tree."""
    syms = sorted(alphabet)
    level = {}
    for s in syms:
        level.setdefault(alg.leaf(s), Tree(s))
    out = [level]
    for _ in range(max_height):
        below = out[-1]
        kids = list(below.items())
        level = dict(below)
        for s in syms:
            frontier = {alg.start(s): ()}
            for _ in range(max_width):
                nxt = {}
                for c, ws in frontier.items():
                    for summ, w in kids:
                        c2 = alg.step(s, c, summ)
                        if c2 not in nxt:
                            nxt[c2] = ws + (w,)
                frontier = {}
                for c, ws in nxt.items():
                    level.setdefault(alg.finish(s, c), Tree(s, ws))
                    if not alg.is_dead(c):
                        frontier[c] = ws
        out.append(level)
    return out


class ProductAlgebra(Algebra):
    """Componentwise product; summaries and configurations are tuples."""

    def __init__(self, *parts):
        self.parts = parts

    def leaf(self, sym):
        return tuple(p.leaf(sym) for p in self.parts)

    def start(self, sym):
        return tuple(p.start(sym) for p in self.parts)

    def step(self, sym, config, child):
        return tuple(p.step(sym, c, x) for p, c, x in zip(self.parts, config, child))

    def finish(self, sym, config):
        return tuple(p.finish(sym, c) for p, c in zip(self.parts, config))

    def is_dead(self, config):
        return all(p.is_dead(c) for p, c in zip(self.parts, config))

    def accept(self, summary):
        return tuple(p.accept(s) for p, s in zip(self.parts, summary))


class SdtaAlgebra(Algebra):
    """Summary = the letter a tree contributes to its parent (StateRef, Leaf or None)."""

    def __init__(self, a):
        self.a = a

    def leaf(self, sym):
        d = self.a.classifiers.get(sym)
        q = None if d is None else d.out(d.start)
        return Leaf(sym) if q is None else StateRef(q)

    def start(self, sym):
        d = self.a.classifiers.get(sym)
        return DEAD if d is None else d.start

    def step(self, sym, config, child):
        if config is DEAD or child is None:
            return DEAD
        h = self.a.classifiers[sym].step(config, child)
        return DEAD if h is None else h

    def finish(self, sym, config):
        if config is DEAD:
            return None
        q = self.a.classifiers[sym].out(config)
        return None if q is None else StateRef(q)

    def is_dead(self, config):
        return config is DEAD

    def accept(self, summary):
        return isinstance(summary, StateRef) and summary.id in self.a.final


class WdtaAlgebra(Algebra):
    """Summary as for SDTAs; the fold runs every acceptor of the symbol in parallel.

    Raises :class:`~hedgeauto.wdta.AmbiguousRun` if two acceptors of one
    symbol accept at a node of some corpus tree.
    """

    def __init__(self, a):
        self.a = a
        self.machines = {s: a.machines_for(s) for s in a.alphabet}

    def _pick(self, sym, config):
        from .wdta import AmbiguousRun

        hits = [q for (q, m), c in zip(self.machines.get(sym, ()), config)
                if c is not DEAD and c in m.accept]
        if len(hits) > 1:
            raise AmbiguousRun(f"states {hits!r} accept at one {sym!r}-node")
        return hits[0] if hits else None

    def leaf(self, sym):
        q = self._pick(sym, self.start(sym))
        return Leaf(sym) if q is None else StateRef(q)

    def start(self, sym):
        return tuple(m.start for _, m in self.machines.get(sym, ()))

    def step(self, sym, config, child):
        if child is None:
            return tuple(DEAD for _ in config)
        out = []
        for (_, m), c in zip(self.machines.get(sym, ()), config):
            t = None if c is DEAD else m.step(c, child)
            out.append(DEAD if t is None else t)
        return tuple(out)

    def finish(self, sym, config):
        q = self._pick(sym, config)
        return None if q is None else StateRef(q)

    def is_dead(self, config):
        return all(c is DEAD for c in config)

    def accept(self, summary):
        return isinstance(summary, StateRef) and summary.id in self.a.final


_BAD = ("bad",)


class TBAlgebra(Algebra):
    """Exact summary for membership in ``T_B``.

    A tree is ``BAD`` (some condition already fails below the root), the
    leaf ``a``, or ``("node", q)``: every internal node is well formed and
    all height-one nodes drive ``B`` to the same state ``q`` at the root.
    While folding the children of a ``sym``-node, the configuration records
    whether the children are leaves or nodes and, for nodes, the common
    state ``B`` reaches after also reading ``sym``.
    """

    def __init__(self, n):
        from .witnesses import string_dfa_B

        self.dfa = string_dfa_B(n)

    def leaf(self, sym):
        return "leaf" if sym == "a" else _BAD

    def start(self, sym):
        return ("empty",)

    def step(self, sym, config, child):
        if config is _BAD or child is _BAD:
            return _BAD
        if child == "leaf":
            kind = ("leaves", self.dfa.trans[(self.dfa.start, sym)])
        else:
            kind = ("nodes", self.dfa.trans[(child[1], sym)])
        if config == ("empty",):
            return kind
        return config if config == kind else _BAD

    def finish(self, sym, config):
        if config is _BAD:
            return _BAD
        return ("node", config[1])

    def is_dead(self, config):
        return config is _BAD

    def accept(self, summary):
        if summary == "leaf":
            return True
        return summary is not _BAD and summary[1] in self.dfa.finals


class BooleanAlgebra(ProductAlgebra):
    """Acceptance = ``op`` applied to the component acceptances."""

    def __init__(self, op, *parts):
        super().__init__(*parts)
        self.op = op

    def accept(self, summary):
        return self.op(*super().accept(summary))


class ConcatAlgebra(Algebra):
    """Decomposition summary for ``L(inner) . L(outer)``.

    Summary of ``t``: (outer letter of ``t``, inner letter of ``t``, set of
    outer letters of ``t[u <- leaf s]`` over every node ``u`` whose subtree
    is in ``L(inner)`` and every outer symbol ``s``). ``t`` is in the
    concatenation iff that set holds a final outer state.
    """

    def __init__(self, inner, outer):
        self.inner = SdtaAlgebra(inner)
        self.outer = SdtaAlgebra(outer)
        self.plugs = frozenset(self.outer.leaf(s) for s in sorted(outer.alphabet))

    def _subs(self, inner_letter):
        return self.plugs if self.inner.accept(inner_letter) else frozenset()

    def leaf(self, sym):
        i = self.inner.leaf(sym)
        return (self.outer.leaf(sym), i, self._subs(i))

    def start(self, sym):
        o = self.outer.start(sym)
        return (o, self.inner.start(sym), frozenset() if o is DEAD else frozenset())

    def step(self, sym, config, child):
        o, i, subs = config
        co, ci, csubs = child
        new = set()
        for h in subs:
            t = self.outer.step(sym, h, co)
            if t is not DEAD:
                new.add(t)
        for letter in csubs:
            t = self.outer.step(sym, o, letter)
            if t is not DEAD:
                new.add(t)
        return (self.outer.step(sym, o, co), self.inner.step(sym, i, ci), frozenset(new))

    def finish(self, sym, config):
        o, i, subs = config
        il = self.inner.finish(sym, i)
        letters = {self.outer.finish(sym, h) for h in subs} - {None}
        return (self.outer.finish(sym, o), il, frozenset(letters) | self._subs(il))

    def is_dead(self, config):
        o, i, subs = config
        return o is DEAD and i is DEAD and not subs

    def accept(self, summary):
        return any(self.outer.accept(l) for l in summary[2])


@dataclass(frozen=True)
class CorpusSpec:
    alphabet: frozenset
    max_height: int = 3
    max_width: int = 3

    def __post_init__(self):
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        if self.max_height < 0 or self.max_width < 1:
            raise ValueError("need max_height >= 0 and max_width >= 1")

    @property
    def size(self):
        return corpus_size(len(self.alphabet), self.max_height, self.max_width)

    def trees(self):
        return enumerate_trees(self.alphabet, self.max_height, self.max_width)


def first_disagreement(alg: Algebra, spec: CorpusSpec, differ):
    """A corpus tree whose joint summary satisfies ``differ(accept tuple)``, or None."""
    levels = summaries(alg, spec.alphabet, spec.max_height, spec.max_width)
    for summ, tree in levels[-1].items():
        if differ(alg.accept(summ)):
            return tree
    return None


def agree(alg1: Algebra, alg2: Algebra, spec: CorpusSpec):
    """First corpus tree on which the two acceptance predicates differ, or None."""
    return first_disagreement(ProductAlgebra(alg1, alg2), spec, lambda r: r[0] != r[1])


def accepted_count(alg: Algebra, spec: CorpusSpec) -> int:
    """Number of accepted corpus trees, by enumeration (small corpora only)."""
    return sum(1 for t in spec.trees() if alg.accept(alg.summarize(t)))


__all__ = [
    "Algebra", "summaries", "ProductAlgebra", "SdtaAlgebra", "WdtaAlgebra", "TBAlgebra",
    "BooleanAlgebra", "ConcatAlgebra", "CorpusSpec", "first_disagreement", "agree",
    "accepted_count",
]
