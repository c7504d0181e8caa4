"""Bounded language oracles.

Small corpora are checked tree by tree. Larger ones go through the exact
summary engine in :mod:`hedgeauto.corpus`, which decides the same
question for every tree in the corpus without listing them.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Optional

from ..corpus import (
    BooleanAlgebra,
    ConcatAlgebra,
    CorpusSpec,
    ProductAlgebra,
    SdtaAlgebra,
    WdtaAlgebra,
    first_disagreement,
)
from ..sdta import Sdta, accepts
from ..trees import Tree, positions, substitute, subtree
from ..wdta import Wdta, accepts_wdta

ENUMERATION_LIMIT = 200_000


@dataclass(frozen=True)
class Verdict:
    ok: bool
    counterexample: Optional[Tree] = None

    def __bool__(self):
        return self.ok


def algebra_for(x):
    if isinstance(x, Sdta):
        return SdtaAlgebra(x)
    if isinstance(x, Wdta):
        return WdtaAlgebra(x)
    raise TypeError(f"not an automaton: {type(x).__name__}")


def accepts_any(x, t: Tree) -> bool:
    return accepts(x, t) if isinstance(x, Sdta) else accepts_wdta(x, t)


def _use_enumeration(spec, method):
    if method == "enumerate":
        return True
    if method == "summary":
        return False
    return spec.size <= ENUMERATION_LIMIT


def language_equal(x, y, spec: CorpusSpec, method="auto") -> Verdict:
    """Do ``x`` and ``y`` accept the same trees of the corpus? Reports the first difference.

    ``method`` is "enumerate" (tree by tree), "summary" (exact summary
    engine) or "auto" (enumerate small corpora only).
    """
    if _use_enumeration(spec, method):
        for t in spec.trees():
            if accepts_any(x, t) != accepts_any(y, t):
                return Verdict(False, t)
        return Verdict(True)
    t = first_disagreement(ProductAlgebra(algebra_for(x), algebra_for(y)), spec, lambda r: r[0] != r[1])
    return Verdict(t is None, t)


def concat_membership_oracle(t: Tree, inner, outer) -> bool:
    """Is ``t = t'(u <- s)`` with ``s`` in ``L(inner)`` and ``t'`` in ``L(outer)``?

    Tries every node ``u`` of ``t`` and every outer symbol as the label of
    the replaced leaf.
    """
    for u in positions(t):
        if not accepts_any(inner, subtree(t, u)):
            continue
        for sym in sorted(outer.alphabet):
            if accepts_any(outer, substitute(t, u, Tree(sym))):
                return True
    return False


def check_concat(result, inner: Sdta, outer: Sdta, spec: CorpusSpec, method="auto") -> Verdict:
    """Does ``result`` accept exactly the corpus trees in ``L(inner) . L(outer)``?"""
    if _use_enumeration(spec, method):
        for t in spec.trees():
            if accepts_any(result, t) != concat_membership_oracle(t, inner, outer):
                return Verdict(False, t)
        return Verdict(True)
    alg = ProductAlgebra(algebra_for(result), ConcatAlgebra(inner, outer))
    t = first_disagreement(alg, spec, lambda r: r[0] != r[1])
    return Verdict(t is None, t)


_OPS = {"union": operator.or_, "intersection": operator.and_}


def check_boolean(result, op: str, a1, a2, spec: CorpusSpec, method="auto") -> Verdict:
    """Does ``result`` accept exactly the corpus trees where ``op`` of the inputs holds?"""
    fn = _OPS[op]
    if _use_enumeration(spec, method):
        for t in spec.trees():
            if accepts_any(result, t) != fn(accepts_any(a1, t), accepts_any(a2, t)):
                return Verdict(False, t)
        return Verdict(True)
    alg = ProductAlgebra(algebra_for(result), BooleanAlgebra(fn, algebra_for(a1), algebra_for(a2)))
    t = first_disagreement(alg, spec, lambda r: r[0] != r[1])
    return Verdict(t is None, t)


def check_complement(result, a, spec: CorpusSpec, method="auto") -> Verdict:
    """Does ``result`` accept exactly the corpus trees ``a`` rejects?"""
    if _use_enumeration(spec, method):
        for t in spec.trees():
            if accepts_any(result, t) == accepts_any(a, t):
                return Verdict(False, t)
        return Verdict(True)
    alg = ProductAlgebra(algebra_for(result), algebra_for(a))
    t = first_disagreement(alg, spec, lambda r: r[0] == r[1])
    return Verdict(t is None, t)


def check_against(x, alg, spec: CorpusSpec) -> Verdict:
    """Does ``x`` accept exactly the corpus trees ``alg`` accepts?"""
    t = first_disagreement(ProductAlgebra(algebra_for(x), alg), spec, lambda r: r[0] != r[1])
    return Verdict(t is None, t)


def default_corpus(*automata, max_height=3, max_width=3) -> CorpusSpec:
    alphabet = frozenset()
    for a in automata:
        alphabet |= a.alphabet
    return CorpusSpec(alphabet, max_height, max_width)
