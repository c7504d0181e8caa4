"""Bound experiments and their reports.

A :class:`BoundReport` stores raw numbers only; every verdict is
recomputed from them when asked for.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from ..common import DEAD
from ..constructions import (
    concat_horizontal_bound,
    concat_vertical_bound,
    intersection_vertical_bound,
    sdta_concat,
    sdta_intersection,
    sdta_union,
    union_vertical_bound,
    wdta_intersection,
    wdta_union,
)
from ..corpus import CorpusSpec
from ..minimize import inequivalence_partition, minimize_sdta, reachable_vertical
from ..sdta import Sdta, SizePair, lift_leaf_letters, size_of
from ..wdta import (
    AmbiguousRun,
    Wdta,
    lift_wdta_leaf_letters,
    validate_wdta,
    wdta_size,
    wdta_to_sdta,
)
from ..witnesses import make_MA, make_MB
from .oracles import check_boolean, check_concat, default_corpus

_RELATIONS = {
    "==": lambda a, b: a == b,
    "<=": lambda a, b: a <= b,
}


@dataclass(frozen=True)
class Check:
    name: str
    actual: object
    relation: str
    expected: object

    @property
    def passed(self) -> bool:
        return _RELATIONS[self.relation](self.actual, self.expected)

    def line(self):
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.name}: {self.actual} {self.relation} {self.expected}"

    def as_dict(self):
        return {"name": self.name, "actual": self.actual, "relation": self.relation,
                "expected": self.expected, "passed": self.passed}


@dataclass
class BoundReport:
    operation: str
    params: dict
    inputs: list
    constructed: SizePair
    minimized_vertical: int
    formulas: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self):
        return [c for c in self.checks if not c.passed]

    def to_text(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        out = [f"{self.operation} {params}".rstrip()]
        for name, size in self.inputs:
            out.append(f"  input {name}: {size}")
        out.append(f"  constructed: {self.constructed}")
        out.append(f"  minimized vertical: {self.minimized_vertical}")
        for k, v in self.formulas.items():
            out.append(f"  formula {k}: {v}")
        for c in self.checks:
            out.append("  " + c.line())
        out.append(f"verdict: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(out) + "\n"

    def as_dict(self):
        return {
            "operation": self.operation,
            "params": self.params,
            "inputs": [{"name": n, "vertical": s.vertical, "horizontal": s.horizontal}
                       for n, s in self.inputs],
            "constructed": {"vertical": self.constructed.vertical,
                            "horizontal": self.constructed.horizontal},
            "minimized_vertical": self.minimized_vertical,
            "formulas": self.formulas,
            "checks": [c.as_dict() for c in self.checks],
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"


def concat_formula(m: int, n: int) -> int:
    """Tight vertical count for concatenating the m-state and n-state witnesses."""
    return (n + 1) * ((m + 1) * 2**n - 2 ** (n - 1)) - 1


def concat_census(m: int, n: int) -> set:
    """The state forms ``(q, S, p)`` of the worst case, listed explicitly.

    ``q`` in 0..n (n stands for dead), ``S`` a subset of 0..n-1, ``p`` in
    0..m (m stands for dead); ``p = m-1`` forces ``0 in S``; the all-dead
    form ``(n, {}, m)`` is excluded.
    """
    out = set()
    for q in range(n + 1):
        for k in range(n + 1):
            for S in itertools.combinations(range(n), k):
                S = frozenset(S)
                for p in range(m + 1):
                    if p == m - 1 and 0 not in S:
                        continue
                    if q == n and not S and p == m:
                        continue
                    out.add((q, S, p))
    return out


def census_form(state, m: int, n: int):
    """Map a concatenation state to the ``(q, S, p)`` form of :func:`concat_census`."""
    return (n if state.p1 is DEAD else state.p1, frozenset(state.P2), m if state.q is DEAD else state.q)


def _horizontal_sizes(a: Sdta):
    return {s: len(d.states) for s, d in a.classifiers.items()}


def verify_concat_bound(m: int, n: int, corpus: CorpusSpec = None) -> BoundReport:
    """Concatenate ``make_MA(m)`` (inner) with ``make_MB(n)`` (outer) and check every claim."""
    inner, outer = make_MA(m), make_MB(n)
    c = sdta_concat(inner, outer)
    size = size_of(c)
    mini = minimize_sdta(c)
    reach = reachable_vertical(c)
    part = inequivalence_partition(c)
    formula = concat_formula(m, n)
    upper = concat_vertical_bound(len(outer.vstates), len(inner.vstates))
    corpus = corpus or default_corpus(inner, outer)
    oracle = check_concat(c, inner, outer, corpus, method="summary")
    census = concat_census(m, n)
    forms = {census_form(q, m, n) for q in reach}
    h_in, h_out = _horizontal_sizes(lift_leaf_letters(inner)), _horizontal_sizes(lift_leaf_letters(outer))
    checks = [
        Check("constructed vertical within construction bound", size.vertical, "<=", upper),
    ]
    for s in sorted(c.classifiers):
        hb = concat_horizontal_bound(h_out.get(s, 0), h_in.get(s, 0))
        checks.append(Check(f"horizontal states for {s} within bound", len(c.classifiers[s].states), "<=", hb))
    checks += [
        Check("minimized vertical equals formula", len(mini.vstates), "==", formula),
        Check("reachable vertical equals census", len(reach), "==", len(census)),
        Check("reachable states match census forms", len(forms ^ census), "==", 0),
        Check("inequivalence blocks", len(part), "==", len(reach)),
        Check("non-singleton blocks", sum(1 for b in part.blocks if len(b) > 1), "==", 0),
        Check("oracle counterexamples", 0 if oracle.ok else 1, "==", 0),
    ]
    return BoundReport(
        operation="concat-bound",
        params={"m": m, "n": n, "max_height": corpus.max_height, "max_width": corpus.max_width},
        inputs=[("inner MA", size_of(inner)), ("outer MB", size_of(outer))],
        constructed=size,
        minimized_vertical=len(mini.vstates),
        formulas={"tight vertical": formula, "construction vertical bound": upper,
                  "census": len(census)},
        checks=checks,
    )


def _wdta_machine_sizes(a: Wdta):
    out = {}
    for (q, s), m in a.hlangs.items():
        out.setdefault(s, {})[q] = len(m.states)
    return out


def _prod(xs):
    r = 1
    for x in xs:
        r *= x
    return r


def wdta_union_horizontal_bound(a1: Wdta, a2: Wdta) -> int:
    """Sum over symbols of the pair products plus the two padded product terms.

    A missing acceptor counts 0 in the pair sums and 1 in the products.
    """
    s1, s2 = _wdta_machine_sizes(a1), _wdta_machine_sizes(a2)
    total = 0
    for s in sorted(a1.alphabet | a2.alphabet):
        d1 = [s1.get(s, {}).get(q, 0) for q in a1.vstates]
        d2 = [s2.get(s, {}).get(p, 0) for p in a2.vstates]
        total += sum(x * y for x in d1 for y in d2)
        total += sum(d1) * _prod(max(y, 1) for y in d2)
        total += sum(d2) * _prod(max(x, 1) for x in d1)
    return total


def wdta_intersection_horizontal_bound(a1: Wdta, a2: Wdta) -> int:
    s1, s2 = _wdta_machine_sizes(a1), _wdta_machine_sizes(a2)
    total = 0
    for s in sorted(a1.alphabet | a2.alphabet):
        d1 = [s1.get(s, {}).get(q, 0) for q in a1.vstates]
        d2 = [s2.get(s, {}).get(p, 0) for p in a2.vstates]
        total += sum(x * y for x in d1 for y in d2)
    return total


def verify_boolean_bounds(op: str, kind: str, a1, a2, corpus: CorpusSpec = None,
                          expect_minimized: int = None) -> BoundReport:
    """Build ``op`` of two automata, check the size bounds and the language.

    ``op`` is "union" or "intersection", ``kind`` "sdta" or "wdta".
    ``expect_minimized`` adds an exact check on the minimized vertical count.
    """
    if op not in ("union", "intersection"):
        raise ValueError(f"unknown operation {op!r}")
    if kind not in ("sdta", "wdta"):
        raise ValueError(f"unknown automaton kind {kind!r}")
    corpus = corpus or default_corpus(a1, a2)
    n1, n2 = len(a1.vstates), len(a2.vstates)
    vbound = union_vertical_bound(n1, n2) if op == "union" else intersection_vertical_bound(n1, n2)
    checks = []
    formulas = {"vertical bound": vbound}
    if kind == "sdta":
        r = sdta_union(a1, a2) if op == "union" else sdta_intersection(a1, a2)
        size = size_of(r)
        inputs = [("first", size_of(a1)), ("second", size_of(a2))]
        checks.append(Check("constructed vertical within bound", size.vertical, "<=", vbound))
        h1 = _horizontal_sizes(lift_leaf_letters(a1))
        h2 = _horizontal_sizes(lift_leaf_letters(a2))
        for s in sorted(r.classifiers):
            x, y = h1.get(s, 0), h2.get(s, 0)
            hb = (x + 1) * (y + 1) - 1 if op == "union" else x * y
            checks.append(Check(f"horizontal states for {s} within bound", len(r.classifiers[s].states), "<=", hb))
        mini = minimize_sdta(r)
    else:
        r = wdta_union(a1, a2) if op == "union" else wdta_intersection(a1, a2)
        size = wdta_size(r)
        inputs = [("first", wdta_size(a1)), ("second", wdta_size(a2))]
        l1, l2 = lift_wdta_leaf_letters(a1), lift_wdta_leaf_letters(a2)
        hb = wdta_union_horizontal_bound(l1, l2) if op == "union" else wdta_intersection_horizontal_bound(l1, l2)
        formulas["horizontal bound"] = hb
        checks.append(Check("constructed vertical within bound", size.vertical, "<=", vbound))
        checks.append(Check("constructed horizontal within bound", size.horizontal, "<=", hb))
        checks.append(Check("disjointness violations", len(validate_wdta(r)), "==", 0))
        mini = minimize_sdta(wdta_to_sdta(r))
    try:
        verdict = check_boolean(r, op, a1, a2, corpus, method="summary")
        bad = 0 if verdict.ok else 1
    except AmbiguousRun:
        bad = 1
    checks.append(Check("oracle counterexamples", bad, "==", 0))
    if expect_minimized is not None:
        formulas["expected minimized vertical"] = expect_minimized
        checks.append(Check("minimized vertical equals expected", len(mini.vstates), "==", expect_minimized))
    return BoundReport(
        operation=f"{kind}-{op}",
        params={"max_height": corpus.max_height, "max_width": corpus.max_width},
        inputs=inputs,
        constructed=size,
        minimized_vertical=len(mini.vstates),
        formulas=formulas,
        checks=checks,
    )
