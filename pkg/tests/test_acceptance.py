"""Acceptance criteria 1 to 7. Each test carries a ``criterion`` mark; the
terminal summary prints one PASS/FAIL line per criterion."""

import pytest

from hedgeauto.common import DEAD
from hedgeauto.constructions import (
    sdta_concat,
    sdta_intersection,
    sdta_union,
    wdta_intersection,
    wdta_union,
)
from hedgeauto.corpus import CorpusSpec, SdtaAlgebra, TBAlgebra, WdtaAlgebra, agree, summaries
from hedgeauto.harness.oracles import check_boolean, check_complement, check_concat, language_equal
from hedgeauto.harness.reports import concat_census, verify_boolean_bounds, verify_concat_bound
from hedgeauto.horizontal import HorizontalMachine, StateRef
from hedgeauto.minimize import inequivalence_partition, minimize_sdta, reachable_vertical, sdta_isomorphic
from hedgeauto.sdta import complement, evaluate
from hedgeauto.wdta import Wdta, sdta_to_wdta, tuple_product, validate_wdta
from hedgeauto.witnesses import derived_boolean_witnesses, make_MA, make_MB, membership_TB

from helpers import partition_oracle_disagreements, single_tree_sdta

PAIRS = [(2, 2), (3, 2), (2, 3)]
EXPECTED = {(2, 2): 29, (3, 2): 41, (2, 3): 79}


def corpus(*automata):
    alphabet = frozenset()
    for a in automata:
        alphabet |= a.alphabet
    return CorpusSpec(alphabet, 3, 3)


def suite_sdtas():
    w1, w2 = derived_boolean_witnesses(2, 3)
    return {
        "MA2": make_MA(2), "MA3": make_MA(3), "MB2": make_MB(2), "MB3": make_MB(3),
        "W1": w1, "W2": w2, "tree": single_tree_sdta("b(a,c(a))"),
    }


SUITE_PAIRS = [("MA2", "MB2"), ("MA3", "MB2"), ("W1", "W2"), ("tree", "MB2"), ("MB2", "MB3")]


@pytest.fixture(scope="module")
def reports():
    return {mn: verify_concat_bound(*mn) for mn in PAIRS}


# ------------------------------------------------------------------ 1

@pytest.mark.criterion(1)
@pytest.mark.parametrize("mn", PAIRS)
def test_concat_minimized_count(reports, mn):
    rep = reports[mn]
    print(rep.to_text())
    assert rep.minimized_vertical == EXPECTED[mn]
    assert rep.passed, [c.line() for c in rep.failed()]


# ------------------------------------------------------------------ 2

@pytest.mark.criterion(2)
@pytest.mark.parametrize("mn", PAIRS)
def test_census_and_singleton_blocks(mn):
    m, n = mn
    c = sdta_concat(make_MA(m), make_MB(n))
    reach = reachable_vertical(c)
    assert len(reach) == len(concat_census(m, n)) == EXPECTED[mn]
    part = inequivalence_partition(c)
    assert part.all_singletons and len(part) == len(reach)


# ------------------------------------------------------------------ 3

@pytest.mark.criterion(3)
@pytest.mark.parametrize("names", SUITE_PAIRS, ids="-".join)
def test_boolean_constructions_oracle(names):
    s = suite_sdtas()
    a1, a2 = s[names[0]], s[names[1]]
    spec = corpus(a1, a2)
    v = check_boolean(sdta_union(a1, a2), "union", a1, a2, spec, method="summary")
    assert v.ok, v.counterexample
    v = check_boolean(sdta_intersection(a1, a2), "intersection", a1, a2, spec, method="summary")
    assert v.ok, v.counterexample
    w1, w2 = sdta_to_wdta(a1), sdta_to_wdta(a2)
    v = check_boolean(wdta_union(w1, w2), "union", a1, a2, spec, method="summary")
    assert v.ok, v.counterexample
    v = check_boolean(wdta_intersection(w1, w2), "intersection", a1, a2, spec, method="summary")
    assert v.ok, v.counterexample


@pytest.mark.criterion(3)
@pytest.mark.parametrize("name", sorted(suite_sdtas()))
def test_complement_oracle(name):
    a = suite_sdtas()[name]
    v = check_complement(complement(a), a, corpus(a), method="summary")
    assert v.ok, v.counterexample


@pytest.mark.criterion(3)
@pytest.mark.parametrize("names", PAIRS + [("tree", "MB2"), ("MB2", "MA2"), ("W1", "W2")], ids=str)
def test_concat_oracle(names):
    s = suite_sdtas()
    if isinstance(names[0], int):
        inner, outer = make_MA(names[0]), make_MB(names[1])
    else:
        inner, outer = s[names[0]], s[names[1]]
    v = check_concat(sdta_concat(inner, outer), inner, outer, corpus(inner, outer), method="summary")
    assert v.ok, v.counterexample


# ------------------------------------------------------------------ 4

@pytest.mark.criterion(4)
@pytest.mark.parametrize("names", SUITE_PAIRS, ids="-".join)
@pytest.mark.parametrize("op", ["union", "intersection"])
def test_sdta_boolean_bounds(names, op):
    s = suite_sdtas()
    rep = verify_boolean_bounds(op, "sdta", s[names[0]], s[names[1]])
    print(rep.to_text())
    assert rep.passed, [c.line() for c in rep.failed()]


@pytest.mark.criterion(4)
@pytest.mark.parametrize("mn", [(2, 2), (2, 3), (3, 4)])
@pytest.mark.parametrize("op", ["union", "intersection"])
def test_derived_witnesses_reach_bound(mn, op):
    m, n = mn
    a1, a2 = derived_boolean_witnesses(m, n)
    expect = (m + 1) * (n + 1) - 1 if op == "union" else m * n
    rep = verify_boolean_bounds(op, "sdta", a1, a2, expect_minimized=expect)
    print(rep.to_text())
    assert rep.passed, [c.line() for c in rep.failed()]


# ------------------------------------------------------------------ 5

@pytest.mark.criterion(5)
@pytest.mark.parametrize("n", [2, 3])
def test_keystone_mb_language(n):
    mb = make_MB(n)
    t = agree(SdtaAlgebra(mb), TBAlgebra(n), CorpusSpec("abcd", 3, 3))
    detail = None
    if t is not None:
        detail = f"{t}: M_B {'accepts' if evaluate(mb, t) in mb.final else 'rejects'}, T_B membership {membership_TB(t, n)}"
    assert t is None, detail


# ------------------------------------------------------------------ 6

def minimizer_suite():
    s = suite_sdtas()
    out = dict(s)
    for a, b in SUITE_PAIRS:
        out[f"{a}|{b}"] = sdta_union(s[a], s[b])
        out[f"{a}&{b}"] = sdta_intersection(s[a], s[b])
    for name in ("MA2", "MB2", "W1"):
        out[f"~{name}"] = complement(s[name])
    out["MA2.MB2"] = sdta_concat(s["MA2"], s["MB2"])
    return out


MINIMIZER_SUITE = minimizer_suite()


@pytest.mark.criterion(6)
@pytest.mark.parametrize("name", sorted(MINIMIZER_SUITE))
def test_minimizer_idempotent_and_language_preserving(name):
    a = MINIMIZER_SUITE[name]
    m = minimize_sdta(a)
    assert sdta_isomorphic(minimize_sdta(m), m)
    v = language_equal(m, a, corpus(a), method="summary")
    assert v.ok, v.counterexample


@pytest.mark.criterion(6)
@pytest.mark.parametrize("name", sorted(n for n, a in MINIMIZER_SUITE.items() if len(reachable_vertical(a)) <= 12))
def test_partition_matches_context_oracle(name):
    assert partition_oracle_disagreements(MINIMIZER_SUITE[name], 4, 3) == []


# ------------------------------------------------------------------ 7

def overlapping_wdta():
    leaf = HorizontalMachine(frozenset([0]), 0, {}, accept=frozenset([0]))
    one = HorizontalMachine(frozenset([0, 1]), 0, {(0, StateRef(0)): 1}, accept=frozenset([1]))
    loop = HorizontalMachine(frozenset([0]), 0, {(0, StateRef(0)): 0, (0, StateRef(1)): 0}, accept=frozenset([0]))
    return Wdta(frozenset([0, 1, 2]), {"a", "f"}, {1},
                {(0, "a"): leaf, (1, "f"): one, (2, "f"): loop})


def wdta_suite():
    s = suite_sdtas()
    out = {name: sdta_to_wdta(a) for name, a in s.items()}
    for a, b in SUITE_PAIRS:
        out[f"{a}|{b}"] = wdta_union(out[a], out[b])
        out[f"{a}&{b}"] = wdta_intersection(out[a], out[b])
    return out


WDTA_SUITE = wdta_suite()


def overlap_by_words(a: Wdta, max_len=6):
    """Does some word of length <= max_len lie in two languages of one symbol? Depth-first search."""
    for sym in sorted({s for (_, s) in a.hlangs}):
        ms = [m for _, m in a.machines_for(sym)]
        if len(ms) < 2:
            continue
        letters = sorted({l for m in ms for l in m.letters}, key=repr)

        def hit(state):
            return sum(1 for m, c in zip(ms, state) if c is not DEAD and c in m.accept) > 1

        stack = [(tuple(m.start for m in ms), 0)]
        while stack:
            state, depth = stack.pop()
            if hit(state):
                return True
            if depth == max_len:
                continue
            for l in letters:
                nxt = tuple(DEAD if c is DEAD or m.step(c, l) is None else m.step(c, l)
                            for m, c in zip(ms, state))
                if sum(1 for c in nxt if c is not DEAD) >= 2:
                    stack.append((nxt, depth + 1))
    return False


@pytest.mark.criterion(7)
def test_overlap_detector_sees_overlap():
    a = overlapping_wdta()
    assert overlap_by_words(a)
    assert any(v.kind == "overlapping languages" for v in validate_wdta(a))


@pytest.mark.criterion(7)
@pytest.mark.parametrize("name", sorted(WDTA_SUITE))
def test_wdta_disjointness_matches_words(name):
    a = WDTA_SUITE[name]
    decided = any(v.kind == "overlapping languages" for v in validate_wdta(a))
    assert decided == overlap_by_words(a)
    assert not decided


@pytest.mark.criterion(7)
@pytest.mark.parametrize("name", sorted(WDTA_SUITE))
def test_wdta_evaluation_unambiguous_on_corpus(name):
    a = WDTA_SUITE[name]
    # WdtaAlgebra raises AmbiguousRun if two acceptors accept at one node
    levels = summaries(WdtaAlgebra(a), a.alphabet, 3, 3)
    assert levels[-1]
