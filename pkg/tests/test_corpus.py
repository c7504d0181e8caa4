import pytest
from hypothesis import given, settings

from hedgeauto.corpus import (
    BooleanAlgebra,
    ConcatAlgebra,
    CorpusSpec,
    SdtaAlgebra,
    TBAlgebra,
    WdtaAlgebra,
    accepted_count,
    summaries,
)
from hedgeauto.harness.oracles import concat_membership_oracle
from hedgeauto.trees import corpus_size, enumerate_trees
from hedgeauto.wdta import sdta_to_wdta
from hedgeauto.witnesses import make_MA, make_MB

from helpers import random_sdtas


def algebras():
    ma, mb = make_MA(2), make_MB(2)
    return [
        SdtaAlgebra(mb),
        WdtaAlgebra(sdta_to_wdta(mb)),
        TBAlgebra(2),
        BooleanAlgebra(lambda x, y: x or y, SdtaAlgebra(ma), SdtaAlgebra(mb)),
        ConcatAlgebra(ma, mb),
    ]


@pytest.mark.parametrize("alg", algebras(), ids=lambda a: type(a).__name__)
def test_summary_sets_match_enumeration(alg):
    levels = summaries(alg, "abcd", 2, 2)
    for h in range(3):
        seen = {alg.summarize(t) for t in enumerate_trees("abcd", h, 2)}
        assert set(levels[h]) == seen
        for summ, tree in levels[h].items():
            assert tree.height <= h and alg.summarize(tree) == summ


def test_concat_algebra_matches_brute_force():
    ma, mb = make_MA(2), make_MB(2)
    alg = ConcatAlgebra(ma, mb)
    for t in enumerate_trees("abcd", 2, 2):
        assert alg.accept(alg.summarize(t)) == concat_membership_oracle(t, ma, mb)


@settings(max_examples=40, deadline=None)
@given(random_sdtas(max_vertical=2, max_horizontal=2), random_sdtas(max_vertical=2, max_horizontal=2))
def test_concat_algebra_random(inner, outer):
    alg = ConcatAlgebra(inner, outer)
    for t in enumerate_trees("ab", 2, 2):
        assert alg.accept(alg.summarize(t)) == concat_membership_oracle(t, inner, outer)


def test_corpus_spec():
    spec = CorpusSpec("ab", 2, 2)
    assert spec.size == corpus_size(2, 2, 2) == sum(1 for _ in spec.trees())
    assert accepted_count(SdtaAlgebra(make_MB(2)), CorpusSpec("abcd", 1, 2)) == 4  # b(a), b(a,a), c(a), c(a,a)
    with pytest.raises(ValueError):
        CorpusSpec("ab", 1, 0)


def test_full_corpus_is_too_large_to_list():
    assert CorpusSpec("abcd", 3, 3).size > 10**20
