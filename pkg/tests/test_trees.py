import pytest
from hypothesis import given, settings, strategies as st

from hedgeauto.trees import (
    Tree,
    TreeSyntaxError,
    concat_finite_languages,
    concat_trees,
    corpus_size,
    enumerate_trees,
    leaf,
    leaf_positions,
    parse_tree,
    positions,
    serialize_tree,
    substitute,
    subtree,
)


def trees(labels="abc", max_leaves=12):
    return st.recursive(
        st.sampled_from(labels).map(Tree),
        lambda kids: st.tuples(st.sampled_from(labels), st.lists(kids, min_size=1, max_size=3)).map(
            lambda p: Tree(p[0], tuple(p[1]))
        ),
        max_leaves=max_leaves,
    )


def test_parse_examples():
    assert parse_tree("a") == leaf("a")
    assert parse_tree("b(a,a)") == Tree("b", (leaf("a"), leaf("a")))
    t = parse_tree("b(c(a),a)")
    assert t.height == 2
    assert t.children[0] == Tree("c", (leaf("a"),))


def test_parse_ignores_whitespace():
    assert parse_tree(" b ( a , c(a) ) ") == parse_tree("b(a,c(a))")


@pytest.mark.parametrize("bad", ["", "b(", "b(a", "b()", "b(a,)", "b(a))", "(a)", "a b", "b(a;a)"])
def test_parse_errors(bad):
    with pytest.raises(TreeSyntaxError):
        parse_tree(bad)


def test_parse_error_reports_offset():
    with pytest.raises(TreeSyntaxError) as e:
        parse_tree("b(a,)")
    assert e.value.pos == 4


def test_serialize_examples():
    assert serialize_tree(leaf("a")) == "a"
    assert serialize_tree(parse_tree("b(a,a)")) == "b(a,a)"
    assert serialize_tree(parse_tree("a(b(a),a)")) == "a(b(a),a)"


def test_leaf_positions_examples():
    assert leaf_positions(leaf("a")) == [()]
    assert leaf_positions(parse_tree("b(a,a)")) == [(0,), (1,)]
    assert leaf_positions(parse_tree("b(c(a),a)")) == [(0, 0), (1,)]


def test_positions_preorder():
    assert positions(parse_tree("b(c(a),a)")) == [(), (0,), (0, 0), (1,)]


def test_substitute_examples():
    t = parse_tree("b(a,a)")
    ca = parse_tree("c(a)")
    assert substitute(t, (), ca) == ca
    assert substitute(t, (0,), ca) == parse_tree("b(c(a),a)")
    assert substitute(t, (1,), ca) == parse_tree("b(a,c(a))")


def test_substitute_outside_domain():
    with pytest.raises(IndexError):
        substitute(parse_tree("b(a,a)"), (2,), leaf("a"))
    with pytest.raises(IndexError):
        substitute(parse_tree("b(a,a)"), (0, 0), leaf("a"))


def test_concat_trees_examples():
    ca, baa = parse_tree("c(a)"), parse_tree("b(a,a)")
    assert concat_trees(ca, baa) == {parse_tree("b(c(a),a)"), parse_tree("b(a,c(a))")}
    assert concat_trees(ca, leaf("a")) == {ca}
    assert concat_trees(leaf("a"), baa) == {baa}


def test_concat_languages_examples():
    a = leaf("a")
    assert concat_finite_languages({a}, {a}) == {a}
    assert concat_finite_languages({parse_tree("c(a)")}, {parse_tree("b(a,a)")}) == {
        parse_tree("b(c(a),a)"), parse_tree("b(a,c(a))")
    }
    assert concat_finite_languages(set(), {a}) == frozenset()


def test_enumerate_examples():
    assert list(enumerate_trees({"a"}, 0, 2)) == [leaf("a")]
    assert list(enumerate_trees({"a", "b"}, 0, 2)) == [leaf("a"), leaf("b")]
    assert [str(t) for t in enumerate_trees({"a"}, 1, 2)] == ["a", "a(a)", "a(a,a)"]


def test_enumerate_rejects_bad_bounds():
    with pytest.raises(ValueError):
        list(enumerate_trees({"a"}, -1, 2))
    with pytest.raises(ValueError):
        list(enumerate_trees({"a"}, 1, 0))


@pytest.mark.parametrize("alphabet,h,w", [("a", 2, 2), ("ab", 2, 2), ("abc", 2, 1), ("ab", 3, 1), ("a", 3, 2)])
def test_enumerate_is_complete_and_unique(alphabet, h, w):
    got = list(enumerate_trees(alphabet, h, w))
    assert len(got) == len(set(got)) == corpus_size(len(alphabet), h, w)
    assert all(t.height <= h and t.width <= w for t in got)
    assert [t.height for t in got] == sorted(t.height for t in got)


def test_enumerate_counts_grow():
    counts = {(h, w): corpus_size(1, h, w) for h in range(1, 4) for w in range(1, 4)}
    for h in range(1, 4):
        for w in range(1, 4):
            if h < 3:
                assert counts[(h, w)] < counts[(h + 1, w)]
            if w < 3:
                assert counts[(h, w)] < counts[(h, w + 1)]


def test_round_trip_on_corpus():
    for t in enumerate_trees("ab", 2, 2):
        assert parse_tree(serialize_tree(t)) == t


@given(trees())
def test_round_trip(t):
    assert parse_tree(serialize_tree(t)) == t


@given(trees())
def test_substitute_own_subtree_is_identity(t):
    for u in positions(t):
        assert substitute(t, u, subtree(t, u)) == t


@given(trees(max_leaves=6), trees(max_leaves=6))
def test_concat_count(t, tp):
    result = concat_trees(t, tp)
    assert 1 <= len(result) <= len(leaf_positions(tp))
    leaf_labels = {subtree(tp, u).label for u in leaf_positions(tp)}
    if not t.is_leaf or t.label not in leaf_labels:
        assert len(result) == len(leaf_positions(tp))
    for r in result:
        assert r.size() == tp.size() - 1 + t.size()
