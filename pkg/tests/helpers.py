"""Shared test helpers: small hand automata and a random SDTA strategy."""

import itertools

from hypothesis import strategies as st

from hedgeauto.horizontal import HorizontalMachine, Leaf, StateRef
from hedgeauto.sdta import Sdta
from hedgeauto.trees import parse_tree


def single_tree_sdta(text):
    """SDTA accepting exactly the one tree ``text`` (states are the subtrees)."""
    target = parse_tree(text)
    subs = {}

    def collect(t):
        for c in t.children:
            collect(c)
        subs.setdefault(t, len(subs))

    collect(target)
    classifiers = {}
    for t, q in subs.items():
        d = classifiers.setdefault(t.label, {"trans": {}, "out": {}, "n": 1})
        h = 0
        for c in t.children:
            key = (h, StateRef(subs[c]))
            if key not in d["trans"]:
                d["trans"][key] = d["n"]
                d["n"] += 1
            h = d["trans"][key]
        d["out"][h] = q
    machines = {
        s: HorizontalMachine(frozenset(range(d["n"])), 0, d["trans"], output=d["out"])
        for s, d in classifiers.items()
    }
    alphabet = target.labels()
    return Sdta(frozenset(subs.values()), alphabet, frozenset([subs[target]]), machines)


def cycle_machine(k, letter=StateRef(0)):
    trans = {(i, letter): (i + 1) % k for i in range(k)}
    return HorizontalMachine(frozenset(range(k)), 0, trans, accept=frozenset([0]))


@st.composite
def random_machines(draw, letters, max_states=3, role="accept", outputs=()):
    n = draw(st.integers(1, max_states))
    trans = {}
    for s in range(n):
        for l in letters:
            if draw(st.booleans()):
                trans[(s, l)] = draw(st.integers(0, n - 1))
    if role == "accept":
        acc = {s for s in range(n) if draw(st.booleans())}
        return HorizontalMachine(frozenset(range(n)), 0, trans, accept=frozenset(acc))
    out = {}
    for s in range(n):
        if draw(st.integers(0, 2)) > 0:
            out[s] = draw(st.sampled_from(list(outputs)))
    return HorizontalMachine(frozenset(range(n)), 0, trans, output=out)


@st.composite
def random_sdtas(draw, alphabet=("a", "b"), max_vertical=3, max_horizontal=3, leaf_letters=True):
    k = draw(st.integers(1, max_vertical))
    letters = [StateRef(q) for q in range(k)]
    if leaf_letters:
        letters += [Leaf(s) for s in alphabet if draw(st.integers(0, 3)) == 0]
    classifiers = {}
    for s in alphabet:
        if draw(st.integers(0, 5)) == 0:
            continue
        classifiers[s] = draw(random_machines(letters, max_horizontal, "output", range(k)))
    final = {q for q in range(k) if draw(st.booleans())}
    return Sdta(frozenset(range(k)), frozenset(alphabet), frozenset(final), classifiers)


def all_words(letters, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(letters, repeat=n)


def partition_oracle_disagreements(a, max_height=4, max_width=3):
    """Pairs of reachable states where the partition and the context oracle differ."""
    from hedgeauto.common import sorted_states
    from hedgeauto.minimize import context_distinguish_oracle, inequivalence_partition, reachable_vertical

    part = inequivalence_partition(a)
    qs = sorted_states(reachable_vertical(a))
    bad = []
    for i, p in enumerate(qs):
        for q in qs[i + 1:]:
            ctx = context_distinguish_oracle(a, p, q, max_height, max_width)
            if part.same(p, q) != (ctx is None):
                bad.append((p, q, ctx))
    return bad
