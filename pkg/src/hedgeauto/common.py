"""Reserved marker states and a deterministic ordering for opaque state ids."""

from __future__ import annotations

from dataclasses import dataclass


class _Marker:
    """A named singleton used for dead/sink components in constructions."""

    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return self.name.upper()  # pickles as the module-level singleton

    def __hash__(self):
        # fixed hash keeps set iteration order independent of PYTHONHASHSEED
        return 0x5EED if self.name == "dead" else 0x51C


DEAD = _Marker("dead")
SINK = _Marker("sink")


@dataclass(frozen=True)
class LeafState:
    """Vertical state introduced for a leaf symbol that was read as a literal letter."""

    symbol: str

    def __repr__(self):
        return f"leaf<{self.symbol}>"


def canonical_key(x):
    """Total order over the state ids this package produces.

    ints < strings < tuples < frozensets < markers < everything else.
    """
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, len(x), tuple(canonical_key(y) for y in x))
    if isinstance(x, frozenset):
        return (3, len(x), tuple(sorted(canonical_key(y) for y in x)))
    if x is DEAD:
        return (4, 0)
    if x is SINK:
        return (4, 1)
    if isinstance(x, LeafState):
        return (5, x.symbol)
    key = getattr(x, "sort_key", None)
    if key is not None:
        return (6, key())
    return (9, repr(x))


def sorted_states(states):
    return sorted(states, key=canonical_key)
