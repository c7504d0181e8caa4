"""Deterministic unranked tree automata: boolean operations, concatenation, minimization."""

from .constructions import sdta_concat, sdta_intersection, sdta_union, wdta_intersection, wdta_union
from .horizontal import HorizontalMachine, Leaf, StateRef
from .minimize import inequivalence_partition, minimize_sdta, reachable_vertical
from .sdta import Sdta, accepts, complement, evaluate, size_of, validate
from .trees import Tree, enumerate_trees, parse_tree, serialize_tree
from .wdta import Wdta, eval_wdta, sdta_to_wdta, validate_wdta, wdta_to_sdta
from .witnesses import make_MA, make_MB, membership_TB

__version__ = "0.1.0"
