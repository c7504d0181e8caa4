from .fileformat import FormatError, InvalidAutomaton, dump_automaton, load_automaton, parse_automaton, save_automaton
from .oracles import (
    Verdict,
    check_boolean,
    check_complement,
    check_concat,
    concat_membership_oracle,
    language_equal,
)
from .reports import BoundReport, Check, concat_census, concat_formula, verify_boolean_bounds, verify_concat_bound
