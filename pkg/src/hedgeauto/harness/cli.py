"""Command-line interface.

Exit codes: 0 when every verdict passes, 1 when some verdict fails,
2 for usage errors and unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..constructions import ConstructionError, sdta_concat, sdta_intersection, sdta_union, wdta_intersection, wdta_union
from ..corpus import CorpusSpec
from ..minimize import minimize_sdta
from ..sdta import Sdta, complement, evaluate
from ..trees import TreeSyntaxError, corpus_size, enumerate_trees, parse_tree
from ..wdta import Wdta, eval_wdta, sdta_to_wdta, wdta_to_sdta
from ..witnesses import derived_boolean_witnesses, make_MA, make_MB
from .fileformat import FormatError, InvalidAutomaton, dump_automaton, load_automaton
from .oracles import accepts_any, language_equal
from .reports import verify_boolean_bounds, verify_concat_bound


class UsageError(Exception):
    pass


def _emit(x, out):
    text = dump_automaton(x)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _as_sdta(x):
    return x if isinstance(x, Sdta) else wdta_to_sdta(x)


def _corpus(args, *automata):
    alphabet = frozenset()
    for a in automata:
        alphabet |= a.alphabet
    return CorpusSpec(alphabet, args.max_height, args.max_width)


def cmd_eval(args):
    a = load_automaton(args.automaton)
    t = parse_tree(args.tree)
    q = evaluate(a, t) if isinstance(a, Sdta) else eval_wdta(a, t)
    print(f"state: {'none' if q is None else q}")
    print(f"accepted: {'yes' if accepts_any(a, t) else 'no'}")
    return 0


def cmd_op(args):
    a = load_automaton(args.first)
    if args.operation == "complement":
        if args.second:
            raise UsageError("complement takes one automaton")
        _emit(complement(_as_sdta(a)), args.output)
        return 0
    if not args.second:
        raise UsageError(f"{args.operation} needs two automata")
    b = load_automaton(args.second)
    if args.operation == "concat":
        _emit(sdta_concat(_as_sdta(a), _as_sdta(b)), args.output)
    elif isinstance(a, Wdta) and isinstance(b, Wdta):
        fn = wdta_union if args.operation == "union" else wdta_intersection
        _emit(fn(a, b), args.output)
    else:
        fn = sdta_union if args.operation == "union" else sdta_intersection
        _emit(fn(_as_sdta(a), _as_sdta(b)), args.output)
    return 0


def cmd_minimize(args):
    _emit(minimize_sdta(_as_sdta(load_automaton(args.automaton))), args.output)
    return 0


def cmd_witness(args):
    if args.name == "MA":
        x = make_MA(args.m)
    elif args.name == "MB":
        x = make_MB(args.n)
    else:
        x = derived_boolean_witnesses(args.m, args.n)[args.part - 1]
    if args.kind == "wdta":
        x = sdta_to_wdta(x)
    _emit(x, args.output)
    return 0


def cmd_verify(args):
    if args.check == "concat-bound":
        rep = verify_concat_bound(args.m, args.n, CorpusSpec("abcd", args.max_height, args.max_width))
    else:
        if args.automata:
            if len(args.automata) != 2:
                raise UsageError("boolean-bounds takes zero or two automata")
            a1, a2 = (load_automaton(p) for p in args.automata)
            expect = None
        else:
            a1, a2 = derived_boolean_witnesses(args.m, args.n)
            expect = (args.m + 1) * (args.n + 1) - 1 if args.op == "union" else args.m * args.n
        if args.kind == "wdta":
            a1 = a1 if isinstance(a1, Wdta) else sdta_to_wdta(a1)
            a2 = a2 if isinstance(a2, Wdta) else sdta_to_wdta(a2)
        else:
            a1, a2 = _as_sdta(a1), _as_sdta(a2)
        rep = verify_boolean_bounds(args.op, args.kind, a1, a2, _corpus(args, a1, a2), expect)
    sys.stdout.write(rep.to_text())
    if args.report:
        Path(args.report).write_text(rep.to_json(), encoding="utf-8")
    return 0 if rep.passed else 1


def cmd_equal(args):
    a, b = load_automaton(args.first), load_automaton(args.second)
    spec = _corpus(args, a, b)
    v = language_equal(a, b, spec)
    if v.ok:
        print(f"equal on corpus (height <= {spec.max_height}, width <= {spec.max_width})")
    else:
        print(f"different: {v.counterexample}")
    if args.report:
        data = {"equal": v.ok, "counterexample": None if v.ok else str(v.counterexample),
                "max_height": spec.max_height, "max_width": spec.max_width}
        Path(args.report).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return 0 if v.ok else 1


def cmd_enumerate(args):
    if args.automaton:
        a = load_automaton(args.automaton)
        alphabet = a.alphabet
    else:
        a = None
        alphabet = [s for s in args.alphabet.split(",") if s]
    if not alphabet:
        raise UsageError("empty alphabet")
    total = corpus_size(len(set(alphabet)), args.max_height, args.max_width)
    if args.limit is None and total > 1_000_000:
        raise UsageError(f"corpus has {total} trees; pass --limit")
    shown = 0
    for t in enumerate_trees(alphabet, args.max_height, args.max_width):
        if a is not None and not accepts_any(a, t):
            continue
        print(t)
        shown += 1
        if args.limit is not None and shown >= args.limit:
            break
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="hedgeauto", description="Deterministic unranked tree automata.")
    sub = p.add_subparsers(dest="command", required=True)

    def corpus_opts(sp):
        sp.add_argument("--max-height", type=int, default=3)
        sp.add_argument("--max-width", type=int, default=3)

    sp = sub.add_parser("eval", help="evaluate an automaton on a tree")
    sp.add_argument("automaton")
    sp.add_argument("tree")
    sp.set_defaults(fn=cmd_eval)

    sp = sub.add_parser("op", help="union, intersection, concatenation or complement")
    sp.add_argument("operation", choices=["union", "intersect", "concat", "complement"])
    sp.add_argument("first", help="automaton (for concat: the inner one)")
    sp.add_argument("second", nargs="?", help="second automaton (for concat: the outer one)")
    sp.add_argument("-o", "--output")
    sp.set_defaults(fn=cmd_op)

    sp = sub.add_parser("minimize", help="minimal SDTA")
    sp.add_argument("automaton")
    sp.add_argument("-o", "--output")
    sp.set_defaults(fn=cmd_minimize)

    sp = sub.add_parser("witness", help="write a witness automaton")
    sp.add_argument("name", choices=["MA", "MB", "BOOL"])
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--part", type=int, choices=[1, 2], default=1, help="which BOOL automaton")
    sp.add_argument("--kind", choices=["sdta", "wdta"], default="sdta")
    sp.add_argument("-o", "--output")
    sp.set_defaults(fn=cmd_witness)

    sp = sub.add_parser("verify", help="run a bound experiment")
    sp.add_argument("check", choices=["concat-bound", "boolean-bounds"])
    sp.add_argument("automata", nargs="*", help="two automata for boolean-bounds (default: derived witnesses)")
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--op", choices=["union", "intersection"], default="union")
    sp.add_argument("--kind", choices=["sdta", "wdta"], default="sdta")
    sp.add_argument("--report", help="write a JSON report here")
    corpus_opts(sp)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("equal", help="compare two automata on the bounded corpus")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--report")
    corpus_opts(sp)
    sp.set_defaults(fn=cmd_equal)

    sp = sub.add_parser("enumerate", help="list corpus trees")
    sp.add_argument("--alphabet", default="a,b")
    sp.add_argument("--automaton", help="only trees this automaton accepts (alphabet taken from it)")
    sp.add_argument("--limit", type=int)
    corpus_opts(sp)
    sp.set_defaults(fn=cmd_enumerate)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "max_height", 0) < 0 or getattr(args, "max_width", 1) < 1:
            raise UsageError("need --max-height >= 0 and --max-width >= 1")
        return args.fn(args)
    except (UsageError, FormatError, InvalidAutomaton, TreeSyntaxError, ConstructionError,
            OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
