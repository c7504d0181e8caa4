"""Line-oriented text format for SDTAs and WDTAs.

::

    kind sdta
    alphabet a b
    vstates 2
    final 1
    hdfa a
    hstates 2
    start 0
    t 0 state:0 1
    t 0 sym:b 1
    out 1 0
    end

WDTA files use ``kind wdta``, open blocks with ``hdfa <sym> <vstate>``
and list ``accept <id> ...`` instead of ``out`` lines. ``#`` starts a
comment. Saving renumbers states to integers in canonical order, so a
saved file loads back and saves to the same bytes.
"""

from __future__ import annotations

from pathlib import Path

from ..common import sorted_states
from ..horizontal import HorizontalMachine, Leaf, StateRef, letter_key
from ..sdta import Sdta, renumber, validate
from ..wdta import Wdta, validate_wdta


class FormatError(ValueError):
    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class InvalidAutomaton(ValueError):
    def __init__(self, violations):
        super().__init__("; ".join(str(v) for v in violations))
        self.violations = violations


def _int(tok, line_no, what):
    try:
        v = int(tok)
    except ValueError:
        raise FormatError(line_no, f"{what} must be an integer, got {tok!r}") from None
    if v < 0:
        raise FormatError(line_no, f"{what} must be non-negative")
    return v


def _letter(tok, line_no):
    kind, _, val = tok.partition(":")
    if kind == "state" and val:
        return StateRef(_int(val, line_no, "state letter"))
    if kind == "sym" and val:
        return Leaf(val)
    raise FormatError(line_no, f"bad letter {tok!r} (want state:<id> or sym:<symbol>)")


def _lines(text):
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line.split()


def parse_automaton(text: str):
    """Parse the text format into an :class:`Sdta` or :class:`Wdta` (no validation)."""
    it = iter(_lines(text))
    header = {}
    kind = None
    blocks = []
    current = None
    last = 0
    for n, toks in it:
        last = n
        key, args = toks[0], toks[1:]
        if current is not None:
            if key == "hstates":
                current["hstates"] = _int(_one(args, n, key), n, key)
            elif key == "start":
                current["start"] = _int(_one(args, n, key), n, key)
            elif key == "t":
                if len(args) != 3:
                    raise FormatError(n, "transition needs: t <from> <letter> <to>")
                src = _int(args[0], n, "state")
                letter = _letter(args[1], n)
                if (src, letter) in current["trans"]:
                    raise FormatError(n, f"duplicate transition from {src} on {args[1]}")
                current["trans"][(src, letter)] = _int(args[2], n, "state")
            elif key == "out" and kind == "sdta":
                if len(args) != 2:
                    raise FormatError(n, "output needs: out <hstate> <vstate>")
                h = _int(args[0], n, "state")
                if h in current["out"]:
                    raise FormatError(n, f"duplicate output for state {h}")
                current["out"][h] = _int(args[1], n, "vstate")
            elif key == "accept" and kind == "wdta":
                current["accept"].update(_int(a, n, "state") for a in args)
            elif key == "end":
                if current.get("hstates") is None or current.get("start") is None:
                    raise FormatError(n, "block needs hstates and start")
                blocks.append(current)
                current = None
            else:
                raise FormatError(n, f"unexpected {key!r} inside hdfa block")
            continue
        if kind is None:
            if key != "kind" or len(args) != 1 or args[0] not in ("sdta", "wdta"):
                raise FormatError(n, "first line must be 'kind sdta' or 'kind wdta'")
            kind = args[0]
        elif key == "alphabet":
            header["alphabet"] = args
        elif key == "vstates":
            header["vstates"] = _int(_one(args, n, key), n, key)
        elif key == "final":
            header["final"] = [_int(a, n, "final state") for a in args]
        elif key == "hdfa":
            want = 1 if kind == "sdta" else 2
            if len(args) != want:
                raise FormatError(n, f"hdfa needs {want} argument(s)")
            current = {"line": n, "sym": args[0], "hstates": None, "start": None,
                       "trans": {}, "out": {}, "accept": set()}
            if kind == "wdta":
                current["q"] = _int(args[1], n, "vstate")
        else:
            raise FormatError(n, f"unexpected {key!r}")
    if kind is None:
        raise FormatError(last or 1, "empty file")
    if current is not None:
        raise FormatError(last, "missing 'end'")
    for k in ("alphabet", "vstates", "final"):
        if k not in header:
            raise FormatError(last or 1, f"missing '{k}' line")

    def machine(b, role):
        states = frozenset(range(b["hstates"]))
        for (s, _), t in b["trans"].items():
            if s not in states or t not in states:
                raise FormatError(b["line"], f"transition uses a state outside 0..{b['hstates'] - 1}")
        if b["start"] not in states:
            raise FormatError(b["line"], "start state out of range")
        if role == "out":
            return HorizontalMachine(states, b["start"], b["trans"], output=b["out"])
        return HorizontalMachine(states, b["start"], b["trans"], accept=frozenset(b["accept"]))

    vstates = frozenset(range(header["vstates"]))
    alphabet = frozenset(header["alphabet"])
    final = frozenset(header["final"])
    if kind == "sdta":
        classifiers = {}
        for b in blocks:
            if b["sym"] in classifiers:
                raise FormatError(b["line"], f"second hdfa block for {b['sym']!r}")
            classifiers[b["sym"]] = machine(b, "out")
        return Sdta(vstates, alphabet, final, classifiers)
    hlangs = {}
    for b in blocks:
        key = (b["q"], b["sym"])
        if key in hlangs:
            raise FormatError(b["line"], f"second hdfa block for {b['sym']!r} {b['q']}")
        hlangs[key] = machine(b, "accept")
    return Wdta(vstates, alphabet, final, hlangs)


def _one(args, n, key):
    if len(args) != 1:
        raise FormatError(n, f"{key} takes one argument")
    return args[0]


def _fmt_letter(l):
    return f"state:{l.id}" if isinstance(l, StateRef) else f"sym:{l.symbol}"


def _renumber_wdta(a: Wdta) -> Wdta:
    vnum = {q: i for i, q in enumerate(sorted_states(a.vstates))}
    hlangs = {}
    for (q, s), m in a.hlangs.items():
        hnum = {h: i for i, h in enumerate(sorted_states(m.states))}
        trans = {}
        for (h, l), t in m.trans.items():
            l = StateRef(vnum[l.id]) if isinstance(l, StateRef) else l
            trans[(hnum[h], l)] = hnum[t]
        hlangs[(vnum[q], s)] = HorizontalMachine(
            frozenset(hnum.values()), hnum[m.start], trans, accept=frozenset(hnum[x] for x in m.accept)
        )
    return Wdta(frozenset(vnum.values()), a.alphabet, frozenset(vnum[q] for q in a.final), hlangs)


def _block(m, head, role):
    lines = [head, f"hstates {len(m.states)}", f"start {m.start}"]
    for (h, l), t in sorted(m.trans.items(), key=lambda kv: (kv[0][0], letter_key(kv[0][1]))):
        lines.append(f"t {h} {_fmt_letter(l)} {t}")
    if role == "out":
        for h in sorted(m.output):
            lines.append(f"out {h} {m.output[h]}")
    elif m.accept:
        lines.append("accept " + " ".join(str(h) for h in sorted(m.accept)))
    lines.append("end")
    return lines


def dump_automaton(x) -> str:
    if isinstance(x, Sdta):
        x = renumber(x)
        lines = ["kind sdta"]
    elif isinstance(x, Wdta):
        x = _renumber_wdta(x)
        lines = ["kind wdta"]
    else:
        raise TypeError(f"cannot save {type(x).__name__}")
    lines.append(" ".join(["alphabet"] + sorted(x.alphabet)))
    lines.append(f"vstates {len(x.vstates)}")
    lines.append(" ".join(["final"] + [str(q) for q in sorted(x.final)]))
    if isinstance(x, Sdta):
        for s in sorted(x.classifiers):
            lines += _block(x.classifiers[s], f"hdfa {s}", "out")
    else:
        for (q, s) in sorted(x.hlangs, key=lambda k: (k[1], k[0])):
            lines += _block(x.hlangs[(q, s)], f"hdfa {s} {q}", "accept")
    return "\n".join(lines) + "\n"


def load_automaton(path, check=True):
    """Read an automaton file; with ``check`` raise :class:`InvalidAutomaton` on error-level violations."""
    a = parse_automaton(Path(path).read_text(encoding="utf-8"))
    if check:
        found = validate(a) if isinstance(a, Sdta) else validate_wdta(a)
        errors = [v for v in found if v.level == "error"]
        if errors:
            raise InvalidAutomaton(errors)
    return a


def save_automaton(x, path):
    Path(path).write_text(dump_automaton(x), encoding="utf-8")
