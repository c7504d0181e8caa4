import json
from pathlib import Path

import pytest

from hedgeauto.corpus import CorpusSpec
from hedgeauto.harness.cli import main
from hedgeauto.harness.fileformat import (
    FormatError,
    InvalidAutomaton,
    dump_automaton,
    load_automaton,
    parse_automaton,
    save_automaton,
)
from hedgeauto.harness.oracles import language_equal
from hedgeauto.harness.reports import concat_census, concat_formula, verify_boolean_bounds
from hedgeauto.sdta import Sdta
from hedgeauto.wdta import Wdta, sdta_to_wdta
from hedgeauto.witnesses import derived_boolean_witnesses, make_MA, make_MB

DATA = Path(__file__).parent / "data"
GOLDEN = DATA / "mb2.sdta"


def test_golden_file_matches_witness():
    assert dump_automaton(make_MB(2)) == GOLDEN.read_text()


def test_golden_round_trip_is_byte_identical(tmp_path):
    a = load_automaton(GOLDEN)
    out = tmp_path / "x.sdta"
    save_automaton(a, out)
    assert out.read_bytes() == GOLDEN.read_bytes()
    assert language_equal(a, make_MB(2), CorpusSpec("abcd", 3, 3), method="summary").ok


@pytest.mark.parametrize("x", [make_MA(3), sdta_to_wdta(make_MB(3)), derived_boolean_witnesses(2, 3)[1]])
def test_dump_parse_dump(x):
    text = dump_automaton(x)
    y = parse_automaton(text)
    assert type(y) is type(x)
    assert dump_automaton(y) == text


def test_wdta_format_uses_accept_lines():
    text = dump_automaton(sdta_to_wdta(make_MB(2)))
    assert text.startswith("kind wdta")
    assert "accept " in text and "out " not in text


def replace_line(text, old, new):
    assert old in text
    return text.replace(old, new, 1)


def test_bad_kind_reports_line():
    with pytest.raises(FormatError) as e:
        parse_automaton("# comment\nkind nonsense\n")
    assert e.value.line_no == 2


def test_bad_integer_reports_line():
    text = replace_line(GOLDEN.read_text(), "hstates 3", "hstates three")
    with pytest.raises(FormatError) as e:
        parse_automaton(text)
    assert e.value.line_no == 6


def test_duplicate_transition_rejected():
    text = replace_line(GOLDEN.read_text(), "t 0 state:0 1\n", "t 0 state:0 1\nt 0 state:0 2\n")
    with pytest.raises(FormatError) as e:
        parse_automaton(text)
    assert e.value.line_no == 9 and "duplicate" in str(e.value)


def test_unknown_letter_rejected():
    text = replace_line(GOLDEN.read_text(), "t 0 state:0 1", "t 0 oops 1")
    with pytest.raises(FormatError):
        parse_automaton(text)


def test_invalid_automaton_rejected(tmp_path):
    p = tmp_path / "bad.sdta"
    p.write_text(replace_line(GOLDEN.read_text(), "final 1", "final 7"))
    with pytest.raises(InvalidAutomaton):
        load_automaton(p)
    assert load_automaton(p, check=False).final == {7}


def test_overlapping_wdta_rejected(tmp_path):
    text = dump_automaton(sdta_to_wdta(make_MB(2)))
    # make state 0 under c accept the same words as state 1
    lines = text.splitlines()
    i = lines.index("hdfa c 1")
    j = lines.index("end", i)
    block = lines[i:j + 1]
    block[0] = "hdfa c 0"
    p = tmp_path / "bad.wdta"
    p.write_text("\n".join(lines + block) + "\n")
    with pytest.raises(InvalidAutomaton) as e:
        load_automaton(p)
    assert any(v.kind == "overlapping languages" for v in e.value.violations)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_eval(capsys):
    code, out, _ = run(capsys, "eval", GOLDEN, "b(a,a)")
    assert code == 0 and "state: 1" in out and "accepted: yes" in out
    code, out, _ = run(capsys, "eval", GOLDEN, "b(a,b(a))")
    assert "state: none" in out and "accepted: no" in out


def test_cli_errors_exit_2(capsys, tmp_path):
    assert run(capsys, "eval", GOLDEN, "b(a,")[0] == 2
    assert run(capsys, "eval", tmp_path / "missing.sdta", "a")[0] == 2
    bad = tmp_path / "bad.sdta"
    bad.write_text("kind sdta\nalphabet\nbogus\n")
    code, _, err = run(capsys, "eval", bad, "a")
    assert code == 2 and "line 3" in err
    assert run(capsys, "op", "union", GOLDEN)[0] == 2
    assert run(capsys, "enumerate", "--max-width", "0")[0] == 2


def test_cli_ops_and_equal(capsys, tmp_path):
    ma = tmp_path / "ma.sdta"
    assert run(capsys, "witness", "MA", "--m", "2", "-o", ma)[0] == 0
    u, i, c, n = (tmp_path / f"{k}.sdta" for k in "uicn")
    assert run(capsys, "op", "union", ma, GOLDEN, "-o", u)[0] == 0
    assert run(capsys, "op", "intersect", ma, GOLDEN, "-o", i)[0] == 0
    assert run(capsys, "op", "concat", ma, GOLDEN, "-o", c)[0] == 0
    assert run(capsys, "op", "complement", GOLDEN, "-o", n)[0] == 0
    assert run(capsys, "equal", u, u)[0] == 0
    code, out, _ = run(capsys, "equal", u, i, "--max-height", "2")
    assert code == 1 and out.startswith("different:")
    m = tmp_path / "m.sdta"
    assert run(capsys, "minimize", c, "-o", m)[0] == 0
    assert load_automaton(m).vstates.__len__() == 29


def test_cli_witness_kinds(capsys, tmp_path):
    w = tmp_path / "w.wdta"
    assert run(capsys, "witness", "BOOL", "--m", "2", "--n", "3", "--part", "2", "--kind", "wdta", "-o", w)[0] == 0
    x = load_automaton(w)
    assert isinstance(x, Wdta) and len(x.vstates) == 3


def test_cli_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--alphabet", "a,b", "--max-height", "1", "--max-width", "1")
    assert code == 0 and out.split() == ["a", "b", "a(a)", "a(b)", "b(a)", "b(b)"]
    code, out, _ = run(capsys, "enumerate", "--automaton", GOLDEN, "--max-height", "1", "--max-width", "2")
    assert sorted(out.split()) == ["b(a)", "b(a,a)", "c(a)", "c(a,a)"]
    assert run(capsys, "enumerate", "--alphabet", "a,b,c,d")[0] == 2


def test_cli_verify_reports(capsys, tmp_path):
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    code, out, _ = run(capsys, "verify", "concat-bound", "--m", "2", "--n", "2", "--report", r1)
    assert code == 0 and "verdict: PASS" in out and "minimized vertical: 29" in out
    run(capsys, "verify", "concat-bound", "--m", "2", "--n", "2", "--report", r2)
    assert r1.read_bytes() == r2.read_bytes()
    data = json.loads(r1.read_text())
    assert data["minimized_vertical"] == 29 and data["passed"]
    code, out, _ = run(capsys, "verify", "boolean-bounds", "--op", "intersection", "--kind", "wdta", "--n", "3")
    assert code == 0 and "verdict: PASS" in out


def test_failed_check_gives_failed_report():
    a1, a2 = derived_boolean_witnesses(2, 2)
    rep = verify_boolean_bounds("union", "sdta", a1, a2, expect_minimized=99)
    assert not rep.passed and rep.failed()
    assert "[FAIL]" in rep.to_text() and "verdict: FAIL" in rep.to_text()


def test_formula_and_census_agree():
    for m in range(2, 5):
        for n in range(2, 5):
            assert len(concat_census(m, n)) == concat_formula(m, n)
