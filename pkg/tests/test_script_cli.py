import json
import subprocess
import sys
from pathlib import Path

import pytest

from anticontraction import cli
from anticontraction.errors import CapabilityMissing, MoveError, ParseError, ValidationError
from anticontraction.script import diagram_hash, parse_script, run_script
from anticontraction.syntax import print_object

SCRIPTS = Path(__file__).parent / "scripts"
SIG_LINE = "signature x: 0, α: 2, β: 2"
TWO_CELLS = "zz[[x] | [x | α | x] | [x] | [x | β | x] | [x]]"
# canonical printed forms
TWO_CELLS_OUT = "zz[zz[x] | zz[x | α | x] @ <>, <> | zz[x] | zz[x | β | x] @ <>, <> | zz[x]]"
BRAIDED_OUT = "zz[zz[x] | zz[x | α | x | β | x] @ <>, <> | zz[x]]"


def script(*lines):
    return parse_script("\n".join(lines))


# ------------------------------------------------------------------ parsing

def test_parse_commands():
    s = script(SIG_LINE, "diagram " + TWO_CELLS, "# comment", "contract 0:2 pick=0",
               "anticontract 0/1 sink=[zz[x | α | x] @ <0>] bound=2,3", "expect " + TWO_CELLS)
    assert [c.verb for c in s.commands] == ["contract", "anticontract", "expect"]
    assert s.commands[0].args["range"] == (0, 2) and s.commands[0].args["pick"] == 0
    assert s.commands[1].args["path"] == [0, 1] and s.commands[1].args["bound"] == (2, 3)
    assert len(s.commands[1].args["sink"]) == 1
    assert s.commands[0].line == 4


def test_single_height_contract_range():
    s = script(SIG_LINE, "diagram " + TWO_CELLS, "contract 1")
    assert s.commands[0].args["range"] == (1, 2)


@pytest.mark.parametrize("bad, where", [
    ("frobnicate", "line 3"),
    ("contract", "line 3"),
    ("contract a:b", "line 3"),
    ("anticontract 0", "line 3"),
    ("anticontract 0/x sink=[x @ _]", "line 3"),
    ("contract 0:1 pick=1,2", "line 3"),
    ("contract 0:1 colour=3", "line 3"),
])
def test_parse_errors_name_the_line(bad, where):
    with pytest.raises(ParseError, match=where):
        script(SIG_LINE, "diagram " + TWO_CELLS, bad)


def test_script_needs_a_diagram():
    with pytest.raises(ParseError, match="no diagram"):
        script(SIG_LINE)
    with pytest.raises(ParseError, match="twice"):
        script(SIG_LINE, "diagram " + TWO_CELLS, "diagram " + TWO_CELLS)


# ------------------------------------------------------------------ replay

def test_empty_script_echoes_the_diagram():
    r = run_script(script(SIG_LINE, "diagram " + TWO_CELLS))
    assert print_object(r.diagram) == TWO_CELLS_OUT
    assert r.trace == [] and r.trace_lines() == ""
    assert len(r.proof) == 0


def test_braiding_script():
    r = run_script(parse_script((SCRIPTS / "braiding.mvs").read_text(encoding="utf-8")))
    assert len(r.trace) == 1
    (entry,) = r.trace
    assert entry["steps"] == ["contract"] and entry["verdicts"] == {"valid": True, "globular": True}
    assert entry["hash"] == diagram_hash(r.diagram)
    assert print_object(r.diagram) == BRAIDED_OUT
    assert len(r.proof) == 1


def test_replay_is_deterministic():
    text = (SCRIPTS / "naturality.mvs").read_text(encoding="utf-8")
    a, b = run_script(parse_script(text)), run_script(parse_script(text))
    assert a.trace_lines() == b.trace_lines()
    assert [t["hash"] for t in a.trace] == [t["hash"] for t in b.trace]
    assert all(all(t["verdicts"].values()) for t in a.trace)


def test_failed_expect_names_the_step():
    with pytest.raises(MoveError, match=r"step 2 .*expect failed"):
        run_script(script(SIG_LINE, "diagram " + TWO_CELLS, "contract 0:2 pick=0", "expect " + TWO_CELLS))


def test_bad_path_names_the_step():
    with pytest.raises(MoveError, match="step 1"):
        run_script(script(SIG_LINE, "diagram " + TWO_CELLS, "anticontract 9 sink=[zz[x | α | x] @ <0>]"))
    with pytest.raises(MoveError, match="deeper"):
        run_script(script(SIG_LINE, "diagram " + TWO_CELLS, "anticontract 1/0/0/0 sink=[x @ _]"))


def test_proof_boundaries_chain():
    r = run_script(script(SIG_LINE, "diagram " + TWO_CELLS, "contract 0:2 pick=0", "contract 0:1"))
    assert len(r.proof) == 2
    assert print_object(r.proof.regulars[0]) == TWO_CELLS_OUT
    assert r.proof.regulars[-1] == r.diagram


# ------------------------------------------------------------------ CLI

def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_ord_antipushout_contains_the_two_spans(capsys):
    code, out, _ = run_cli(capsys, "antipushout", "ord", "2->1:00", "3->1:000")
    assert code == 0
    lines = out.splitlines()
    assert "4->2:0001 4->3:0122" in lines
    assert "4->2:0111 4->3:0012" in lines
    assert lines == sorted(set(lines), key=lines.index)


def test_cli_antipushout_none(capsys):
    code, out, _ = run_cli(capsys, "antipushout", "set", "{a}->{c,d}:[a->c]", "{b}->{c,d}:[b->c]")
    assert (code, out) == (0, "none\n")


def test_cli_json(capsys):
    code, out, _ = run_cli(capsys, "antipushout", "set", "{a,b}->{c}", "{d}->{c}", "--format", "json")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and recs
    assert recs[0] == {"apex": "{0,1}", "legs": ["{0,1}->{a,b}:[0->a, 1->b]", "{0,1}->{d}:[0->d, 1->d]"]}


def test_cli_exists_and_enum(capsys):
    code, out, _ = run_cli(capsys, "anticolimit", "exists", "set", "{a}->{c,d}:[a->c]", "{b}->{c,d}:[b->c]")
    assert code == 0 and out.startswith("false")
    code, out, _ = run_cli(capsys, "anticolimit", "enum", "sig", "x->f", "f->f", "--sig", "x: 0, f: 1")
    assert code == 0 and out.strip() == "e0=x; x->x:_; x->f:_"


def test_cli_contract_length_zero(capsys):
    code, out, _ = run_cli(capsys, "contract", "zz[{a}]")
    assert code == 0
    assert out.splitlines() == ["zz[{a} | {a} @ [a->a], [a->a] | {a}]", "<:;[a->a],[a->a]>"]


def test_cli_contract_range(capsys):
    code, out, _ = run_cli(capsys, "contract", TWO_CELLS, "--range", "0:2", "--pick", "0", "--sig", "x: 0, α: 2, β: 2")
    assert code == 0 and out.splitlines()[0] == BRAIDED_OUT


def test_cli_run_with_trace(capsys, tmp_path):
    trace = tmp_path / "trace.jsonl"
    code, out, _ = run_cli(capsys, "run", str(SCRIPTS / "braiding.mvs"), "--trace", str(trace))
    assert code == 0 and out.strip() == BRAIDED_OUT
    entries = [json.loads(line) for line in trace.read_text(encoding="utf-8").splitlines()]
    assert [e["step"] for e in entries] == [1]
    code, out, _ = run_cli(capsys, "run", str(SCRIPTS / "naturality.mvs"), "--format", "json")
    assert code == 0 and json.loads(out)["steps"] == 2


def test_cli_exit_codes(capsys, tmp_path, monkeypatch):
    assert run_cli(capsys, "antipushout", "ord", "2->1:01", "1->1:0")[0] == 1
    assert run_cli(capsys, "contract", "zz[{a} | {b} | {c}")[0] == 2
    assert run_cli(capsys, "antipushout", "grp", "a->b", "c->b")[0] == 2
    assert run_cli(capsys, "run", str(tmp_path / "missing.mvs"))[0] == 1
    bad = tmp_path / "bad.mvs"
    bad.write_text(f"{SIG_LINE}\ndiagram {TWO_CELLS}\nexpect zz[[x]]\n", encoding="utf-8")
    code, _, err = run_cli(capsys, "run", str(bad))
    assert code == 1 and "step 1" in err

    def missing(*a, **k):
        raise CapabilityMissing("FinOrd: sink factorisation")

    monkeypatch.setattr(cli, "antipushout", missing)
    code, _, err = run_cli(capsys, "antipushout", "ord", "2->1:00", "3->1:000")
    assert code == 3 and "factorisation" in err


def test_error_classes_carry_exit_codes():
    assert ValidationError("x").exit_code == 1
    assert ParseError("x").exit_code == 2
    assert CapabilityMissing("x").exit_code == 3


def test_console_module_entry():
    out = subprocess.run([sys.executable, "-m", "anticontraction", "antipushout", "ord", "0->1:_", "1->1:0"],
                         capture_output=True, text=True, timeout=120)
    assert out.returncode == 0 and out.stdout.strip() == "0->0:_ 0->1:_"
