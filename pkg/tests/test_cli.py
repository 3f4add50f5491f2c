from __future__ import annotations

import io
import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from declgen import random_declaration, round_trip
from tauforms import randgen as rg
from tauforms.cli import ScriptError, execute, format_script, parse_script

GOLDEN = Path(__file__).parent / "golden"


def run_text(text: str, **kw):
    out = io.StringIO()
    code = execute(text, out, **kw)
    return code, out.getvalue()


# parsing --------------------------------------------------------------------


def test_parse_well_formed():
    s = parse_script("let C : curve = y^2 - x^3 - 1;\nlet w : tauform = tau(x) on C;\nxi w;\n")
    assert len(s.declarations) == 2 and len(s.commands) == 1
    assert s.commands[0].verb == "xi"


def test_syntax_error_position():
    with pytest.raises(ScriptError) as ei:
        parse_script("let f : fn = x / ;")
    assert (ei.value.code, ei.value.line, ei.value.col) == ("E_SYNTAX", 1, 18)


def test_unknown_identifier():
    with pytest.raises(ScriptError) as ei:
        parse_script("prolong V;")
    assert ei.value.code == "E_UNKNOWN_IDENT"
    assert (ei.value.line, ei.value.col) == (1, 9)


def test_kind_mismatch():
    with pytest.raises(ScriptError) as ei:
        parse_script("let P : curve = y;\nlet w : tauform = tau(x) on P;\nprolong w;")
    assert ei.value.line == 3


def test_duplicate_name():
    with pytest.raises(ScriptError):
        parse_script("let P : curve = y;\nlet P : curve = y - x;")


def test_format_script_is_canonical():
    text = "let  P:curve=y ;  let w : tauform = (1,x) on P;equiv w ,w;"
    canon = format_script(parse_script(text))
    assert canon == "let P : curve = y;\nlet w : tauform = (1, x) on P;\nequiv w, w;\n"
    assert format_script(parse_script(canon)) == canon


# running --------------------------------------------------------------------


def test_run_examples():
    code, out = run_text("let L : curve = y - t*x;\ntaudiff y on L;\n")
    assert code == 0 and out == "> taudiff y on L\n(t, x)\n"
    code, out = run_text("let V : poly = y - t*x;\ncone V;\ntangent V;\n")
    assert out == "> cone V\n-t*u + v - x*u' = 0\n> tangent V\n-t*u + v = 0\n"
    code, out = run_text("let P : curve = y;\nlet w1 : tauform = (1, x) on P;\nlet w2 : tauform = x*w1;\nequiv w1 w2;\n")
    assert out.endswith("true\n")


def test_errors_and_exit_codes():
    code, out = run_text("let P : curve = y;\nlet w : tauform = iota(x) on P;\nratio w;\nratio w;\n")
    assert code == 1
    assert out.count(">") == 1 and "E_TRIVIAL_FORM" in out
    code, _ = run_text("let f : fn = x / ;")
    assert code == 1
    code, out = run_text("let E : curve = y^2 - x^3 - t;\nglobals E --genus=1;\n")
    assert code == 1 and "E_UNSUPPORTED" in out


def test_json_output():
    code, out = run_text("let P : curve = y;\nxi tau(x) on P;\n", as_json=True)
    assert code == 0
    rec = json.loads(out.strip())
    assert rec["status"] == "ok"
    assert rec["result"]["algebraic"] == ["y = 0"]
    assert rec["result"]["differential"] == ["x' = 0"]


def test_check_mode():
    code, out = run_text("let P : curve = y;\nxi tau(x) on P;\n", check=True)
    assert (code, out) == (0, "ok: 1 declarations, 1 commands\n")


def test_golden_tour():
    text = (GOLDEN / "tour.tf").read_text()
    expected = (GOLDEN / "tour.out").read_text()
    code, out = run_text(text)
    assert code == 0
    assert out == expected


def test_executable_is_deterministic(tmp_path):
    script = GOLDEN / "tour.tf"
    cmd = [sys.executable, "-m", "tauforms", str(script)]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b == (GOLDEN / "tour.out").read_bytes()


@given(st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_declaration_round_trip(seed):
    text, kind, obj = random_declaration(rg.seeded(seed))
    assert round_trip(text, kind, obj), text
