"""Random declarations for parse/print round-trip checks."""

from __future__ import annotations

from tauforms import randgen as rg
from tauforms.cli.runner import Evaluator, Value, format_value
from tauforms.cli.syntax import format_script, parse_script
from tauforms.diffbase import format_mpoly

KINDS = ("field-elem", "poly", "curve", "fn", "tauform", "morphism")


def random_declaration(rng):
    """(script text, declared kind, expected object) with the target declared last."""
    C = rg.rand_curve(rng)
    kind = KINDS[rng.randrange(len(KINDS))]
    head = f"let C : curve = {format_mpoly(C.p)};\nlet P : curve = y;\n"
    suffix = ""
    if kind == "field-elem":
        obj = rg.rand_base(rng, 2)
    elif kind == "poly":
        obj = rg.rand_mpoly(rng, ("x1", "x2", "u1"), deg=3)
    elif kind == "curve":
        obj = C
    elif kind == "fn":
        obj, suffix = rg.rand_fn(rng, C), " on C"
    elif kind == "tauform":
        obj, suffix = rg.rand_tauform(rng, C, trivial_rate=0.2), " on C"
    else:
        obj, suffix = rg.rand_p1_map(rng), " from P to P"
    body = format_value(Value(kind, obj, "C"))
    return f"{head}let a : {kind} = {body}{suffix};\n", kind, obj


def round_trip(text: str, kind: str, obj) -> bool:
    """parse(print(obj)) == obj, and canonical script text is a fixed point."""
    script = parse_script(text)
    ev = Evaluator()
    for d in script.statements:
        v = ev.declare(d)
    same = v.obj.p == obj.p if kind == "curve" else v.obj == obj
    canon = format_script(script)
    return same and format_script(parse_script(canon)) == canon
