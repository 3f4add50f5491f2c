"""Evaluate declarations and dispatch commands of a parsed script."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from ..curvefield import CurveError, CurveFn, PlaneCurve, format_curvefn
from ..diffbase import T, BaseElem, MPoly, base_delta, format_base, format_mpoly, var_sort_key
from ..points import CurvePoint, ExtensionField, FieldElem, FieldError, make_point
from ..prolong import (
    EmbeddedVariety,
    LinearSystem,
    VarietyError,
    lifting_map,
    prolongation,
    prolongation_cone,
    tangent_variety,
    tau_diff_ambient,
)
from ..smset import xi_overlap_implies_equiv, xi_pullback_check, xi_system
from ..tauform import (
    CurveMorphism,
    MorphismError,
    TauForm,
    TrivialFormError,
    UnsupportedCurveError,
    canonical_ratio,
    classify_point,
    decompose,
    global_tau_basis_constant_case,
    iota,
    lambda_map,
    null_set,
    parallel,
    primitive_section,
    pullback,
    sim_class_meets_parallel_class,
    sim_equivalent,
    tau_of,
)
from .syntax import (
    BinOp,
    Call,
    Command,
    Declaration,
    Expr,
    List_,
    Name,
    Neg,
    Num,
    Pow,
    Script,
    ScriptError,
    Tuple_,
    _names,
    format_statement,
)


class InternalError(Exception):
    """An invariant of the library was violated; maps to exit status 2."""


@dataclass
class Value:
    kind: str
    obj: Any
    curve: Optional[str] = None  # home curve name (fn, tauform) or source (morphism)


@dataclass
class Report:
    echo: str
    status: str  # "ok" or "error"
    text: str = ""
    data: Dict[str, Any] = field(default_factory=dict)
    code: Optional[str] = None
    message: Optional[str] = None
    internal: bool = False

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"command": self.echo, "status": self.status}
        if self.status == "ok":
            out["result"] = self.data
        else:
            out["error"] = {"code": self.code, "message": self.message}
        return out

    def to_text(self) -> str:
        body = self.text if self.status == "ok" else self.message
        return f"> {self.echo}\n{body}\n"


def _err(e: Expr, code: str, msg: str) -> ScriptError:
    return ScriptError(code, msg, e.line, e.col)


# ---------------------------------------------------------------------------
# expression evaluation
# ---------------------------------------------------------------------------


class Evaluator:
    def __init__(self):
        self.env: Dict[str, Value] = {}

    def curve(self, name: str) -> PlaneCurve:
        return self.env[name].obj

    # Q(t) -------------------------------------------------------------
    def scalar(self, e: Expr) -> BaseElem:
        if isinstance(e, Num):
            return BaseElem.coerce(e.value)
        if isinstance(e, Name):
            if e.id == "t":
                return T
            v = self.env.get(e.id)
            if v is not None and v.kind == "field-elem":
                return v.obj
            raise _err(e, "E_KIND", f"{e.id!r} is not an element of Q(t)")
        if isinstance(e, Neg):
            return -self.scalar(e.arg)
        if isinstance(e, Pow):
            b = self.scalar(e.base)
            if e.exp < 0:
                if b.is_zero():
                    raise _err(e, "E_DIVZERO", "zero raised to a negative power")
                return b.inverse() ** (-e.exp)
            return b ** e.exp
        if isinstance(e, BinOp):
            a, b = self.scalar(e.left), self.scalar(e.right)
            if e.op == "/" and b.is_zero():
                raise _err(e, "E_DIVZERO", "division by zero")
            return _arith(e.op, a, b)
        raise _err(e, "E_KIND", "expected an element of Q(t)")

    # polynomials -------------------------------------------------------
    def poly(self, e: Expr, variables: Sequence[str] | None = None) -> MPoly:
        if isinstance(e, Num):
            return MPoly.const(BaseElem.coerce(e.value))
        if isinstance(e, Name):
            if e.id == "t":
                return MPoly.const(T)
            v = self.env.get(e.id)
            if v is not None:
                if v.kind == "field-elem":
                    return MPoly.const(v.obj)
                if v.kind == "poly":
                    if isinstance(v.obj, tuple):
                        raise _err(e, "E_KIND", f"{e.id!r} is a list of polynomials")
                    return v.obj
                raise _err(e, "E_KIND", f"{e.id!r} is a {v.kind}, expected a polynomial")
            if variables is not None and e.id not in variables:
                raise _err(e, "E_KIND", f"variable {e.id!r} is not allowed here")
            return MPoly.var(e.id)
        if isinstance(e, Neg):
            return -self.poly(e.arg, variables)
        if isinstance(e, Pow):
            b = self.poly(e.base, variables)
            if e.exp < 0:
                if not b.is_constant() or b.is_zero():
                    raise _err(e, "E_KIND", "negative powers of polynomials are not polynomials")
                return MPoly.const(b.constant_value().inverse() ** (-e.exp))
            return b ** e.exp
        if isinstance(e, BinOp):
            a, b = self.poly(e.left, variables), self.poly(e.right, variables)
            if e.op == "/":
                if b.is_zero():
                    raise _err(e, "E_DIVZERO", "division by zero")
                if not b.is_constant():
                    raise _err(e, "E_KIND", "polynomials can only be divided by elements of Q(t)")
                return a.scale(b.constant_value().inverse())
            return _arith(e.op, a, b)
        raise _err(e, "E_KIND", "expected a polynomial")

    def poly_list(self, e: Expr) -> Tuple[MPoly, ...]:
        if isinstance(e, List_):
            return tuple(self.poly(i) for i in e.items)
        if isinstance(e, Name) and e.id in self.env:
            v = self.env[e.id]
            if v.kind == "poly" and isinstance(v.obj, tuple):
                return v.obj
            if v.kind == "curve":
                return (v.obj.p,)
        return (self.poly(e),)

    # K(C) ---------------------------------------------------------------
    def fn(self, e: Expr, C: PlaneCurve) -> CurveFn:
        if isinstance(e, Num):
            return C.const(e.value)
        if isinstance(e, Name):
            if e.id == "t":
                return C.const(T)
            if e.id == "x":
                return C.x
            if e.id == "y":
                return C.y
            v = self.env.get(e.id)
            if v is None:
                raise _err(e, "E_KIND", f"variable {e.id!r} is not a coordinate of the curve")
            if v.kind == "field-elem":
                return C.const(v.obj)
            if v.kind == "poly" and not isinstance(v.obj, tuple):
                extra = set(v.obj.used_variables()) - {"x", "y"}
                if extra:
                    raise _err(e, "E_KIND", f"{e.id!r} uses variables {sorted(extra)} outside x, y")
                return C.fn(v.obj)
            if v.kind == "fn":
                if v.obj.curve != C:
                    raise _err(e, "E_KIND", f"{e.id!r} lives on another curve")
                return v.obj
            raise _err(e, "E_KIND", f"{e.id!r} is a {v.kind}, expected a function")
        if isinstance(e, Neg):
            return -self.fn(e.arg, C)
        if isinstance(e, Pow):
            b = self.fn(e.base, C)
            if e.exp < 0 and b.is_zero():
                raise _err(e, "E_DIVZERO", "zero raised to a negative power")
            return b ** e.exp
        if isinstance(e, BinOp):
            a, b = self.fn(e.left, C), self.fn(e.right, C)
            if e.op == "/" and b.is_zero():
                raise _err(e, "E_DIVZERO", "division by the zero function")
            return _arith(e.op, a, b)
        if isinstance(e, (Tuple_, Call)):
            raise _err(e, "E_KIND", "a tauform appears where a function is expected")
        raise _err(e, "E_KIND", "expected a function")

    # tau-forms (mixed with functions, promoted through iota) -------------
    def mixed(self, e: Expr, C: PlaneCurve):
        if isinstance(e, Tuple_):
            if len(e.items) != 2:
                raise _err(e, "E_KIND", "a tauform pair has exactly two entries (A, B)")
            return TauForm(C, self.fn(e.items[0], C), self.fn(e.items[1], C))
        if isinstance(e, Call):
            arg = self.fn(e.args[0], C)
            return tau_of(arg) if e.func == "tau" else iota(arg)
        if isinstance(e, Name) and e.id in self.env and self.env[e.id].kind == "tauform":
            w = self.env[e.id].obj
            if w.curve != C:
                raise _err(e, "E_KIND", f"{e.id!r} lives on another curve")
            return w
        if isinstance(e, Neg):
            return -self.mixed(e.arg, C)
        if isinstance(e, BinOp):
            a, b = self.mixed(e.left, C), self.mixed(e.right, C)
            ta, tb = isinstance(a, TauForm), isinstance(b, TauForm)
            if e.op in "+-":
                if not ta and tb:
                    return (b if e.op == "+" else -b) + a
                return _arith(e.op, a, b)
            if e.op == "*":
                if ta and tb:
                    raise _err(e, "E_KIND", "tauforms cannot be multiplied together")
                return a * b if ta or not tb else b * a
            if tb:
                raise _err(e, "E_KIND", "cannot divide by a tauform")
            if b.is_zero():
                raise _err(e, "E_DIVZERO", "division by the zero function")
            return a / b
        if isinstance(e, Pow):
            b = self.mixed(e.base, C)
            if isinstance(b, TauForm):
                raise _err(e, "E_KIND", "tauforms cannot be raised to a power")
            if e.exp < 0 and b.is_zero():
                raise _err(e, "E_DIVZERO", "zero raised to a negative power")
            return b ** e.exp
        return self.fn(e, C)

    def tauform(self, e: Expr, C: PlaneCurve) -> TauForm:
        w = self.mixed(e, C)
        if not isinstance(w, TauForm):
            raise _err(e, "E_KIND", "expected a tauform, got a function (use iota(...) to embed it)")
        return w

    # points ------------------------------------------------------------
    def field_value(self, e: Expr, F: ExtensionField) -> FieldElem:
        if isinstance(e, Num):
            return F.elem(e.value)
        if isinstance(e, Name):
            if e.id == "t":
                return F.elem(T)
            if e.id == F.var and F.m:
                return F.elem(MPoly.var(F.var))
            v = self.env.get(e.id)
            if v is not None and v.kind == "field-elem":
                return F.elem(v.obj)
            raise _err(e, "E_KIND", f"{e.id!r} is not an element of the coordinate field")
        if isinstance(e, Neg):
            return -self.field_value(e.arg, F)
        if isinstance(e, Pow):
            b = self.field_value(e.base, F)
            if e.exp < 0:
                if b.is_zero():
                    raise _err(e, "E_DIVZERO", "zero raised to a negative power")
                return b.inverse() ** (-e.exp)
            return b ** e.exp
        if isinstance(e, BinOp):
            a, b = self.field_value(e.left, F), self.field_value(e.right, F)
            if e.op == "/" and b.is_zero():
                raise _err(e, "E_DIVZERO", "division by zero")
            return _arith(e.op, a, b)
        raise _err(e, "E_KIND", "expected a coordinate")

    def point(self, e: Expr, C: PlaneCurve, F: ExtensionField) -> CurvePoint:
        if not isinstance(e, Tuple_) or len(e.items) != 2:
            raise _err(e, "E_KIND", "expected a point (a, b)")
        x, y = (self.field_value(i, F) for i in e.items)
        try:
            return make_point(C, x, y, F)
        except CurveError as exc:
            raise _err(e, "E_POINT", str(exc)) from None

    # declarations --------------------------------------------------------
    def declare(self, d: Declaration) -> Value:
        k = d.kind
        if k == "field-elem":
            v = Value(k, self.scalar(d.expr))
        elif k == "poly":
            v = Value(k, self.poly_list(d.expr) if isinstance(d.expr, List_) else self.poly(d.expr))
        elif k == "curve":
            p = self.poly(d.expr, ("t", "x", "y"))
            v = Value(k, PlaneCurve(p, name=d.name))
        elif k == "fn":
            cname = d.on or _infer_curve(d.expr, self.env)
            v = Value(k, self.fn(d.expr, self.curve(cname)), cname)
        elif k == "tauform":
            cname = d.on or _infer_curve(d.expr, self.env)
            v = Value(k, self.tauform(d.expr, self.curve(cname)), cname)
        elif k == "morphism":
            C1, C2 = self.curve(d.source), self.curve(d.target)
            r, s = (self.fn(i, C1) for i in d.expr.items)
            v = Value(k, CurveMorphism(C1, C2, r, s), d.source)
        else:
            raise InternalError(f"unknown kind {k}")
        self.env[d.name] = v
        return v


def _arith(op: str, a, b):
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    return a / b


def _infer_curve(e: Expr, env: Dict[str, Value]) -> str:
    for n in _names(e):
        v = env.get(n.id)
        if v is not None and v.kind in ("fn", "tauform"):
            return v.curve
    raise _err(e, "E_KIND", "cannot tell which curve this expression lives on; add 'on CURVE'")


# ---------------------------------------------------------------------------
# canonical text and structured payloads
# ---------------------------------------------------------------------------


def curve_name(C: PlaneCurve) -> str:
    return C.name or format_mpoly(C.p)


def tau_data(w: TauForm) -> Dict[str, Any]:
    return {"type": "tauform", "curve": curve_name(w.curve), "A": str(w.A), "B": str(w.B), "text": str(w)}


def fn_data(f: CurveFn) -> Dict[str, Any]:
    return {"type": "fn", "curve": curve_name(f.curve), "text": str(f)}


def system_data(s: LinearSystem) -> Dict[str, Any]:
    return {
        "type": "linear-system",
        "base_vars": list(s.base_vars),
        "fiber_vars": list(s.fiber_vars),
        "equations": list(s.lines()),
    }


def format_value(v: Value) -> str:
    """Canonical text of a declared object, parseable as its declaration body."""
    if v.kind == "field-elem":
        return format_base(v.obj)
    if v.kind == "poly":
        if isinstance(v.obj, tuple):
            return "[" + ", ".join(format_mpoly(p) for p in v.obj) + "]"
        return format_mpoly(v.obj)
    if v.kind == "curve":
        return format_mpoly(v.obj.p)
    if v.kind == "fn":
        return format_curvefn(v.obj)
    if v.kind == "tauform":
        return str(v.obj)
    if v.kind == "morphism":
        return f"({v.obj.r}, {v.obj.s})"
    raise InternalError(f"unknown kind {v.kind}")


def _point_text(pt: CurvePoint) -> str:
    return f"({_field_text(pt.x)}, {_field_text(pt.y)})"


def _field_text(a: FieldElem) -> str:
    F = a.field
    if not a.c:
        return "0"
    terms = {(k,): c for k, c in enumerate(a.c) if c}
    return format_mpoly(MPoly((F.var,), terms))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _bool(b: bool) -> Tuple[str, Dict[str, Any]]:
    return ("true" if b else "false"), {"type": "bool", "value": b}


class Runner:
    def __init__(self, default_seed: int = 0):
        self.ev = Evaluator()
        self.default_seed = default_seed

    # argument helpers -----------------------------------------------------
    def _curve_for(self, c: Command, e: Expr) -> PlaneCurve:
        if c.on is not None:
            return self.ev.curve(c.on)
        return self.ev.curve(_infer_curve(e, self.ev.env))

    def _forms(self, c: Command, exprs: Sequence[Expr]) -> List[TauForm]:
        cname = c.on
        if cname is None:
            for e in exprs:
                try:
                    cname = _infer_curve(e, self.ev.env)
                    break
                except ScriptError:
                    continue
        if cname is None:
            raise _err(exprs[0], "E_KIND", "cannot tell which curve these tauforms live on; add 'on CURVE'")
        C = self.ev.curve(cname)
        return [self.ev.tauform(e, C) for e in exprs]

    def _morphism(self, e: Expr) -> CurveMorphism:
        return self.ev.env[e.id].obj

    def _variety(self, e: Expr) -> EmbeddedVariety:
        return EmbeddedVariety(self.ev.poly_list(e))

    def _option_int(self, c: Command, name: str, default: Optional[int]) -> Optional[int]:
        o = c.option(name)
        if o is None:
            return default
        v = self.ev.scalar(o.value)
        f = v.to_fraction() if v.is_rational() else None
        if f is None or f.denominator != 1:
            raise _err(o.value, "E_ARG", f"--{name} expects an integer")
        return int(f)

    def _ext_field(self, c: Command) -> ExtensionField:
        o = c.option("ext")
        if o is None:
            return ExtensionField()
        m = self.ev.poly(o.value, ("t", "z"))
        try:
            return ExtensionField(m, "z")
        except FieldError as exc:
            raise _err(o.value, "E_FIELD", str(exc)) from None

    # dispatch ---------------------------------------------------------------
    def command(self, c: Command) -> Tuple[str, Dict[str, Any]]:
        handler: Callable = getattr(self, "cmd_" + c.verb)
        return handler(c)

    def cmd_tangent(self, c):
        s = tangent_variety(self._variety(c.args[0]))
        return str(s), system_data(s)

    def cmd_prolong(self, c):
        s = prolongation(self._variety(c.args[0]))
        return str(s), system_data(s)

    def cmd_cone(self, c):
        s = prolongation_cone(self._variety(c.args[0]))
        return str(s), system_data(s)

    def cmd_lift(self, c):
        e = c.args[0]
        comps = tuple(self.ev.poly(i) for i in e.items) if isinstance(e, List_) else (self.ev.poly(e),)
        used = set()
        for p in comps:
            used.update(p.used_variables())
        used.discard("t")
        vs = tuple(sorted(used, key=var_sort_key)) or ("x",)
        m = lifting_map(comps, vs)
        return str(m), {
            "type": "lifting-map",
            "variables": list(vs),
            "base_map": [format_mpoly(p) for p in m.base_map],
            "fiber_maps": [str(f) for f in m.fiber_maps],
            "text": str(m),
        }

    def cmd_taudiff(self, c):
        e = c.args[0]
        if c.on is None:
            try:
                cname = _infer_curve(e, self.ev.env)
            except ScriptError:
                cname = None
        else:
            cname = c.on
        if cname is not None:
            w = tau_of(self.ev.fn(e, self.ev.curve(cname)))
            return str(w), tau_data(w)
        f = self.ev.poly(e)
        vs = tuple(sorted(set(f.used_variables()), key=var_sort_key))
        m = tau_diff_ambient(f, vs)
        return str(m), {
            "type": "affine-fiber-map",
            "variables": list(vs),
            "linear": [format_mpoly(p) for p in m.linear_part],
            "constant": format_mpoly(m.constant_part),
            "text": str(m),
        }

    def cmd_iota(self, c):
        g = self.ev.fn(c.args[0], self._curve_for(c, c.args[0]))
        w = iota(g)
        return str(w), tau_data(w)

    def cmd_lambda(self, c):
        (w,) = self._forms(c, c.args)
        o = lambda_map(w)
        return str(o), {"type": "oneform", "curve": curve_name(w.curve), "coeff": str(o.coeff), "text": str(o)}

    def cmd_decompose(self, c):
        w1, w0 = self._forms(c, c.args)
        f, g = decompose(w1, w0)
        return f"f = {f}, g = {g}", {"type": "decomposition", "f": str(f), "g": str(g)}

    def cmd_equiv(self, c):
        w1, w2 = self._forms(c, c.args)
        return _bool(sim_equivalent(w1, w2))

    def cmd_parallel(self, c):
        w1, w2 = self._forms(c, c.args)
        text, data = _bool(parallel(w1, w2))
        if c.option("meet") is not None:
            m = sim_class_meets_parallel_class(w1, w2)
            text += f"\nmeet = {m}"
            data = {"type": "parallel", "value": data["value"], "meet": tau_data(m)}
        return text, data

    def cmd_ratio(self, c):
        (w,) = self._forms(c, c.args)
        r = canonical_ratio(w)
        return str(r), fn_data(r)

    def cmd_nullset(self, c):
        (w,) = self._forms(c, c.args)
        n = null_set(w)
        return str(n), {"type": "null-section", "u": str(n.u), "v": str(n.v)}

    def cmd_pullback(self, c):
        phi = self._morphism(c.args[1])
        w = self.ev.tauform(c.args[0], phi.target)
        p = pullback(w, phi)
        return str(p), tau_data(p)

    def cmd_primsec(self, c):
        a, b = (self.ev.poly(e) for e in c.args)
        s = primitive_section(a, b)
        return str(s), {
            "type": "primitive-section",
            "content": format_mpoly(s.content),
            "a": format_mpoly(s.a),
            "b": format_mpoly(s.b),
        }

    def cmd_globals(self, c):
        C = self.ev.curve(c.args[0].id)
        genus = self._option_int(c, "genus", None)
        if genus is None:
            raise ScriptError("E_ARG", "globals needs --genus N", c.line, c.col)
        basis = global_tau_basis_constant_case(C, genus)
        text = f"dimension {len(basis)}\n" + "\n".join(str(w) for w in basis)
        return text, {"type": "tauform-basis", "dimension": len(basis), "basis": [tau_data(w) for w in basis]}

    def cmd_xi(self, c):
        (w,) = self._forms(c, c.args)
        pts = []
        o = c.option("points")
        if o is not None:
            F = self._ext_field(c)
            items = o.value.items if isinstance(o.value, List_) else (o.value,)
            pts = [self.ev.point(i, w.curve, F) for i in items]
        s = xi_system(w, pts)
        text = str(s)
        poles = [_point_text(p) for p in s.poles]
        if pts:
            text += "\npoles: " + (", ".join(poles) if poles else "none")
        return text, {
            "type": "differential-system",
            "algebraic": [f"{format_mpoly(g)} = 0" for g in s.algebraic],
            "differential": [str(e) for e in s.differential],
            "poles": poles,
        }

    def cmd_xicheck(self, c):
        phi = self._morphism(c.args[0])
        w2 = self.ev.tauform(c.args[1], phi.target)
        w1 = self.ev.tauform(c.args[2], phi.source) if len(c.args) > 2 else None
        return _bool(xi_pullback_check(phi, w2, w1))

    def cmd_overlap(self, c):
        w1, w2 = self._forms(c, c.args)
        return _bool(xi_overlap_implies_equiv(w1, w2))

    def cmd_classify(self, c):
        (w,) = self._forms(c, c.args[:1])
        pt = self.ev.point(c.args[1], w.curve, self._ext_field(c))
        r = classify_point(w, pt)
        return r, {"type": "point-class", "value": r}

    def cmd_delta(self, c):
        p = self.ev.poly(c.args[0])
        if p.is_constant():
            d = base_delta(p.constant_value())
            return format_base(d), {"type": "field-elem", "text": format_base(d)}
        d = p.coeff_delta()
        return format_mpoly(d), {"type": "poly", "text": format_mpoly(d)}

    def cmd_partial(self, c):
        p = self.ev.poly(c.args[0])
        var = c.args[1].id
        if var not in p.used_variables():
            p = p.with_variables(tuple(p.variables) + (var,))
        d = p.partial(var)
        return format_mpoly(d), {"type": "poly", "text": format_mpoly(d)}

    def cmd_print(self, c):
        e = c.args[0]
        if isinstance(e, Name) and e.id in self.ev.env:
            v = self.ev.env[e.id]
            text = format_value(v)
            data = {"type": v.kind, "text": text}
            if v.curve is not None:
                data["curve"] = v.curve
            return text, data
        if c.on is not None:
            r = self.ev.mixed(e, self.ev.curve(c.on))
            if isinstance(r, TauForm):
                return str(r), tau_data(r)
            return str(r), fn_data(r)
        p = self.ev.poly(e)
        if p.is_constant():
            return format_base(p.constant_value()), {"type": "field-elem", "text": format_base(p.constant_value())}
        return format_mpoly(p), {"type": "poly", "text": format_mpoly(p)}

    def cmd_selftest(self, c):
        from ..selftest import run_selftest

        seed = self._option_int(c, "seed", self.default_seed)
        results = run_selftest(seed)
        lines = [f"{r.name}: {'ok' if r.ok else 'FAILED'} ({r.cases} cases)" for r in results]
        data = {
            "type": "selftest",
            "seed": seed,
            "suites": [{"name": r.name, "cases": r.cases, "ok": r.ok} for r in results],
        }
        if not all(r.ok for r in results):
            raise InternalError("selftest failed:\n" + "\n".join(lines))
        return "\n".join(lines), data


# ---------------------------------------------------------------------------
# error mapping and the top-level loop
# ---------------------------------------------------------------------------

_ERROR_CODES: Tuple[Tuple[type, str], ...] = (
    (TrivialFormError, "E_TRIVIAL_FORM"),
    (MorphismError, "E_MORPHISM"),
    (UnsupportedCurveError, "E_UNSUPPORTED"),
    (FieldError, "E_FIELD"),
    (VarietyError, "E_VARIETY"),
    (CurveError, "E_CURVE"),
    (ZeroDivisionError, "E_DIVZERO"),
)


def classify_exception(exc: BaseException) -> Tuple[str, bool]:
    """(code, internal?) for an exception raised while running a statement."""
    if isinstance(exc, ScriptError):
        return exc.code, False
    if isinstance(exc, InternalError):
        return "E_INTERNAL", True
    for cls, code in _ERROR_CODES:
        if isinstance(exc, cls):
            return code, False
    if isinstance(exc, KeyError):
        return "E_VARIABLE", False
    return "E_INTERNAL", True


def run(script: Script, default_seed: int = 0) -> List[Report]:
    """Run statements in order; stop at the first error."""
    runner = Runner(default_seed)
    reports: List[Report] = []
    for s in script.statements:
        echo = format_statement(s)[:-1]
        try:
            if isinstance(s, Declaration):
                runner.ev.declare(s)
                continue
            text, data = runner.command(s)
            reports.append(Report(echo, "ok", text, data))
        except Exception as exc:  # noqa: BLE001 - mapped to stable codes below
            code, internal = classify_exception(exc)
            if isinstance(exc, ScriptError):
                msg = str(exc)
            else:
                where = f"line {s.line}, col {s.col}: "
                detail = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
                msg = f"error[{code}] {where}{detail}"
            reports.append(Report(echo, "error", code=code, message=msg, internal=internal))
            break
    return reports
