"""Lexer, parser, static checks and printer for the tauforms script language.

A script is a sequence of statements terminated by ``;``::

    let L : curve = y - t*x;
    let w : tauform = tau(y) on L;
    taudiff y on L;
    equiv w, x*w;

Declarations bind a name to an object of a given kind.  Commands name a verb
followed by arguments (expressions, separated by commas or juxtaposed), an
optional ``on CURVE`` clause and ``--options``.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

KINDS = ("field-elem", "poly", "curve", "fn", "tauform", "morphism")
FUNCTIONS = ("tau", "iota")
KEYWORDS = ("let", "on", "from", "to")
_VAR_RE = re.compile(r"^(t|x|y|z|u|v|x'|y'|u'|x\d+|u\d+)$")


def is_variable(name: str) -> bool:
    return bool(_VAR_RE.match(name))


class ScriptError(Exception):
    """User-facing error with a stable code and an optional source position."""

    def __init__(self, code: str, message: str, line: int | None = None, col: int | None = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.line = line
        self.col = col

    def __str__(self) -> str:
        where = f"line {self.line}, col {self.col}: " if self.line is not None else ""
        return f"error[{self.code}] {where}{self.message}"


# ---------------------------------------------------------------------------
# lexer
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # INT, IDENT, OPTION, OP, EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<INT>\d+)
  | (?P<OPTION>--[A-Za-z][A-Za-z0-9_-]*)
  | (?P<IDENT>[A-Za-z_][A-Za-z0-9_]*'?)
  | (?P<OP>[-+*/^()\[\],;:=])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ScriptError("E_SYNTAX", f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Node:
    line: int = field(compare=False)
    col: int = field(compare=False)


@dataclass(frozen=True)
class Num(Node):
    value: int = 0


@dataclass(frozen=True)
class Name(Node):
    id: str = ""


@dataclass(frozen=True)
class Neg(Node):
    arg: "Expr" = None


@dataclass(frozen=True)
class BinOp(Node):
    op: str = ""
    left: "Expr" = None
    right: "Expr" = None


@dataclass(frozen=True)
class Pow(Node):
    base: "Expr" = None
    exp: int = 0


@dataclass(frozen=True)
class Call(Node):
    func: str = ""
    args: Tuple["Expr", ...] = ()


@dataclass(frozen=True)
class Tuple_(Node):
    items: Tuple["Expr", ...] = ()


@dataclass(frozen=True)
class List_(Node):
    items: Tuple["Expr", ...] = ()


Expr = Union[Num, Name, Neg, BinOp, Pow, Call, Tuple_, List_]


@dataclass(frozen=True)
class Declaration:
    name: str
    kind: str
    expr: Expr
    on: Optional[str] = None
    source: Optional[str] = None  # morphism source curve
    target: Optional[str] = None
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Option:
    name: str
    value: Optional[Expr] = None


@dataclass(frozen=True)
class Command:
    verb: str
    args: Tuple[Expr, ...]
    on: Optional[str] = None
    options: Tuple[Option, ...] = ()
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    def option(self, name: str) -> Optional[Option]:
        for o in self.options:
            if o.name == name:
                return o
        return None


Statement = Union[Declaration, Command]


@dataclass
class Script:
    statements: List[Statement]

    @property
    def declarations(self) -> List[Declaration]:
        return [s for s in self.statements if isinstance(s, Declaration)]

    @property
    def commands(self) -> List[Command]:
        return [s for s in self.statements if isinstance(s, Command)]


# ---------------------------------------------------------------------------
# command table: verb -> (argument slots, valued options, flag options)
# ---------------------------------------------------------------------------

# Slot kinds: "variety" (poly, poly list or curve), "fnpoly" (fn on a curve,
# or an ambient poly without one), "fn", "tauform", "morphism", "poly",
# "scalar-or-poly", "var", "point", "any".
COMMANDS: Dict[str, Tuple[Tuple[str, ...], Tuple[str, ...], Tuple[str, ...]]] = {
    "tangent": (("variety",), (), ()),
    "prolong": (("variety",), (), ()),
    "cone": (("variety",), (), ()),
    "lift": (("polymap",), (), ()),
    "taudiff": (("fnpoly",), (), ()),
    "iota": (("fn",), (), ()),
    "lambda": (("tauform",), (), ()),
    "decompose": (("tauform", "tauform"), (), ()),
    "equiv": (("tauform", "tauform"), (), ()),
    "parallel": (("tauform", "tauform"), (), ("meet",)),
    "ratio": (("tauform",), (), ()),
    "nullset": (("tauform",), (), ()),
    "pullback": (("tauform", "morphism"), (), ()),
    "primsec": (("poly", "poly"), (), ()),
    "globals": (("curve",), ("genus",), ()),
    "xi": (("tauform",), ("points", "ext"), ()),
    "xicheck": (("morphism", "tauform", "tauform?"), (), ()),
    "overlap": (("tauform", "tauform"), (), ()),
    "classify": (("tauform", "point"), ("ext",), ()),
    "delta": (("scalar-or-poly",), (), ()),
    "partial": (("poly", "var"), (), ()),
    "print": (("any",), (), ()),
    "selftest": ((), ("seed",), ()),
}


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    # token helpers -----------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def _advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def _at(self, text: str) -> bool:
        return self.tok.kind in ("OP", "IDENT") and self.tok.text == text

    def _error(self, msg: str, tok: Token | None = None) -> ScriptError:
        tok = tok or self.tok
        found = "end of input" if tok.kind == "EOF" else repr(tok.text)
        return ScriptError("E_SYNTAX", f"{msg}, found {found}", tok.line, tok.col)

    def _expect(self, text: str) -> Token:
        if not self._at(text):
            raise self._error(f"expected {text!r}")
        return self._advance()

    def _ident(self, what: str = "identifier") -> Token:
        if self.tok.kind != "IDENT":
            raise self._error(f"expected {what}")
        return self._advance()

    # statements --------------------------------------------------------
    def parse_script(self) -> Script:
        stmts: List[Statement] = []
        while self.tok.kind != "EOF":
            if self._at(";"):
                self._advance()
                continue
            stmts.append(self.statement())
        return Script(stmts)

    def statement(self) -> Statement:
        t = self.tok
        if t.kind == "IDENT" and t.text == "let":
            return self.declaration()
        if t.kind == "IDENT":
            return self.command()
        raise self._error("expected 'let' or a command name")

    def _kind(self) -> str:
        t = self._ident("a kind")
        text = t.text
        if text == "field" and self._at("-"):
            self._advance()
            nxt = self._ident("'elem'")
            text = f"field-{nxt.text}"
        if text not in KINDS:
            raise ScriptError("E_SYNTAX", f"unknown kind {text!r}; expected one of {', '.join(KINDS)}", t.line, t.col)
        return text

    def declaration(self) -> Declaration:
        start = self._advance()  # let
        name = self._ident("a name")
        self._expect(":")
        kind = self._kind()
        self._expect("=")
        expr = self.expr()
        on = source = target = None
        if kind == "morphism":
            self._expect("from")
            source = self._ident("a curve name").text
            self._expect("to")
            target = self._ident("a curve name").text
        elif self._at("on"):
            self._advance()
            on = self._ident("a curve name").text
        self._end_statement()
        return Declaration(name.text, kind, expr, on, source, target, start.line, start.col)

    def _end_statement(self) -> None:
        if not self._at(";"):
            raise self._error("expected ';'")
        self._advance()

    def command(self) -> Command:
        start = self._advance()
        verb = start.text
        if verb not in COMMANDS:
            raise ScriptError("E_SYNTAX", f"unknown command {verb!r}", start.line, start.col)
        args: List[Expr] = []
        on = None
        options: List[Option] = []
        valued = COMMANDS[verb][1]
        while not self._at(";"):
            if self.tok.kind == "EOF":
                raise self._error("expected ';'")
            if self._at(","):
                if not args:
                    raise self._error("expected an argument")
                self._advance()
                continue
            if self._at("on"):
                self._advance()
                on = self._ident("a curve name").text
                continue
            if self.tok.kind == "OPTION":
                ot = self._advance()
                oname = ot.text[2:]
                allowed = valued + COMMANDS[verb][2]
                if oname not in allowed:
                    raise ScriptError("E_ARG", f"command {verb!r} has no option --{oname}", ot.line, ot.col)
                value = None
                if self._at("="):
                    self._advance()
                    value = self.expr()
                elif oname in valued:
                    value = self.expr()
                options.append(Option(oname, value))
                continue
            args.append(self.expr())
        self._end_statement()
        return Command(verb, tuple(args), on, tuple(options), start.line, start.col)

    # expressions -------------------------------------------------------
    def expr(self) -> Expr:
        left = self.term()
        while self._at("+") or self._at("-"):
            op = self._advance()
            right = self.term()
            left = BinOp(op.line, op.col, op.text, left, right)
        return left

    def term(self) -> Expr:
        left = self.factor()
        while self._at("*") or self._at("/"):
            op = self._advance()
            right = self.factor()
            left = BinOp(op.line, op.col, op.text, left, right)
        return left

    def factor(self) -> Expr:
        if self._at("-"):
            t = self._advance()
            return Neg(t.line, t.col, self.factor())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self._at("^"):
            op = self._advance()
            sign = 1
            if self._at("-"):
                self._advance()
                sign = -1
            if self.tok.kind != "INT":
                raise self._error("expected an integer exponent")
            exp = sign * int(self._advance().text)
            return Pow(op.line, op.col, base, exp)
        return base

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "INT":
            self._advance()
            return Num(t.line, t.col, int(t.text))
        if t.kind == "IDENT":
            if t.text in KEYWORDS:
                raise self._error("expected an expression")
            self._advance()
            if t.text in FUNCTIONS:
                self._expect("(")
                arg = self.expr()
                self._expect(")")
                return Call(t.line, t.col, t.text, (arg,))
            return Name(t.line, t.col, t.text)
        if self._at("("):
            self._advance()
            first = self.expr()
            if self._at(","):
                items = [first]
                while self._at(","):
                    self._advance()
                    items.append(self.expr())
                self._expect(")")
                return Tuple_(t.line, t.col, tuple(items))
            self._expect(")")
            return first
        if self._at("["):
            self._advance()
            items = []
            if not self._at("]"):
                items.append(self.expr())
                while self._at(","):
                    self._advance()
                    items.append(self.expr())
            self._expect("]")
            return List_(t.line, t.col, tuple(items))
        raise self._error("expected an expression")


def parse_script(text: str, check: bool = True) -> Script:
    """Parse ``text``; with ``check`` also run the static name and kind checks."""
    script = Parser(text).parse_script()
    if check:
        check_script(script)
    return script


def parse_expr(text: str) -> Expr:
    p = Parser(text)
    e = p.expr()
    if p.tok.kind != "EOF":
        raise p._error("unexpected trailing input")
    return e


# ---------------------------------------------------------------------------
# static checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Symbol:
    kind: str
    curve: Optional[str] = None  # fn / tauform: home curve; morphism: source
    target: Optional[str] = None


# which declared kinds may be referenced inside an expression of each context
_ALLOWED_REFS = {
    "field-elem": {"field-elem"},
    "poly": {"field-elem", "poly"},
    "curve": {"field-elem", "poly"},
    "fn": {"field-elem", "poly", "fn"},
    "tauform": {"field-elem", "poly", "fn", "tauform"},
    "point": {"field-elem"},
}


def _names(e: Expr):
    if isinstance(e, Name):
        yield e
    elif isinstance(e, Neg):
        yield from _names(e.arg)
    elif isinstance(e, BinOp):
        yield from _names(e.left)
        yield from _names(e.right)
    elif isinstance(e, Pow):
        yield from _names(e.base)
    elif isinstance(e, (Call,)):
        for a in e.args:
            yield from _names(a)
    elif isinstance(e, (Tuple_, List_)):
        for a in e.items:
            yield from _names(a)


def check_expr(e: Expr, context: str, table: Dict[str, Symbol], curve: Optional[str] = None,
               variables: Sequence[str] | None = None) -> Optional[str]:
    """Check names in ``e`` for a value of kind ``context``; returns the inferred curve."""
    allowed = _ALLOWED_REFS[context]
    for n in _names(e):
        if n.id in table:
            sym = table[n.id]
            if sym.kind not in allowed:
                raise ScriptError("E_KIND", f"{n.id!r} is a {sym.kind}, not usable in a {context} expression", n.line, n.col)
            if sym.kind in ("fn", "tauform"):
                if curve is None:
                    curve = sym.curve
                elif sym.curve != curve:
                    raise ScriptError("E_KIND", f"{n.id!r} lives on {sym.curve}, expected a function on {curve}", n.line, n.col)
            continue
        if is_variable(n.id):
            if variables is not None and n.id not in variables:
                raise ScriptError("E_KIND", f"variable {n.id!r} is not allowed in a {context} expression", n.line, n.col)
            continue
        raise ScriptError("E_UNKNOWN_IDENT", f"unknown identifier {n.id!r}", n.line, n.col)
    if context != "tauform":
        for c in _calls(e):
            raise ScriptError("E_KIND", f"{c.func}(...) builds a tauform, not a {context}", c.line, c.col)
    return curve


def _calls(e: Expr):
    if isinstance(e, Call):
        yield e
        for a in e.args:
            yield from _calls(a)
    elif isinstance(e, Neg):
        yield from _calls(e.arg)
    elif isinstance(e, BinOp):
        yield from _calls(e.left)
        yield from _calls(e.right)
    elif isinstance(e, Pow):
        yield from _calls(e.base)
    elif isinstance(e, (Tuple_, List_)):
        for a in e.items:
            yield from _calls(a)


_CONTEXT_VARS = {
    "field-elem": ("t",),
    "curve": ("t", "x", "y"),
    "fn": ("t", "x", "y"),
    "tauform": ("t", "x", "y"),
    "point": ("t", "z"),
}


def _require_curve(table, name: str, line: int, col: int) -> None:
    if name not in table:
        raise ScriptError("E_UNKNOWN_IDENT", f"unknown identifier {name!r}", line, col)
    if table[name].kind != "curve":
        raise ScriptError("E_KIND", f"{name!r} is a {table[name].kind}, expected a curve", line, col)


def check_declaration(d: Declaration, table: Dict[str, Symbol]) -> Symbol:
    if d.name in table:
        raise ScriptError("E_DUPLICATE", f"name {d.name!r} is already declared", d.line, d.col)
    if is_variable(d.name) or d.name in FUNCTIONS or d.name in KEYWORDS or d.name in COMMANDS:
        raise ScriptError("E_DUPLICATE", f"name {d.name!r} is reserved", d.line, d.col)
    if d.kind in ("fn", "tauform"):
        if d.on is not None:
            _require_curve(table, d.on, d.line, d.col)
        curve = check_expr(d.expr, d.kind, table, d.on, _CONTEXT_VARS[d.kind])
        if curve is None:
            raise ScriptError("E_KIND", f"a {d.kind} declaration needs 'on CURVE'", d.line, d.col)
        return Symbol(d.kind, curve)
    if d.kind == "morphism":
        _require_curve(table, d.source, d.line, d.col)
        _require_curve(table, d.target, d.line, d.col)
        if not isinstance(d.expr, Tuple_) or len(d.expr.items) != 2:
            raise ScriptError("E_KIND", "a morphism is written (r, s) from C1 to C2", d.line, d.col)
        for item in d.expr.items:
            check_expr(item, "fn", table, d.source, _CONTEXT_VARS["fn"])
        return Symbol("morphism", d.source, d.target)
    if d.on is not None:
        raise ScriptError("E_KIND", f"'on' is not allowed for a {d.kind} declaration", d.line, d.col)
    if d.kind == "poly" and isinstance(d.expr, List_):
        for item in d.expr.items:
            check_expr(item, "poly", table)
        return Symbol("poly")
    check_expr(d.expr, d.kind, table, None, _CONTEXT_VARS.get(d.kind))
    return Symbol(d.kind)


def _slot_error(e: Expr, msg: str) -> ScriptError:
    return ScriptError("E_KIND", msg, e.line, e.col)


def _named(e: Expr, table, kinds: Sequence[str], what: str) -> Symbol:
    if not isinstance(e, Name):
        raise _slot_error(e, f"expected the name of a declared {what}")
    if e.id not in table:
        raise ScriptError("E_UNKNOWN_IDENT", f"unknown identifier {e.id!r}", e.line, e.col)
    sym = table[e.id]
    if sym.kind not in kinds:
        raise _slot_error(e, f"{e.id!r} is a {sym.kind}, expected a {what}")
    return sym


def check_command(c: Command, table: Dict[str, Symbol]) -> None:
    slots = COMMANDS[c.verb][0]
    required = [s for s in slots if not s.endswith("?")]
    if not (len(required) <= len(c.args) <= len(slots)):
        n = len(required) if len(required) == len(slots) else f"{len(required)} to {len(slots)}"
        raise ScriptError("E_ARG", f"{c.verb} takes {n} argument(s), got {len(c.args)}", c.line, c.col)
    if c.on is not None:
        _require_curve(table, c.on, c.line, c.col)
    for o in c.options:
        if o.name in COMMANDS[c.verb][1] and o.value is None:
            raise ScriptError("E_ARG", f"option --{o.name} needs a value", c.line, c.col)
    if c.verb in ("pullback", "xicheck"):
        _check_morphism_command(c, table)
        return
    curve = c.on
    for slot, e in zip(slots, c.args):
        slot = slot.rstrip("?")
        if slot == "variety":
            if isinstance(e, Name) and e.id in table:
                _named(e, table, ("poly", "curve"), "poly or curve")
            elif isinstance(e, List_):
                for item in e.items:
                    check_expr(item, "poly", table)
            else:
                check_expr(e, "poly", table)
        elif slot == "polymap":
            items = e.items if isinstance(e, List_) else (e,)
            for item in items:
                check_expr(item, "poly", table)
        elif slot == "fnpoly":
            if curve is None:
                curve = next((table[n.id].curve for n in _names(e) if n.id in table and table[n.id].kind == "fn"), None)
            if curve is None:
                check_expr(e, "poly", table)
            else:
                check_expr(e, "fn", table, curve, _CONTEXT_VARS["fn"])
        elif slot == "fn":
            got = check_expr(e, "fn", table, curve, _CONTEXT_VARS["fn"])
            if got is None:
                raise _slot_error(e, "cannot tell which curve this function lives on; add 'on CURVE'")
            curve = got
        elif slot == "tauform":
            got = check_expr(e, "tauform", table, curve, _CONTEXT_VARS["tauform"])
            if got is None:
                raise _slot_error(e, "cannot tell which curve this tauform lives on; add 'on CURVE'")
            curve = got
        elif slot == "curve":
            _named(e, table, ("curve",), "curve")
        elif slot in ("poly", "scalar-or-poly"):
            check_expr(e, "poly", table)
        elif slot == "var":
            if not isinstance(e, Name) or not is_variable(e.id):
                raise _slot_error(e, "expected a variable name")
        elif slot == "point":
            if not isinstance(e, Tuple_) or len(e.items) != 2:
                raise _slot_error(e, "expected a point (a, b)")
            for item in e.items:
                check_expr(item, "point", table, None, _CONTEXT_VARS["point"])
        elif slot == "any":
            if isinstance(e, Name) and e.id in table:
                continue
            if curve is None:
                check_expr(e, "poly", table)
            else:
                check_expr(e, "tauform", table, curve, _CONTEXT_VARS["tauform"])
def _check_morphism_command(c: Command, table: Dict[str, Symbol]) -> None:
    """pullback w, phi: w on the target; xicheck phi, w2[, w1]: w2 on the target, w1 on the source."""
    if c.verb == "pullback":
        forms, phi_expr = c.args[:1], c.args[1]
    else:
        forms, phi_expr = c.args[1:], c.args[0]
    phi = _named(phi_expr, table, ("morphism",), "morphism")
    for e, want in zip(forms, (phi.target, phi.curve)):
        got = check_expr(e, "tauform", table, want, _CONTEXT_VARS["tauform"])
        if got != want:
            raise _slot_error(e, f"expected a tauform on {want}")


def check_script(script: Script) -> Dict[str, Symbol]:
    table: Dict[str, Symbol] = {}
    for s in script.statements:
        if isinstance(s, Declaration):
            table[s.name] = check_declaration(s, table)
        else:
            check_command(s, table)
    return table


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def format_expr(e: Expr, parent: int = 0, right: bool = False) -> str:
    """Canonical text; parses back to an equal AST."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Name):
        return e.id
    if isinstance(e, Neg):
        s = "-" + format_expr(e.arg, 3)
        return f"({s})" if parent >= 3 else s
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        sep = f" {e.op} " if p == 1 else e.op
        s = f"{format_expr(e.left, p)}{sep}{format_expr(e.right, p, True)}"
        if p < parent or (p == parent and right):
            return f"({s})"
        return s
    if isinstance(e, Pow):
        return f"{format_expr(e.base, 4)}^{e.exp}"
    if isinstance(e, Call):
        return f"{e.func}({', '.join(format_expr(a) for a in e.args)})"
    if isinstance(e, Tuple_):
        return "(" + ", ".join(format_expr(a) for a in e.items) + ")"
    if isinstance(e, List_):
        return "[" + ", ".join(format_expr(a) for a in e.items) + "]"
    raise TypeError(f"not an expression node: {e!r}")


def format_statement(s: Statement) -> str:
    if isinstance(s, Declaration):
        tail = ""
        if s.kind == "morphism":
            tail = f" from {s.source} to {s.target}"
        elif s.on is not None:
            tail = f" on {s.on}"
        return f"let {s.name} : {s.kind} = {format_expr(s.expr)}{tail};"
    parts = [s.verb]
    if s.args:
        parts.append(", ".join(format_expr(a) for a in s.args))
    if s.on is not None:
        parts.append(f"on {s.on}")
    for o in s.options:
        parts.append(f"--{o.name}" if o.value is None else f"--{o.name}={format_expr(o.value)}")
    return " ".join(parts) + ";"


def format_script(script: Script) -> str:
    return "\n".join(format_statement(s) for s in script.statements) + "\n"
