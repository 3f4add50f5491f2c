"""Points of a plane curve over finite extensions of Q(t) and local valuations.

A point has coordinates in F = Q(t)[z]/(m(z)) for an irreducible m, or in
Q(t) itself.  Valuations of functions at smooth points come from truncated
power-series expansions in a local uniformizer (x - a when p_y does not vanish,
otherwise y - b).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import sympy as sp

from .curvefield import (
    CurveError,
    CurveFn,
    PlaneCurve,
    _uadd,
    _udivmod,
    _ugcdex,
    _umul,
    _uneg,
    _utrim,
    upoly_from_mpoly,
)
from .diffbase import ONE, ZERO, BaseElem, MPoly


class FieldError(ValueError):
    pass


class ExtensionField:
    """Q(t)[z]/(m); ``modulus=None`` means Q(t) itself."""

    def __init__(self, modulus: MPoly | None = None, var: str = "z", check: bool = True):
        self.var = var
        if modulus is None:
            self.m: Tuple[BaseElem, ...] = ()
        else:
            self.m = upoly_from_mpoly(modulus, var)
            if len(self.m) < 2:
                raise FieldError("the minimal polynomial must have positive degree")
            if check and not _irreducible_over_qt(modulus, var):
                raise FieldError(f"{modulus} is reducible over Q(t)")
        self.modulus = modulus

    @property
    def degree(self) -> int:
        return max(len(self.m) - 1, 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, ExtensionField) and self.m == other.m and self.var == other.var

    def __hash__(self) -> int:
        return hash(self.m)

    def _reduce(self, a) -> Tuple[BaseElem, ...]:
        a = _utrim(a)
        if self.m and len(a) >= len(self.m):
            a = _udivmod(a, self.m)[1]
        return a

    def elem(self, v) -> "FieldElem":
        if isinstance(v, FieldElem):
            return v
        if isinstance(v, MPoly):
            extra = set(v.used_variables()) - {self.var}
            if extra:
                raise FieldError(f"coordinate {v} uses variables {sorted(extra)}")
            if not v.used_variables():
                return FieldElem(self, self._reduce((v.constant_value(),) if v.terms else ()))
            return FieldElem(self, self._reduce(upoly_from_mpoly(v, self.var)))
        return FieldElem(self, self._reduce((BaseElem.coerce(v),)))

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, ())

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, (ONE,))


def _irreducible_over_qt(m: MPoly, var: str) -> bool:
    tt, zz = sp.symbols("t " + var)
    expr = 0
    for e, c in m.terms.items():
        k = e[m.variables.index(var)] if var in m.variables else 0
        num = sum(int(v) * tt ** i for i, v in enumerate(c.num))
        den = sum(int(v) * tt ** i for i, v in enumerate(c.den))
        expr += num / den * zz ** k
    num, _ = sp.fraction(sp.together(expr))
    _, factors = sp.factor_list(sp.expand(num), zz, tt)
    positive = [(f, k) for f, k in factors if sp.degree(f, zz) > 0]
    return len(positive) == 1 and positive[0][1] == 1


class FieldElem:
    __slots__ = ("field", "c")

    def __init__(self, field: ExtensionField, c: Tuple[BaseElem, ...]):
        self.field = field
        self.c = c

    def _peer(self, o) -> "FieldElem":
        if isinstance(o, FieldElem):
            return o
        return self.field.elem(o)

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self) -> bool:
        return bool(self.c)

    def __add__(self, o):
        return FieldElem(self.field, _uadd(self.c, self._peer(o).c))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.field, _uneg(self.c))

    def __sub__(self, o):
        return self + (-self._peer(o))

    def __rsub__(self, o):
        return self._peer(o) - self

    def __mul__(self, o):
        return FieldElem(self.field, self.field._reduce(_umul(self.c, self._peer(o).c)))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if not self.c:
            raise ZeroDivisionError("inverse of zero in an extension field")
        if not self.field.m:
            return FieldElem(self.field, (self.c[0].inverse(),))
        s, _, g = _ugcdex(self.c, self.field.m)
        if len(g) != 1:
            raise FieldError("modulus is not irreducible")
        return FieldElem(self.field, self.field._reduce(s))

    def __truediv__(self, o):
        return self * self._peer(o).inverse()

    def __pow__(self, k: int):
        out = self.field.one
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, o) -> bool:
        return isinstance(o, FieldElem) and self.c == o.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return f"FieldElem({self.c})"


def eval_mpoly(p: MPoly, values: dict, one):
    """Evaluate ``p`` at field elements or series; ``one`` fixes the target ring."""
    out = one * ZERO
    for e, c in p.terms.items():
        term = one * c
        for v, k in zip(p.variables, e):
            for _ in range(k):
                term = term * values[v]
        out = out + term
    return out


# ---------------------------------------------------------------------------
# truncated power series over an extension field
# ---------------------------------------------------------------------------


class Series:
    __slots__ = ("field", "c", "prec")

    def __init__(self, field: ExtensionField, c: Sequence[FieldElem], prec: int):
        self.field = field
        cs = list(c[:prec])
        cs += [field.zero] * (prec - len(cs))
        self.c = cs
        self.prec = prec

    @classmethod
    def const(cls, field, v, prec) -> "Series":
        return cls(field, [field.elem(v)], prec)

    def __add__(self, o):
        o = self._peer(o)
        return Series(self.field, [a + b for a, b in zip(self.c, o.c)], self.prec)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.field, [-a for a in self.c], self.prec)

    def __sub__(self, o):
        return self + (-self._peer(o))

    def _peer(self, o) -> "Series":
        if isinstance(o, Series):
            return o
        return Series.const(self.field, o, self.prec)

    def __mul__(self, o):
        if not isinstance(o, Series):
            v = self.field.elem(o)
            return Series(self.field, [a * v for a in self.c], self.prec)
        out = [self.field.zero] * self.prec
        for i, a in enumerate(self.c):
            if a:
                for j in range(self.prec - i):
                    b = o.c[j]
                    if b:
                        out[i + j] = out[i + j] + a * b
        return Series(self.field, out, self.prec)

    __rmul__ = __mul__

    def order(self) -> Optional[int]:
        for i, a in enumerate(self.c):
            if a:
                return i
        return None


# ---------------------------------------------------------------------------
# points and valuations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurvePoint:
    curve: PlaneCurve
    x: FieldElem
    y: FieldElem

    @property
    def field(self) -> ExtensionField:
        return self.x.field


def make_point(curve: PlaneCurve, x, y, field: ExtensionField | None = None) -> CurvePoint:
    field = field or ExtensionField()
    pt = CurvePoint(curve, field.elem(x), field.elem(y))
    one = field.one
    if not eval_mpoly(curve.p, {"x": pt.x, "y": pt.y}, one).is_zero():
        raise CurveError("point does not lie on the curve")
    return pt


def _total_degree(p: MPoly) -> int:
    return max((sum(e) for e in p.terms), default=0)


def _local_param(pt: CurvePoint, prec: int) -> Tuple[Series, Series, str]:
    """Series (X(s), Y(s)) parametrizing the curve near ``pt``."""
    C, F = pt.curve, pt.field
    vals = {"x": pt.x, "y": pt.y}
    py = eval_mpoly(C.p.partial("y"), vals, F.one)
    px = eval_mpoly(C.p.partial("x"), vals, F.one)
    s = Series(F, [F.zero, F.one], prec)
    if py:
        free, dep, lin = "x", "y", py
    elif px:
        free, dep, lin = "y", "x", px
    else:
        raise CurveError("point is singular")
    base_free = Series.const(F, vals[free], prec) + s
    Y = Series.const(F, vals[dep], prec)
    inv = lin.inverse()
    one = Series.const(F, F.one, prec)
    # each pass fixes at least one more coefficient
    for _ in range(prec):
        q = eval_mpoly(C.p, {free: base_free, dep: Y}, one)
        if q.order() is None:
            break
        Y = Y - q * inv
    if free == "x":
        return base_free, Y, "x"
    return Y, base_free, "y"


def valuation(f: CurveFn, pt: CurvePoint) -> Optional[int]:
    """Order of ``f`` at the smooth point ``pt`` (None for f = 0)."""
    if f.is_zero():
        return None
    num, den = f.as_fraction()
    # intersection multiplicities are bounded by Bezout
    prec = (_total_degree(num) + _total_degree(den)) * _total_degree(pt.curve.p) + 2
    X, Y, _ = _local_param(pt, prec)
    one = Series.const(pt.field, pt.field.one, prec)
    on = eval_mpoly(num, {"x": X, "y": Y}, one).order()
    od = eval_mpoly(den, {"x": X, "y": Y}, one).order()
    if on is None or od is None:
        raise CurveError("precision exhausted while computing a valuation")
    return on - od
