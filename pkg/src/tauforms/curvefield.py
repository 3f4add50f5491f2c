"""Plane affine curves over Q(t) and their function fields.

``RatFunc`` is the rational function field F = Q(t)(x), kept as a reduced
fraction of univariate polynomials in x over Q(t) with a monic denominator.
``CurveFn`` is an element of K(C) = F[y]/(p), stored fully y-reduced: a
coefficient tuple (c_0, ..., c_{d-1}) over F with d = deg_y(p).  Division is
carried out by inverting modulo p, so every element has exactly one stored
form and equality is structural.
"""

from __future__ import annotations

import re
from functools import cached_property
from typing import Dict, List, Sequence, Tuple

from flint import fmpz_mpoly, fmpz_mpoly_ctx, fmpz_poly

from .diffbase import ONE, ZERO, BaseElem, MPoly, Scalar, _coerce_or_none, _from_flint, _to_flint, format_mpoly

UPoly = Tuple[BaseElem, ...]


class CurveError(ValueError):
    """Raised for invalid curve presentations or cross-curve operations."""


# ---------------------------------------------------------------------------
# univariate polynomials over Q(t)  (constant term first)
# ---------------------------------------------------------------------------


def _utrim(a: Sequence[BaseElem]) -> UPoly:
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return tuple(a[:n])


def _uadd(a: UPoly, b: UPoly) -> UPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] = out[i] + v
    return _utrim(out)


def _uneg(a: UPoly) -> UPoly:
    return tuple(-v for v in a)


def _usub(a: UPoly, b: UPoly) -> UPoly:
    return _uadd(a, _uneg(b))


def _umul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return ()
    if len(a) == 1:
        return _uscale(b, a[0])
    if len(b) == 1:
        return _uscale(a, b[0])
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                if v:
                    out[i + j] = out[i + j] + u * v
    return _utrim(out)


def _uscale(a: UPoly, c: BaseElem) -> UPoly:
    if not c:
        return ()
    if c.is_one():
        return a
    return tuple(v * c for v in a)


def _udivmod(a: UPoly, b: UPoly) -> Tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    inv = b[-1].inverse()
    r = list(a)
    db = len(b) - 1
    q = [ZERO] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = r[k + db] * inv
        q[k] = c
        if c:
            for i, v in enumerate(b):
                if v:
                    r[i + k] = r[i + k] - c * v
    return _utrim(q), _utrim(r[:db])


def _umonic(a: UPoly) -> UPoly:
    if not a or a[-1].is_one():
        return a
    return _uscale(a, a[-1].inverse())


_ZX = fmpz_mpoly_ctx.get(("t", "x"), "lex")


def _to_zx(a: UPoly) -> Tuple[fmpz_mpoly, fmpz_poly]:
    """Integral multiple L*a in Z[t, x] and the scale L in Z[t]."""
    L = fmpz_poly(1)
    for c in a:
        if c.den != (1,):
            d = _to_flint(c.den)
            L = L * d // L.gcd(d) if L != 1 else d
    terms = {}
    for j, c in enumerate(a):
        if c.num:
            n = _to_flint(c.num) * (L // _to_flint(c.den)) if L != 1 else _to_flint(c.num)
            for i, v in enumerate(n.coeffs()):
                if v:
                    terms[(i, j)] = int(v)
    return _ZX.from_dict(terms), L


def _from_zx(P: fmpz_mpoly) -> List[List[int]]:
    """Coefficients in x of P as dense integer lists in t."""
    out: List[List[int]] = []
    for (i, j), v in P.to_dict().items():
        while len(out) <= j:
            out.append([])
        row = out[j]
        while len(row) <= i:
            row.append(0)
        row[i] = int(v)
    return out


def _ugcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd over the field Q(t), via a gcd in Z[t, x]."""
    if not a or not b:
        return _umonic(a or b)
    G = _to_zx(a)[0].gcd(_to_zx(b)[0])
    return _umonic(_utrim([BaseElem(row, (1,)) for row in _from_zx(G)]))


def _ugcd_euclid(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd over Q(t) by the Euclidean algorithm."""
    while b:
        a, b = b, _udivmod(a, b)[1]
    return _umonic(a) if a else ()


def _ugcdex(a: UPoly, b: UPoly) -> Tuple[UPoly, UPoly, UPoly]:
    """Return (s, t, g) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = (ONE,), ()
    t0, t1 = (), (ONE,)
    while r1:
        q, r = _udivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _usub(s0, _umul(q, s1))
        t0, t1 = t1, _usub(t0, _umul(q, t1))
    inv = r0[-1].inverse()
    return _uscale(s0, inv), _uscale(t0, inv), _uscale(r0, inv)


def _uderiv(a: UPoly) -> UPoly:
    return _utrim([a[i] * i for i in range(1, len(a))])


def _udelta(a: UPoly) -> UPoly:
    return _utrim([c.delta() for c in a])


def _ueval(a: UPoly, v):
    acc = None
    for c in reversed(a):
        acc = c if acc is None else acc * v + c
    return acc


def _udegree(a: UPoly) -> int:
    return len(a) - 1


def upoly_from_mpoly(p: MPoly, var: str = "x") -> UPoly:
    """Univariate coefficients of ``p``, which may only involve ``var``."""
    extra = [v for v in p.used_variables() if v != var]
    if extra:
        raise CurveError(f"expected a polynomial in {var} only, got variables {extra}")
    if not p.terms:
        return ()
    if var not in p.variables:
        return (p.constant_value(),)
    i = p.variables.index(var)
    deg = p.degree(var)
    out = [ZERO] * (deg + 1)
    for e, c in p.terms.items():
        out[e[i]] = c
    return _utrim(out)


def upoly_to_mpoly(a: UPoly, var: str = "x", variables: Sequence[str] = ("x",)) -> MPoly:
    variables = tuple(variables)
    i = variables.index(var)
    n = len(variables)
    terms = {}
    for k, c in enumerate(a):
        if c:
            e = [0] * n
            e[i] = k
            terms[tuple(e)] = c
    return MPoly(variables, terms, _clean=True)


# ---------------------------------------------------------------------------
# RatFunc: the field Q(t)(x)
# ---------------------------------------------------------------------------

_UONE: UPoly = (ONE,)


class RatFunc:
    """Element of Q(t)(x); reduced, with a monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Sequence[BaseElem], den: Sequence[BaseElem] = _UONE, *, _canonical: bool = False):
        num = _utrim(tuple(num))
        den = _utrim(tuple(den))
        if not _canonical:
            if not den:
                raise ZeroDivisionError("zero denominator in Q(t)(x)")
            if not num:
                den = _UONE
            else:
                if len(den) > 1:
                    num, den = _reduce_fraction(num, den)
                lc = den[-1]
                if not lc.is_one():
                    inv = lc.inverse()
                    num = _uscale(num, inv)
                    den = _uscale(den, inv)
        self.num: UPoly = num
        self.den: UPoly = den
        self._hash = None

    @classmethod
    def coerce(cls, v) -> "RatFunc":
        if isinstance(v, RatFunc):
            return v
        if isinstance(v, MPoly):
            return cls(upoly_from_mpoly(v), _UONE, _canonical=True)
        c = _coerce_or_none(v)
        if c is None:
            raise TypeError(f"cannot coerce {type(v).__name__} to RatFunc")
        return cls((c,) if c else (), _UONE, _canonical=True)

    def is_zero(self) -> bool:
        return not self.num

    def is_poly(self) -> bool:
        return len(self.den) == 1

    def is_constant(self) -> bool:
        return len(self.den) == 1 and len(self.num) <= 1

    def constant_value(self) -> BaseElem:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num[0] if self.num else ZERO

    def __add__(self, o) -> "RatFunc":
        if not isinstance(o, RatFunc):
            o = RatFunc.coerce(o)
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            if len(self.den) == 1:
                return RatFunc(_uadd(self.num, o.num), _UONE, _canonical=True)
            return RatFunc(_uadd(self.num, o.num), self.den)
        return RatFunc(
            _uadd(_umul(self.num, o.den), _umul(o.num, self.den)), _umul(self.den, o.den)
        )

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(_uneg(self.num), self.den, _canonical=True)

    def __sub__(self, o) -> "RatFunc":
        if not isinstance(o, RatFunc):
            o = RatFunc.coerce(o)
        return self + (-o)

    def __rsub__(self, o) -> "RatFunc":
        return (-self) + o

    def __mul__(self, o) -> "RatFunc":
        if not isinstance(o, RatFunc):
            o = RatFunc.coerce(o)
        if not self.num or not o.num:
            return RF_ZERO
        if len(self.den) == 1 and len(o.den) == 1:
            return RatFunc(_umul(self.num, o.num), _UONE, _canonical=True)
        if len(o.den) == 1 and len(o.num) == 1:
            return RatFunc(_uscale(self.num, o.num[0]), self.den, _canonical=True)
        if len(self.den) == 1 and len(self.num) == 1:
            return RatFunc(_uscale(o.num, self.num[0]), o.den, _canonical=True)
        return RatFunc(_umul(self.num, o.num), _umul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("division by zero in Q(t)(x)")
        return RatFunc(self.den, self.num)

    def __truediv__(self, o) -> "RatFunc":
        if not isinstance(o, RatFunc):
            o = RatFunc.coerce(o)
        return self * o.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        out = RF_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def deriv(self) -> "RatFunc":
        """d/dx."""
        if len(self.den) == 1:
            return RatFunc(_uderiv(self.num), _UONE, _canonical=True)
        return RatFunc(
            _usub(_umul(_uderiv(self.num), self.den), _umul(self.num, _uderiv(self.den))),
            _umul(self.den, self.den),
        )

    def delta(self) -> "RatFunc":
        """Coefficient derivation (d/dt applied to the Q(t) coefficients)."""
        if len(self.den) == 1:
            return RatFunc(_udelta(self.num), _UONE, _canonical=True)
        return RatFunc(
            _usub(_umul(_udelta(self.num), self.den), _umul(self.num, _udelta(self.den))),
            _umul(self.den, self.den),
        )

    def __eq__(self, o) -> bool:
        if isinstance(o, RatFunc):
            return self.num == o.num and self.den == o.den
        try:
            return self == RatFunc.coerce(o)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.num)

    def __repr__(self) -> str:
        n = format_mpoly(upoly_to_mpoly(self.num))
        if len(self.den) == 1:
            return f"RatFunc({n})"
        return f"RatFunc(({n})/({format_mpoly(upoly_to_mpoly(self.den))}))"


RF_ZERO = RatFunc((), _UONE, _canonical=True)
def _reduce_fraction(num: UPoly, den: UPoly) -> Tuple[UPoly, UPoly]:
    """Cancel the gcd of num and den in Z[t, x]; den is left with an integral leading term."""
    N, Ln = _to_zx(num)
    D, Ld = _to_zx(den)
    G = N.gcd(D)
    if G.degrees()[1] > 0:
        N = N / G
        D = D / G
    # num/den = (N / Ln) / (D / Ld) = (N * Ld / Ln) / D
    scale = BaseElem(_from_flint(Ld), _from_flint(Ln)) if (Ld != 1 or Ln != 1) else ONE
    nrows = _from_zx(N)
    num = _utrim([BaseElem(r, (1,)) * scale if any(r) else ZERO for r in nrows])
    den = _utrim([BaseElem(r, (1,)) if any(r) else ZERO for r in _from_zx(D)])
    return num, den


RF_ONE = RatFunc(_UONE, _UONE, _canonical=True)


def _ulcm(a: UPoly, b: UPoly) -> UPoly:
    if a == _UONE:
        return b
    if b == _UONE:
        return a
    g = _ugcd(a, b)
    return _umonic(_udivmod(_umul(a, b), g)[0])


# ---------------------------------------------------------------------------
# F[y] helpers (tuples of RatFunc)
# ---------------------------------------------------------------------------

FPoly = Tuple[RatFunc, ...]


def _ftrim(a: Sequence[RatFunc]) -> FPoly:
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return tuple(a[:n])


def _fadd(a: FPoly, b: FPoly) -> FPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] = out[i] + v
    return _ftrim(out)


def _fneg(a: FPoly) -> FPoly:
    return tuple(-v for v in a)


def _fmul(a: FPoly, b: FPoly) -> List[RatFunc]:
    if not a or not b:
        return []
    out = [RF_ZERO] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                if v:
                    out[i + j] = out[i + j] + u * v
    return out


def _fscale(a: FPoly, c: RatFunc) -> FPoly:
    if not c:
        return ()
    return tuple(v * c for v in a)


def _fdivmod(a: FPoly, b: FPoly) -> Tuple[FPoly, FPoly]:
    if len(a) < len(b):
        return (), a
    inv = b[-1].inverse()
    r = list(a)
    db = len(b) - 1
    q = [RF_ZERO] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = r[k + db] * inv
        q[k] = c
        if c:
            for i, v in enumerate(b):
                if v:
                    r[i + k] = r[i + k] - c * v
    return _ftrim(q), _ftrim(r[:db])


def fpoly_from_mpoly(p: MPoly) -> FPoly:
    """View a polynomial in x, y over Q(t) as a polynomial in y over Q(t)(x)."""
    extra = [v for v in p.used_variables() if v not in ("x", "y")]
    if extra:
        raise CurveError(f"curve expressions may only use x, y and t; found {extra}")
    p = p.with_variables(("x", "y"))
    buckets: Dict[int, Dict[int, BaseElem]] = {}
    for (ex, ey), c in p.terms.items():
        buckets.setdefault(ey, {})[ex] = c
    if not buckets:
        return ()
    deg = max(buckets)
    out = []
    for k in range(deg + 1):
        b = buckets.get(k, {})
        if b:
            up = [ZERO] * (max(b) + 1)
            for ex, c in b.items():
                up[ex] = c
            out.append(RatFunc(_utrim(up), _UONE, _canonical=True))
        else:
            out.append(RF_ZERO)
    return _ftrim(out)


# ---------------------------------------------------------------------------
# PlaneCurve
# ---------------------------------------------------------------------------


def _to_sympy(p: MPoly):
    """Integer-coefficient sympy polynomial in (t, x, y) proportional to p."""
    import sympy as sp

    t, x, y = sp.symbols("t x y")
    p = p.with_variables(("x", "y"))
    expr = 0
    for (ex, ey), c in p.terms.items():
        numer = sum(sp.Integer(v) * t**k for k, v in enumerate(c.num))
        denom = sum(sp.Integer(v) * t**k for k, v in enumerate(c.den))
        expr += numer / denom * x**ex * y**ey
    numer, _ = sp.fraction(sp.together(expr))
    return sp.Poly(sp.expand(numer), t, x, y, domain="ZZ")


def check_irreducible(p: MPoly) -> bool:
    """Exact irreducibility of p over Q(t) by factoring in Z[t, x, y].

    By Gauss's lemma p is irreducible in Q(t)[x, y] exactly when, after
    clearing denominators, a single factor of positive (x, y)-degree occurs,
    with multiplicity one.
    """
    P = _to_sympy(p)
    _, factors = P.factor_list()
    geometric = [(f, m) for f, m in factors if f.degree(1) > 0 or f.degree(2) > 0]
    return len(geometric) == 1 and geometric[0][1] == 1


def check_smooth(p: MPoly) -> bool:
    """True when {p, p_x, p_y} has no common zero over an algebraic closure of Q(t).

    A constant gcd of Res_y(p, p_x) and Res_y(p, p_y) certifies smoothness;
    otherwise a Groebner basis over Q(t) decides.
    """
    import sympy as sp

    t, x, y = sp.symbols("t x y")
    P = _to_sympy(p).as_expr()
    Px, Py = sp.diff(P, x), sp.diff(P, y)
    if sp.Poly(P, y).degree() < 1:
        return True
    if Py.is_number:
        return True
    r1 = sp.resultant(P, Py, y)
    r2 = sp.resultant(P, Px, y) if Px != 0 else 0
    if r2 == 0 and Px == 0:
        r2 = r1
    g = sp.gcd(sp.Poly(r1, x, domain="ZZ(t)"), sp.Poly(r2, x, domain="ZZ(t)"))
    if g.degree() <= 0 and r1 != 0:
        return True
    gb = sp.groebner([P, Px, Py], x, y, domain="QQ(t)")
    return list(gb.exprs) == [1]


class PlaneCurve:
    """Affine plane curve p(x, y) = 0 over Q(t); p irreducible, deg_y(p) >= 1."""

    def __init__(self, p: MPoly, *, check: bool = True, name: str | None = None):
        if not isinstance(p, MPoly):
            p = MPoly.const(BaseElem.coerce(p))
        self.p: MPoly = p.with_variables(_xy_union(p))
        self.name = name
        self.p_fy: FPoly = fpoly_from_mpoly(self.p)
        self.deg_y = len(self.p_fy) - 1
        if self.deg_y < 1:
            raise CurveError(f"curve polynomial {p} must involve y (deg_y >= 1)")
        lc_inv = self.p_fy[-1].inverse()
        # p divided by its leading y-coefficient, without the y^d term
        self._monic_tail: FPoly = tuple(c * lc_inv for c in self.p_fy[:-1])
        if check:
            if not check_irreducible(self.p):
                raise CurveError(f"curve polynomial {p} is reducible over Q(t)")
            if not check_smooth(self.p):
                raise CurveError(f"curve {p} = 0 is singular on the affine chart")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PlaneCurve) and self.p == other.p

    def __hash__(self) -> int:
        return hash(self.p)

    def __repr__(self) -> str:
        return f"PlaneCurve({self.p})"

    def __str__(self) -> str:
        return str(self.p)

    # reductions -------------------------------------------------------
    def reduce(self, a: Sequence[RatFunc]) -> FPoly:
        """Reduce a polynomial in y over Q(t)(x) modulo p."""
        d = self.deg_y
        r = list(_ftrim(a))
        tail = self._monic_tail
        for k in range(len(r) - 1, d - 1, -1):
            c = r[k]
            if c:
                for i, m in enumerate(tail):
                    if m:
                        r[k - d + i] = r[k - d + i] - c * m
        return _ftrim(r[:d])

    def invert(self, a: FPoly) -> FPoly:
        if not a:
            raise ZeroDivisionError("division by the zero function")
        if len(a) == 1:
            return (a[0].inverse(),)
        r0, r1 = self.p_fy, a
        s0, s1 = (), (RF_ONE,)
        while r1:
            q, r = _fdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _fadd(s0, _fneg(_ftrim(_fmul(q, s1))))
        if len(r0) != 1:
            raise ArithmeticError("non-invertible element: curve polynomial is not irreducible")
        return self.reduce(_fscale(s0, r0[0].inverse()))

    # elements ---------------------------------------------------------
    def fn(self, num, den=None) -> "CurveFn":
        """Element of K(C) given by polynomial (or scalar) numerator/denominator."""
        n = self.reduce(_as_fpoly(num))
        if den is None:
            return CurveFn(self, n)
        d = self.reduce(_as_fpoly(den))
        if not d:
            raise ZeroDivisionError("denominator vanishes on the curve")
        return CurveFn(self, n) / CurveFn(self, d)

    def const(self, c) -> "CurveFn":
        return CurveFn(self, _ftrim((RatFunc.coerce(c),)))

    @cached_property
    def x(self) -> "CurveFn":
        return self.fn(MPoly.var("x", ("x", "y")))

    @cached_property
    def y(self) -> "CurveFn":
        return self.fn(MPoly.var("y", ("x", "y")))

    @cached_property
    def zero(self) -> "CurveFn":
        return CurveFn(self, ())

    @cached_property
    def one(self) -> "CurveFn":
        return CurveFn(self, (RF_ONE,))

    @cached_property
    def px(self) -> "CurveFn":
        return self.fn(self.p.partial("x"))

    @cached_property
    def py(self) -> "CurveFn":
        return self.fn(self.p.partial("y"))

    @cached_property
    def pdelta(self) -> "CurveFn":
        return self.fn(self.p.coeff_delta())

    @cached_property
    def px_over_py(self) -> "CurveFn":
        return self.px / self.py

    @cached_property
    def pdelta_over_py(self) -> "CurveFn":
        return self.pdelta / self.py

    def is_constant_coefficient(self) -> bool:
        return self.p.coeff_delta().is_zero()


def _xy_union(p: MPoly) -> Tuple[str, ...]:
    extra = [v for v in p.used_variables() if v not in ("x", "y")]
    if extra:
        raise CurveError(f"curve polynomials may only use x and y; found {extra}")
    return ("x", "y")


def _as_fpoly(v) -> FPoly:
    if isinstance(v, MPoly):
        return fpoly_from_mpoly(v)
    if isinstance(v, RatFunc):
        return _ftrim((v,))
    return _ftrim((RatFunc.coerce(v),))


# ---------------------------------------------------------------------------
# CurveFn
# ---------------------------------------------------------------------------


class CurveFn:
    """Element of the function field K(C), y-reduced."""

    __slots__ = ("curve", "coeffs", "_hash")

    def __init__(self, curve: PlaneCurve, coeffs: Sequence[RatFunc]):
        self.curve = curve
        self.coeffs: FPoly = _ftrim(tuple(coeffs))
        if len(self.coeffs) > curve.deg_y:
            self.coeffs = curve.reduce(self.coeffs)
        self._hash = None

    def _peer(self, other) -> "CurveFn":
        if isinstance(other, CurveFn):
            if other.curve is not self.curve and other.curve != self.curve:
                raise CurveError("functions live on different curves")
            return other
        if isinstance(other, MPoly):
            return self.curve.fn(other)
        return self.curve.const(other)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        """True when the function lies in Q(t)."""
        return len(self.coeffs) == 0 or (len(self.coeffs) == 1 and self.coeffs[0].is_constant())

    def constant_value(self) -> BaseElem:
        return self.coeffs[0].constant_value() if self.coeffs else ZERO

    def __add__(self, other) -> "CurveFn":
        o = self._peer(other)
        return CurveFn(self.curve, _fadd(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __neg__(self) -> "CurveFn":
        return CurveFn(self.curve, _fneg(self.coeffs))

    def __sub__(self, other) -> "CurveFn":
        o = self._peer(other)
        return CurveFn(self.curve, _fadd(self.coeffs, _fneg(o.coeffs)))

    def __rsub__(self, other) -> "CurveFn":
        return (-self) + other

    def __mul__(self, other) -> "CurveFn":
        o = self._peer(other)
        if len(o.coeffs) == 1:
            return CurveFn(self.curve, _fscale(self.coeffs, o.coeffs[0]))
        if len(self.coeffs) == 1:
            return CurveFn(self.curve, _fscale(o.coeffs, self.coeffs[0]))
        return CurveFn(self.curve, self.curve.reduce(_fmul(self.coeffs, o.coeffs)))

    __rmul__ = __mul__

    def inverse(self) -> "CurveFn":
        return CurveFn(self.curve, self.curve.invert(self.coeffs))

    def __truediv__(self, other) -> "CurveFn":
        o = self._peer(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return self * o.inverse()

    def __rtruediv__(self, other) -> "CurveFn":
        return self._peer(other) * self.inverse()

    def __pow__(self, k: int) -> "CurveFn":
        if k < 0:
            return self.inverse() ** (-k)
        out = self.curve.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, CurveFn):
            return self.curve == other.curve and self.coeffs == other.coeffs
        try:
            return self == self._peer(other)
        except (TypeError, CurveError):
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # representation ---------------------------------------------------
    def as_fraction(self) -> Tuple[MPoly, MPoly]:
        """Canonical numerator N(x, y) and monic denominator D(x) with f = N/D."""
        den: UPoly = _UONE
        for c in self.coeffs:
            den = _ulcm(den, c.den)
        terms: Dict[Tuple[int, int], BaseElem] = {}
        for k, c in enumerate(self.coeffs):
            scaled = _udivmod(_umul(c.num, den), c.den)[0] if c.den != den else c.num
            for i, v in enumerate(scaled):
                if v:
                    terms[(i, k)] = v
        return MPoly(("x", "y"), terms, _clean=True), upoly_to_mpoly(den, "x", ("x", "y"))

    def substitute(self, r: "CurveFn", s: "CurveFn") -> "CurveFn":
        """Compose with a map (x, y) -> (r, s) into another function field."""
        out = r.curve.zero
        s_pow = r.curve.one
        for c in self.coeffs:
            if c:
                num = _ueval(c.num, r)
                den = _ueval(c.den, r)
                num = num if isinstance(num, CurveFn) else r.curve.const(num)
                den = den if isinstance(den, CurveFn) else r.curve.const(den)
                out = out + num / den * s_pow
            s_pow = s_pow * s
        return out

    def __repr__(self) -> str:
        return f"CurveFn({self})"

    def __str__(self) -> str:
        return format_curvefn(self)


def format_curvefn(f: CurveFn) -> str:
    num, den = f.as_fraction()
    n = format_mpoly(num)
    if den == 1:
        return n
    if len(num.terms) > 1 or _needs_paren(num):
        n = f"({n})"
    d = format_mpoly(den)
    if not _ATOM.fullmatch(d):
        d = f"({d})"
    return f"{n}/{d}"


_ATOM = re.compile(r"[a-z]\w*(\^\d+)?")


def _needs_paren(num: MPoly) -> bool:
    s = format_mpoly(num)
    return "/" in s or s.startswith("(")


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def fn_arith(f: CurveFn, g: CurveFn, op: str) -> CurveFn:
    """Field operation in K(C); ``op`` is one of + - * /."""
    if f.curve != g.curve:
        raise CurveError("functions live on different curves")
    if op == "+":
        return f + g
    if op in ("-", "−"):
        return f - g
    if op in ("*", "×"):
        return f * g
    if op in ("/", "÷"):
        return f / g
    raise ValueError(f"unknown operation {op!r}")


def _fn_from_fpoly(curve: PlaneCurve, a: Sequence[RatFunc]) -> CurveFn:
    return CurveFn(curve, curve.reduce(a))


def fn_delta_data(f, curve: PlaneCurve | None = None) -> Tuple[CurveFn, CurveFn, CurveFn]:
    """Partials f_x, f_y and coefficient derivative f^delta of a representative.

    ``f`` is either a ``CurveFn`` (its stored y-reduced form is the
    representative) or a polynomial/fraction representative given as an
    ``MPoly`` or a ``(num, den)`` pair of ``MPoly`` in x, y, reduced into
    K(C) only after differentiating.
    """
    if isinstance(f, CurveFn):
        curve = f.curve
        rep = f.coeffs
        fx = tuple(c.deriv() for c in rep)
        fy = tuple(rep[i] * i for i in range(1, len(rep)))
        fd = tuple(c.delta() for c in rep)
        return (
            _fn_from_fpoly(curve, fx),
            _fn_from_fpoly(curve, fy),
            _fn_from_fpoly(curve, fd),
        )
    if curve is None:
        raise CurveError("a curve is required for a polynomial representative")
    if isinstance(f, tuple):
        num, den = f
    else:
        num, den = f, None
    if not isinstance(num, MPoly):
        num = MPoly.const(BaseElem.coerce(num), ("x", "y"))
    num = num.with_variables(("x", "y"))
    nx, ny, nd = (curve.fn(num.partial("x")), curve.fn(num.partial("y")), curve.fn(num.coeff_delta()))
    if den is None:
        return nx, ny, nd
    if not isinstance(den, MPoly):
        den = MPoly.const(BaseElem.coerce(den), ("x", "y"))
    den = den.with_variables(("x", "y"))
    N, D = curve.fn(num), curve.fn(den)
    dx, dy, dd = curve.fn(den.partial("x")), curve.fn(den.partial("y")), curve.fn(den.coeff_delta())
    D2 = D * D
    return (
        (nx * D - N * dx) / D2,
        (ny * D - N * dy) / D2,
        (nd * D - N * dd) / D2,
    )
