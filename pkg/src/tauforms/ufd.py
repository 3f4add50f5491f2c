"""GCDs in the UFDs Q(t)[x_1, ..., x_n].

Recursive content / primitive-part decomposition with primitive pseudo-
remainder sequences in the last occurring variable.  Results are normalized
so that the leading coefficient (lex order) equals 1.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence, Tuple

from .diffbase import (
    ONE,
    ZERO,
    BaseElem,
    MPoly,
    _zcontent,
    _zdivexact,
    _zgcd,
    _zmul,
    var_sort_key,
)


def leading_term(p: MPoly) -> Tuple[Tuple[int, ...], BaseElem]:
    """Leading (exponent, coefficient) in lex order on ``p.variables``."""
    e = max(p.terms)
    return e, p.terms[e]


def divexact(a: MPoly, b: MPoly) -> MPoly:
    """Exact quotient a / b; raises ArithmeticError when b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    a, b = a._unify(b)
    if b.is_constant():
        return a.scale(b.constant_value().inverse())
    vs = a.variables
    eb, cb = leading_term(b)
    inv = cb.inverse()
    q_terms = {}
    r = a
    while not r.is_zero():
        er, cr = leading_term(r)
        de = tuple(i - j for i, j in zip(er, eb))
        if any(k < 0 for k in de):
            raise ArithmeticError(f"{b} does not divide {a}")
        c = cr * inv
        q_terms[de] = c
        r = r - MPoly(vs, {de: c}, _clean=True) * b
    return MPoly(vs, q_terms, _clean=True)


def _monic(p: MPoly) -> MPoly:
    if p.is_zero():
        return p
    return p.scale(leading_term(p)[1].inverse())


def _main_var(a: MPoly, b: MPoly) -> str | None:
    used = set(a.used_variables()) | set(b.used_variables())
    if not used:
        return None
    return max(used, key=var_sort_key)


def _coeffs_in(p: MPoly, v: str) -> list:
    return list(p.coefficient_in(v).values())


def _content(p: MPoly, v: str) -> MPoly:
    g = None
    for c in _coeffs_in(p, v):
        g = c if g is None else gcd_mpoly(g, c)
        if g.is_constant():
            break
    return g if g is not None else MPoly.const(ZERO)


def _prem(a: MPoly, b: MPoly, v: str) -> MPoly:
    db = b.degree(v)
    cb = b.coefficient_in(v)
    lb = cb[db]
    xv = MPoly.var(v, a.variables)
    while not a.is_zero() and a.degree(v) >= db:
        da = a.degree(v)
        la = a.coefficient_in(v)[da]
        a = lb * a - la * xv ** (da - db) * b
    return a


def _primitive_part(p: MPoly, v: str) -> Tuple[MPoly, MPoly]:
    c = _content(p, v).with_variables(p.variables)
    return c, divexact(p, c)


def gcd_mpoly(a: MPoly, b: MPoly) -> MPoly:
    """Greatest common divisor in Q(t)[vars], leading coefficient 1."""
    a, b = a._unify(b)
    if a.is_zero():
        return _monic(b)
    if b.is_zero():
        return _monic(a)
    v = _main_var(a, b)
    if v is None:
        return MPoly.const(ONE, a.variables)
    ca, pa = _primitive_part(a, v)
    cb, pb = _primitive_part(b, v)
    g_content = gcd_mpoly(ca, cb).with_variables(a.variables)
    if pa.degree(v) < pb.degree(v):
        pa, pb = pb, pa
    while not pb.is_zero():
        r = _prem(pa, pb, v)
        pa = pb
        pb = r if r.is_zero() else _primitive_part(r, v)[1]
    return _monic(g_content * _primitive_part(pa, v)[1])


# ---------------------------------------------------------------------------
# Z[t]-content of a family of Q(t) coefficients
# ---------------------------------------------------------------------------


def _zgcd_full(a, b):
    if not a:
        return b
    if not b:
        return a
    c = gcd(_zcontent(a), _zcontent(b))
    return tuple(c * v for v in _zgcd(a, b))


def _zlcm_full(a, b):
    g = _zgcd_full(a, b)
    q = _zdivexact(_zmul(a, b), g)
    return q if q[-1] > 0 else tuple(-v for v in q)


def zt_content(coeffs: Iterable[BaseElem]) -> BaseElem:
    """Largest c in Q(t) such that every coefficient / c lies in Z[t] and the
    quotients have no common factor in Z[t]."""
    num = ()
    den = (1,)
    for c in coeffs:
        if not c:
            continue
        num = _zgcd_full(num, c.num)
        den = _zlcm_full(den, c.den)
    if not num:
        return ZERO
    if num[-1] < 0:
        num = tuple(-v for v in num)
    return BaseElem(num, den)


def primitive_pair(polys: Sequence[MPoly]) -> Tuple[BaseElem, Tuple[MPoly, ...]]:
    """Divide a family of polynomials by their joint Z[t]-content.

    The sign is fixed so the lex-leading coefficient of the first nonzero
    member has a positive leading integer coefficient.
    """
    coeffs = [c for p in polys for c in p.coefficients()]
    c = zt_content(coeffs)
    if not c:
        return ONE, tuple(polys)
    for p in polys:
        if not p.is_zero():
            lc = leading_term(p)[1]
            if (lc / c).num[-1] < 0:
                c = -c
            break
    inv = c.inverse()
    return c, tuple(p.scale(inv) for p in polys)
