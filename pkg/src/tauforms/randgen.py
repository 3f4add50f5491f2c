"""Seeded random generators for property checks and the selftest command."""

from __future__ import annotations

import random
from typing import Sequence

from .curvefield import CurveError, CurveFn, PlaneCurve
from .diffbase import BaseElem, MPoly
from .prolong import EmbeddedVariety, VarietyError
from .tauform import CurveMorphism, TauForm


def rand_int_poly(rng: random.Random, deg: int = 2, bound: int = 3) -> tuple:
    out = [rng.randint(-bound, bound) for _ in range(rng.randint(0, deg) + 1)]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def rand_base(rng: random.Random, deg: int = 1, bound: int = 3, constant: bool = False) -> BaseElem:
    """Random element of Q(t), mostly polynomial and occasionally a fraction."""
    if constant:
        return BaseElem.coerce(rng.randint(-bound, bound))
    num = rand_int_poly(rng, deg, bound)
    if not num:
        return BaseElem.coerce(0)
    if rng.random() < 0.2:
        den = rand_int_poly(rng, 1, bound)
        if den:
            return BaseElem(num, (1,)) / BaseElem(den, (1,))
    return BaseElem(num, (1,))


def rand_mpoly(
    rng: random.Random,
    variables: Sequence[str],
    deg: int = 2,
    nterms: int = 3,
    constant: bool = False,
    coeff_deg: int = 1,
) -> MPoly:
    variables = tuple(variables)
    terms = {}
    for _ in range(nterms):
        left = rng.randint(0, deg)
        e = [0] * len(variables)
        for _ in range(left):
            e[rng.randrange(len(variables))] += 1
        c = rand_base(rng, coeff_deg, constant=constant)
        if c:
            terms[tuple(e)] = c
    return MPoly(variables, terms)


def rand_nonzero_mpoly(rng, variables, **kw) -> MPoly:
    while True:
        p = rand_mpoly(rng, variables, **kw)
        if not p.is_zero():
            return p


def rand_variety(rng: random.Random, n: int = 2, ngens: int = 1, constant: bool = False) -> EmbeddedVariety:
    names = tuple(f"x{i + 1}" for i in range(n))
    while True:
        gens = [rand_nonzero_mpoly(rng, names, deg=2, nterms=3, constant=constant) for _ in range(ngens)]
        try:
            return EmbeddedVariety(gens, names)
        except VarietyError:
            continue


_X, _Y = MPoly.var("x"), MPoly.var("y")


def rand_curve(rng: random.Random, constant: bool = False) -> PlaneCurve:
    """Random smooth irreducible curve: graphs, hyperelliptic shapes and conics."""
    while True:
        shape = rng.randrange(3)
        c = lambda: MPoly.const(rand_base(rng, 1, 2, constant))  # noqa: E731
        if shape == 0:
            p = _Y - (c() * _X * _X + c() * _X + c())
        elif shape == 1:
            p = _Y * _Y - (_X ** 3 + c() * _X + c())
        else:
            p = _Y * _Y + c() * _X * _Y - (c() * _X * _X + c())
        try:
            return PlaneCurve(p)
        except CurveError:
            continue


def rand_fn(rng: random.Random, C: PlaneCurve, deg: int = 2, rational: bool = True) -> CurveFn:
    num = rand_mpoly(rng, ("x", "y"), deg=deg, nterms=3)
    f = C.fn(num)
    if rational and rng.random() < 0.4:
        den = rand_nonzero_mpoly(rng, ("x",), deg=1, nterms=2)
        f = f / C.fn(den)
    return f


def rand_nonzero_fn(rng, C, **kw) -> CurveFn:
    while True:
        f = rand_fn(rng, C, **kw)
        if not f.is_zero():
            return f


def rand_tauform(rng: random.Random, C: PlaneCurve, trivial_rate: float = 0.0) -> TauForm:
    A = C.zero if rng.random() < trivial_rate else rand_fn(rng, C)
    return TauForm(C, A, rand_fn(rng, C))


def rand_nontrivial_tauform(rng, C) -> TauForm:
    while True:
        w = rand_tauform(rng, C)
        if not w.is_trivial():
            return w


def p1() -> PlaneCurve:
    return PlaneCurve(_Y)


def rand_p1_map(rng: random.Random, C: PlaneCurve | None = None, deg: int = 2) -> CurveMorphism:
    """Dominant x |-> r(x) on the line y = 0."""
    C = C or p1()
    while True:
        r = rand_mpoly(rng, ("x",), deg=deg, nterms=3)
        f = C.fn(r)
        if rng.random() < 0.3:
            f = f / C.fn(rand_nonzero_mpoly(rng, ("x",), deg=1, nterms=2))
        if not f.is_constant():
            return CurveMorphism(C, C, f, C.zero)


def rand_polynomial_F(rng: random.Random, m: int, deg: int = 3) -> MPoly:
    names = tuple(f"T{i + 1}" for i in range(m))
    return rand_nonzero_mpoly(rng, names, deg=deg, nterms=4)


def seeded(seed: int) -> random.Random:
    return random.Random(seed)
