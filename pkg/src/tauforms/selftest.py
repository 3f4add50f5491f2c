"""Seeded property batches behind the ``selftest`` command."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

from . import randgen as rg
from .prolong import prolongation, prolongation_cone, tangent_variety
from .smset import xi_pullback_check
from .tauform import (
    decompose,
    lambda_map,
    oneform_pullback,
    primitive_section,
    pullback,
    recompose,
    sim_equivalent,
    tau_of,
)
from . import ufd


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases: int
    ok: bool


def _derivation(rng, n) -> bool:
    names = ("x", "y", "z")
    for _ in range(n):
        p = rg.rand_mpoly(rng, names, deg=3)
        q = rg.rand_mpoly(rng, names, deg=3)
        if (p * q).coeff_delta() != p * q.coeff_delta() + q * p.coeff_delta():
            return False
        for v in names:
            if p.partial(v).coeff_delta() != p.coeff_delta().partial(v):
                return False
    return True


def _cone_slices(rng, n) -> bool:
    for _ in range(n):
        V = rg.rand_variety(rng, n=rng.randint(1, 3), ngens=rng.randint(1, 2))
        cone = prolongation_cone(V)
        if cone.slice("u'", 0) != tangent_variety(V) or cone.slice("u'", 1) != prolongation(V):
            return False
    return True


def _leibniz(rng, n) -> bool:
    C = rg.rand_curve(rng)
    for _ in range(n):
        f, g = rg.rand_fn(rng, C), rg.rand_fn(rng, C)
        if tau_of(f * g) != tau_of(g) * f + tau_of(f) * g:
            return False
    return True


def _decompose(rng, n) -> bool:
    C = rg.rand_curve(rng)
    for _ in range(n):
        w1 = rg.rand_tauform(rng, C, trivial_rate=0.2)
        w0 = rg.rand_nontrivial_tauform(rng, C)
        f, g = decompose(w1, w0)
        if recompose(f, g, w0) != w1 or decompose(recompose(f, g, w0), w0) != (f, g):
            return False
    return True


def _equivalence(rng, n) -> bool:
    C = rg.rand_curve(rng)
    for _ in range(n):
        w = rg.rand_nontrivial_tauform(rng, C)
        f = rg.rand_nonzero_fn(rng, C)
        if not sim_equivalent(w, w * f):
            return False
    return True


def _pullback(rng, n) -> bool:
    for _ in range(n):
        phi, psi = rg.rand_p1_map(rng), rg.rand_p1_map(rng)
        w = rg.rand_nontrivial_tauform(rng, phi.target)
        if pullback(w, psi.compose(phi)) != pullback(pullback(w, psi), phi):
            return False
        if lambda_map(pullback(w, phi)) != oneform_pullback(lambda_map(w), phi):
            return False
        if not xi_pullback_check(phi, w):
            return False
    return True


def _primitive(rng, n) -> bool:
    for _ in range(n):
        a = rg.rand_mpoly(rng, ("x",), deg=3)
        b = rg.rand_mpoly(rng, ("x",), deg=3)
        if a.is_zero() and b.is_zero():
            continue
        common = rg.rand_nonzero_mpoly(rng, ("x",), deg=2)
        a, b = a * common, b * common
        s = primitive_section(a, b)
        if s.content * s.a != a or s.content * s.b != b:
            return False
        if not ufd.gcd_mpoly(s.a, s.b).is_constant():
            return False
    return True


SUITES: List[tuple] = [
    ("derivation", _derivation, 20),
    ("cone-slices", _cone_slices, 5),
    ("leibniz", _leibniz, 10),
    ("decompose", _decompose, 10),
    ("equivalence", _equivalence, 10),
    ("pullback", _pullback, 5),
    ("primitive-section", _primitive, 10),
]


def run_selftest(seed: int = 0) -> List[SuiteResult]:
    out = []
    for k, (name, fn, n) in enumerate(SUITES):
        rng = rg.seeded(seed * 1000 + k)
        out.append(SuiteResult(name, n, bool(fn(rng, n))))
    return out
