"""Acceptance suite: twelve exact property criteria, each bounded to 60 s.

Run under pytest (one PASS/FAIL line per criterion is printed) or directly with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import io
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from declgen import random_declaration, round_trip  # noqa: E402
from tauforms import randgen as rg  # noqa: E402
from tauforms.cli import execute  # noqa: E402
from tauforms.curvefield import PlaneCurve, _ugcd_euclid, fn_delta_data, upoly_from_mpoly  # noqa: E402
from tauforms.diffbase import BaseElem, poly_vars  # noqa: E402
from tauforms.points import eval_mpoly  # noqa: E402
from tauforms.prolong import EmbeddedVariety, prolongation, prolongation_cone, tangent_variety  # noqa: E402
from tauforms.smset import xi_pullback_check, xi_system  # noqa: E402
from tauforms.tauform import (  # noqa: E402
    OneForm,
    canonical_ratio,
    decompose,
    global_tau_basis_constant_case,
    iota,
    lambda_map,
    oneform_pullback,
    parallel,
    primitive_section,
    pullback,
    recompose,
    sim_class_meets_parallel_class,
    sim_equivalent,
    tau_of,
)

LIMIT = 60.0
GOLDEN = Path(__file__).parent / "golden"
T = BaseElem.t()
x, y = poly_vars("x", "y")


def c1_derivation() -> bool:
    rng = rg.seeded(101)
    for _ in range(500):
        n = rng.randint(1, 3)
        names = ("x1", "x2", "x3")[:n]
        p = rg.rand_mpoly(rng, names, deg=4, nterms=6)
        q = rg.rand_mpoly(rng, names, deg=4, nterms=6)
        if (p * q).coeff_delta() != p * q.coeff_delta() + q * p.coeff_delta():
            return False
        for v in names:
            if p.partial(v).coeff_delta() != p.coeff_delta().partial(v):
                return False
    return True


def c2_cone_slices() -> bool:
    rng = rg.seeded(102)
    for _ in range(10):
        V = rg.rand_variety(rng, n=rng.randint(1, 3), ngens=rng.randint(1, 2))
        cone = prolongation_cone(V)
        if cone.slice("u'", 0) != tangent_variety(V) or cone.slice("u'", 1) != prolongation(V):
            return False
    return True


def c3_constants_collapse() -> bool:
    rng = rg.seeded(103)
    for _ in range(10):
        V = rg.rand_variety(rng, n=rng.randint(1, 3), ngens=rng.randint(1, 2), constant=True)
        if prolongation(V) != tangent_variety(V):
            return False
    V = EmbeddedVariety([y - x * T])
    (pro,), (tan,) = prolongation(V).as_mpolys(), tangent_variety(V).as_mpolys()
    return pro - tan == -x and prolongation(V) != tangent_variety(V)


def c4_leibniz_chain() -> bool:
    rng = rg.seeded(104)
    for _ in range(5):
        C = rg.rand_curve(rng)
        for _ in range(200):
            f, g = rg.rand_fn(rng, C), rg.rand_fn(rng, C)
            if tau_of(f * g) != tau_of(g) * f + tau_of(f) * g:
                return False
    for _ in range(50):
        C = rg.rand_curve(rng)
        m = rng.randint(1, 3)
        names = tuple(f"T{i + 1}" for i in range(m))
        F = rg.rand_polynomial_F(rng, m).with_variables(names)
        vals = dict(zip(names, (rg.rand_fn(rng, C) for _ in names)))
        rhs = iota(eval_mpoly(F.coeff_delta(), vals, C.one))
        for v in names:
            rhs = rhs + tau_of(vals[v]) * eval_mpoly(F.partial(v), vals, C.one)
        if tau_of(eval_mpoly(F, vals, C.one)) != rhs:
            return False
    return True


def c5_exact_sequence() -> bool:
    rng = rg.seeded(105)
    C = rg.rand_curve(rng)
    bases = [rg.rand_nontrivial_tauform(rng, C) for _ in range(3)] + [tau_of(C.x)]
    for _ in range(100):
        w = rg.rand_tauform(rng, C, trivial_rate=0.3)
        killed = lambda_map(w).is_zero()
        for w0 in bases:
            if killed != decompose(w, w0)[0].is_zero():
                return False
    for _ in range(100):
        D = rg.rand_curve(rng) if rng.random() < 0.1 else C
        f = rg.rand_fn(rng, D)
        fx, fy, _ = fn_delta_data(f.as_fraction(), D)
        if lambda_map(tau_of(f)) != OneForm(D, fx - fy * D.px_over_py):
            return False
    return True


def c6_uniqueness() -> bool:
    rng = rg.seeded(106)
    C = rg.rand_curve(rng)
    for k in range(100):
        if k % 20 == 0:
            C = rg.rand_curve(rng)
        w1 = rg.rand_tauform(rng, C, trivial_rate=0.2)
        w0 = rg.rand_nontrivial_tauform(rng, C)
        f, g = decompose(w1, w0)
        if recompose(f, g, w0) != w1 or decompose(recompose(f, g, w0), w0) != (f, g):
            return False
    return True


def c7_equivalence() -> bool:
    rng = rg.seeded(107)
    C = rg.rand_curve(rng)
    for _ in range(100):
        w = rg.rand_nontrivial_tauform(rng, C)
        f = rg.rand_nonzero_fn(rng, C)
        if not sim_equivalent(w, w * f) or canonical_ratio(w) != canonical_ratio(w * f):
            return False
    for _ in range(50):
        w1, w2 = rg.rand_nontrivial_tauform(rng, C), rg.rand_nontrivial_tauform(rng, C)
        m = sim_class_meets_parallel_class(w1, w2)
        if not (sim_equivalent(m, w1) and parallel(m, w2)):
            return False
        # any other member h*w1 of the class is parallel to w2 only if it equals m
        h = rg.rand_nonzero_fn(rng, C)
        if parallel(w1 * h, w2) != (w1 * h == m):
            return False
    return True


def c8_pullback() -> bool:
    rng = rg.seeded(108)
    for _ in range(50):
        phi, psi = rg.rand_p1_map(rng), rg.rand_p1_map(rng)
        w = rg.rand_tauform(rng, phi.target)
        if pullback(w, psi.compose(phi)) != pullback(pullback(w, psi), phi):
            return False
    for _ in range(50):
        phi = rg.rand_p1_map(rng)
        w = rg.rand_tauform(rng, phi.target)
        if lambda_map(pullback(w, phi)) != oneform_pullback(lambda_map(w), phi):
            return False
    return True


def c9_xi() -> bool:
    P = PlaneCurve(y)
    S = xi_system(tau_of(P.x))
    if str(S) != "{y = 0, x' = 0}":
        return False
    if not all(S.satisfied_by(BaseElem.coerce(c), 0, 0) for c in (0, 1, -3, Fraction(5, 7))):
        return False
    rng = rg.seeded(109)
    for _ in range(50):
        phi = rg.rand_p1_map(rng)
        if not xi_pullback_check(phi, rg.rand_nontrivial_tauform(rng, phi.target)):
            return False
    return True


def c10_normalization() -> bool:
    rng = rg.seeded(110)
    done = 0
    while done < 200:
        a = rg.rand_mpoly(rng, ("x",), deg=3)
        b = rg.rand_mpoly(rng, ("x",), deg=3)
        if a.is_zero() and b.is_zero():
            continue
        common = rg.rand_nonzero_mpoly(rng, ("x",), deg=2)
        a, b = a * common, b * common
        s = primitive_section(a, b)
        if s.content * s.a != a or s.content * s.b != b:
            return False
        # coprimality by the Euclidean algorithm in Q(t)[x]
        if len(_ugcd_euclid(upoly_from_mpoly(s.a), upoly_from_mpoly(s.b))) > 1:
            return False
        done += 1
    return True


def c11_global_dimension() -> bool:
    P = PlaneCurve(y)
    E = PlaneCurve(y * y - x ** 3 - 1)
    return len(global_tau_basis_constant_case(P, 0)) == 0 + 1 and len(global_tau_basis_constant_case(E, 1)) == 1 + 1


def c12_cli_determinism() -> bool:
    text = (GOLDEN / "tour.tf").read_text()
    expected = (GOLDEN / "tour.out").read_bytes()
    for _ in range(2):
        out = io.StringIO()
        if execute(text, out) != 0 or out.getvalue().encode() != expected:
            return False
    rng = rg.seeded(112)
    return all(round_trip(*random_declaration(rng)) for _ in range(100))


CRITERIA = [
    (1, "epsilon-derivation suite", c1_derivation),
    (2, "cone-slice suite", c2_cone_slices),
    (3, "constants collapse", c3_constants_collapse),
    (4, "Leibniz and chain-rule suite", c4_leibniz_chain),
    (5, "exact-sequence suite", c5_exact_sequence),
    (6, "uniqueness suite", c6_uniqueness),
    (7, "equivalence suite", c7_equivalence),
    (8, "pullback suite", c8_pullback),
    (9, "Xi suite", c9_xi),
    (10, "normalization suite", c10_normalization),
    (11, "global-dimension spot check", c11_global_dimension),
    (12, "CLI determinism", c12_cli_determinism),
]


def evaluate(fn):
    start = time.perf_counter()
    ok = bool(fn())
    elapsed = time.perf_counter() - start
    return ok and elapsed < LIMIT, elapsed


def line(num: int, name: str, ok: bool, elapsed: float) -> str:
    return f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d}: {name} ({elapsed:.1f} s)"


@pytest.mark.parametrize("num,name,fn", CRITERIA, ids=[f"c{n}" for n, _, _ in CRITERIA])
def test_criterion(num, name, fn, capsys):
    ok, elapsed = evaluate(fn)
    with capsys.disabled():
        print("\n" + line(num, name, ok, elapsed))
    assert ok, f"criterion {num} failed or exceeded {LIMIT} s ({elapsed:.1f} s)"


if __name__ == "__main__":
    failures = 0
    for num, name, fn in CRITERIA:
        ok, elapsed = evaluate(fn)
        failures += not ok
        print(line(num, name, ok, elapsed), flush=True)
    sys.exit(1 if failures else 0)
