from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tauforms import randgen as rg
from tauforms.diffbase import BaseElem, MPoly, poly_vars
from tauforms.prolong import (
    EmbeddedVariety,
    VarietyError,
    fiber_name,
    lifting_map,
    prolongation,
    prolongation_cone,
    tangent_variety,
    tau_diff_ambient,
    total_derivative,
)

T = BaseElem.t()
x, y = poly_vars("x", "y")


def test_tangent_examples():
    assert str(tangent_variety(EmbeddedVariety([x * x + y * y - 1]))) == "2*x*u + 2*y*v = 0"
    assert str(tangent_variety(EmbeddedVariety([y - x * T]))) == "-t*u + v = 0"
    with pytest.raises(VarietyError):
        EmbeddedVariety([MPoly.const(0)])
    with pytest.raises(VarietyError):
        EmbeddedVariety([])


def test_prolongation_examples():
    V = EmbeddedVariety([y - x * T])
    assert str(prolongation(V)) == "-t*u + v - x = 0"
    S = EmbeddedVariety([x * x + y * y - 1])
    assert prolongation(S) == tangent_variety(S)
    assert str(prolongation(EmbeddedVariety([x - T]))) == "u - 1 = 0"


def test_cone_example_and_slices():
    V = EmbeddedVariety([y - x * T])
    cone = prolongation_cone(V)
    assert str(cone) == "-t*u + v - x*u' = 0"
    assert cone.slice("u'", 0) == tangent_variety(V)
    assert cone.slice("u'", 1) == prolongation(V)


def test_lifting_examples():
    assert str(lifting_map([x * T], ["x"])) == "(x, u) |-> (t*x, t*u + x)"
    assert str(lifting_map([x * x], ["x"])) == "(x, u) |-> (x^2, 2*x*u)"
    assert str(lifting_map([x, y], ["x", "y"])) == "(x, y, u, v) |-> (x, y, u, v)"


def test_tau_diff_ambient_examples():
    assert str(tau_diff_ambient(x, ["x"])) == "u"
    assert str(tau_diff_ambient(MPoly.const(T), ["x"])) == "1"
    assert str(tau_diff_ambient(x * x * T, ["x"])) == "2*t*x*u + x^2"


@given(st.integers(0, 10 ** 6))
@settings(max_examples=10, deadline=None)
def test_cone_slices_random(seed):
    rng = rg.seeded(seed)
    V = rg.rand_variety(rng, n=rng.randint(1, 3), ngens=rng.randint(1, 2))
    cone = prolongation_cone(V)
    assert cone.slice("u'", 0) == tangent_variety(V)
    assert cone.slice("u'", 1) == prolongation(V)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=10, deadline=None)
def test_constants_collapse_random(seed):
    rng = rg.seeded(seed)
    V = rg.rand_variety(rng, n=rng.randint(1, 3), ngens=rng.randint(1, 2), constant=True)
    assert prolongation(V) == tangent_variety(V)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=30, deadline=None)
def test_lambda_of_tau_diff_is_differential(seed):
    rng = rg.seeded(seed)
    names = ("x1", "x2", "x3")
    f = rg.rand_mpoly(rng, names, deg=3)
    m = tau_diff_ambient(f, names)
    assert m.lam() == tuple(f.with_variables(names).partial(v) for v in names)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=30, deadline=None)
def test_section_fact(seed):
    """(tau phi)(delta v) = delta(phi(v)) as polynomial identities."""
    rng = rg.seeded(seed)
    names = ("x1", "x2")
    phi = rg.rand_mpoly(rng, names, deg=3)
    fiber = {v: MPoly.var(fiber_name(v)) for v in names}
    assert tau_diff_ambient(phi, names).as_mpoly() == total_derivative(phi.with_variables(names), fiber)


def _rand_point_value(rng):
    return rg.rand_base(rng, deg=1, bound=4)


def test_lifting_functoriality_on_line():
    rng = rg.seeded(7)
    for _ in range(100):
        phi = rg.rand_mpoly(rng, ("x",), deg=2)
        psi = rg.rand_mpoly(rng, ("x",), deg=2)
        comp = psi.with_variables(("x",)).subs({"x": phi.with_variables(("x",))})
        a, u = _rand_point_value(rng), _rand_point_value(rng)
        (b,), (w,) = lifting_map([phi], ["x"])({"x": a}, [u])
        lhs = lifting_map([comp], ["x"])({"x": a}, [u])
        rhs = lifting_map([psi], ["x"])({"x": b}, [w])
        assert lhs == rhs
