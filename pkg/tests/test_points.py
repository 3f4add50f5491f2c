from __future__ import annotations

import pytest

from tauforms.curvefield import CurveError, PlaneCurve
from tauforms.diffbase import BaseElem, MPoly, poly_vars
from tauforms.points import ExtensionField, FieldError, make_point, valuation

T = BaseElem.t()
x, y = poly_vars("x", "y")
z = MPoly.var("z")
E = PlaneCurve(y * y - x ** 3 - 1)
P1 = PlaneCurve(y)


def test_extension_field_arithmetic():
    F = ExtensionField(z * z - T)
    r = F.elem(z)
    assert r * r == F.elem(MPoly.const(T))
    assert r * r.inverse() == F.one
    with pytest.raises(FieldError):
        ExtensionField(z * z - T * T)
    with pytest.raises(ZeroDivisionError):
        F.zero.inverse()


def test_point_must_lie_on_curve():
    make_point(E, -1, 0)
    with pytest.raises(CurveError):
        make_point(E, 0, 0)


def test_valuations_at_two_torsion_point():
    pt = make_point(E, -1, 0)
    assert valuation(E.x + 1, pt) == 2
    assert valuation(E.y, pt) == 1
    assert valuation(E.one / E.y, pt) == -1
    assert valuation(E.x, pt) == 0


def test_valuation_over_extension():
    F = ExtensionField(z ** 3 + 1 - T * T)
    pt = make_point(E, z, T, F)
    assert valuation(E.x, pt) == 0
    assert valuation(E.y - E.const(T), pt) == 1


def test_valuation_on_line():
    pt = make_point(P1, 0, 0)
    assert valuation(P1.x ** 3, pt) == 3
    assert valuation(P1.one / P1.x, pt) == -1
    assert valuation(P1.zero, pt) is None
