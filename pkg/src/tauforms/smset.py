"""Defining differential systems of the sets Xi(C, w).

Xi(C, w) = {a in C : w(a) delta(a) = 0} together with finitely many poles.
In the u-chart, w(a) delta(a) = A(a) x' + B(a), so the system is p = 0 plus
one equation affine in x', with the denominators of A and B cleared.  The
prolongation relation p_x x' + p_y y' + p^delta = 0 is what delta does to
p = 0; it is available from ``prolongation_relation`` but not listed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .curvefield import CurveFn, PlaneCurve
from .diffbase import MPoly, format_mpoly
from .points import CurvePoint
from .prolong import AffineEquation, format_equation
from .tauform import (
    POLE,
    CurveMorphism,
    TauForm,
    _require_nontrivial,
    classify_point,
    primitive_section,
    pullback,
    sim_equivalent,
    tau_of,
)

XP, YP = "x'", "y'"


@dataclass(frozen=True)
class XiEquation:
    """a(x, y) x' + b(x, y) = 0 with polynomial a, b."""

    a: MPoly
    b: MPoly

    def as_mpoly(self) -> MPoly:
        return self.a * MPoly.var(XP) + self.b

    def __str__(self) -> str:
        return format_equation(AffineEquation((self.a,), self.b), (XP,))


@dataclass(frozen=True)
class DifferentialSystem:
    curve: PlaneCurve
    algebraic: Tuple[MPoly, ...]
    differential: Tuple[XiEquation, ...]
    poles: Tuple[CurvePoint, ...] = field(default=())

    def prolongation_relation(self) -> MPoly:
        p = self.curve.p
        return p.partial("x") * MPoly.var(XP) + p.partial("y") * MPoly.var(YP) + p.coeff_delta()

    def lines(self) -> List[str]:
        return [f"{format_mpoly(g)} = 0" for g in self.algebraic] + [str(e) for e in self.differential]

    def __str__(self) -> str:
        return "{" + ", ".join(self.lines()) + "}"

    def satisfied_by(self, x, y, xp, yp=0) -> bool:
        """Symbolic substitution of a point and its derivative values."""
        vals = {"x": x, "y": y, XP: xp, YP: yp}
        eqs = list(self.algebraic) + [e.as_mpoly() for e in self.differential]
        return all(e.evaluate(_restrict(vals, e)).is_zero() for e in eqs)


def _restrict(vals, e: MPoly):
    return {k: v for k, v in vals.items() if k in e.variables}


def clear_pair(A: CurveFn, B: CurveFn) -> XiEquation:
    """Polynomial a, b with a/b = A/B, normalized to a primitive pair."""
    na, da = A.as_fraction()
    nb, db = B.as_fraction()
    # A x' + B = (na db x' + nb da) / (da db)
    a = na * db
    b = nb * da
    sec = primitive_section(a, b)
    return XiEquation(sec.a.with_variables(("x", "y")), sec.b.with_variables(("x", "y")))


def xi_system(w: TauForm, points: Sequence[CurvePoint] = ()) -> DifferentialSystem:
    _require_nontrivial(w)
    poles = tuple(pt for pt in points if classify_point(w, pt) == POLE)
    return DifferentialSystem(w.curve, (w.curve.p,), (clear_pair(w.A, w.B),), poles)


def equation_coefficients(eq: XiEquation, curve: PlaneCurve) -> Tuple[CurveFn, CurveFn]:
    return curve.fn(eq.a), curve.fn(eq.b)


def proportional(e1: Tuple[CurveFn, CurveFn], e2: Tuple[CurveFn, CurveFn]) -> bool:
    """a1 x' + b1 and a2 x' + b2 agree up to a nonzero factor in K(C)."""
    (a1, b1), (a2, b2) = e1, e2
    if (a1.is_zero() and b1.is_zero()) or (a2.is_zero() and b2.is_zero()):
        return False
    return (a1 * b2 - a2 * b1).is_zero()


def substitute_equation(eq: XiEquation, phi: CurveMorphism) -> Tuple[CurveFn, CurveFn]:
    """Xi-equation of the target with x -> r, y -> s, x' -> delta(r(a)).

    delta(r(a)) = r_x x' + r_y y' + r^delta with y' eliminated through the
    prolongation relation of the source, i.e. tau(r) evaluated at x'.
    """
    a = _compose(eq.a, phi)
    b = _compose(eq.b, phi)
    tr = tau_of(phi.r)
    return a * tr.A, a * tr.B + b


def _compose(q: MPoly, phi: CurveMorphism) -> CurveFn:
    C1 = phi.source
    out = C1.zero
    q = q.with_variables(("x", "y"))
    for (i, j), c in q.terms.items():
        out = out + (phi.r ** i) * (phi.s ** j) * c
    return out


def xi_pullback_check(phi: CurveMorphism, w2: TauForm, w1: TauForm | None = None) -> bool:
    """Does the Xi-equation of w1 (default: pullback of w2) match phi^{-1} Xi(C2, w2)?"""
    _require_nontrivial(w2)
    if w1 is None:
        w1 = pullback(w2, phi)
    _require_nontrivial(w1)
    pulled = equation_coefficients(xi_system(w1).differential[0], phi.source)
    subst = substitute_equation(xi_system(w2).differential[0], phi)
    return proportional(pulled, subst)


def xi_overlap_implies_equiv(w1: TauForm, w2: TauForm) -> bool:
    """Equal Xi-constraints; coincides with ~-equivalence."""
    _require_nontrivial(w1, w2)
    e1 = equation_coefficients(xi_system(w1).differential[0], w1.curve)
    e2 = equation_coefficients(xi_system(w2).differential[0], w2.curve)
    out = proportional(e1, e2)
    if out != sim_equivalent(w1, w2):
        raise AssertionError("Xi-constraint comparison disagrees with the ~ decision")
    return out
