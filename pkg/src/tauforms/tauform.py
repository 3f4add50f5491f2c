"""Rational tau-forms on plane curves, in the u-chart.

On tau C the fiber over a point satisfies p_x*u + p_y*v + p^delta = 0.
Eliminating v, every rational tau-form becomes u |-> A*u + B with A, B in
K(C); the pair (A, B) is the stored representation.  ``iota(g) = (0, g)``,
``Lambda(A, B) = A dx``, and the equivalence relations, null sets and
pullbacks are all read off these two slots.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .curvefield import CurveError, CurveFn, PlaneCurve, fn_delta_data
from .diffbase import BaseElem, MPoly
from . import ufd
from .points import CurvePoint, eval_mpoly, valuation


class TrivialFormError(ValueError):
    """An operation defined only for non-trivial tau-forms got a trivial one."""


class MorphismError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TauForm:
    """omega(a, (u, v)) = A(a)*u + B(a) on the fiber of tau C over a."""

    curve: PlaneCurve
    A: CurveFn
    B: CurveFn

    def __post_init__(self):
        if self.A.curve != self.curve or self.B.curve != self.curve:
            raise CurveError("tau-form coefficients live on a different curve")

    def is_trivial(self) -> bool:
        return self.A.is_zero()

    def __add__(self, other) -> "TauForm":
        if isinstance(other, TauForm):
            _same_curve(self, other)
            return TauForm(self.curve, self.A + other.A, self.B + other.B)
        # w + g means w + iota(g)
        return TauForm(self.curve, self.A, self.B + other)

    __radd__ = __add__

    def __neg__(self) -> "TauForm":
        return TauForm(self.curve, -self.A, -self.B)

    def __sub__(self, other) -> "TauForm":
        return self + (-other)

    def __rsub__(self, other) -> "TauForm":
        return (-self) + other

    def __mul__(self, f) -> "TauForm":
        if isinstance(f, TauForm):
            raise TypeError("tau-forms cannot be multiplied together")
        return TauForm(self.curve, self.A * f, self.B * f)

    __rmul__ = __mul__

    def __truediv__(self, f) -> "TauForm":
        if isinstance(f, TauForm):
            raise TypeError("tau-forms cannot be divided by tau-forms")
        return self * (self.curve.one / f)

    def __eq__(self, other) -> bool:
        return isinstance(other, TauForm) and self.curve == other.curve and self.A == other.A and self.B == other.B

    def __hash__(self) -> int:
        return hash((self.A, self.B))

    def __call__(self, u) -> CurveFn:
        """Value on the fiber point with u-coordinate ``u`` (a function on C)."""
        return self.A * u + self.B

    def __str__(self) -> str:
        return f"({self.A}, {self.B})"


@dataclass(frozen=True, eq=False)
class OneForm:
    """omega = coeff * dx."""

    curve: PlaneCurve
    coeff: CurveFn

    def is_zero(self) -> bool:
        return self.coeff.is_zero()

    def __eq__(self, other) -> bool:
        return isinstance(other, OneForm) and self.curve == other.curve and self.coeff == other.coeff

    def __hash__(self) -> int:
        return hash(self.coeff)

    def __mul__(self, f) -> "OneForm":
        return OneForm(self.curve, self.coeff * f)

    __rmul__ = __mul__

    def __str__(self) -> str:
        c = str(self.coeff)
        if c == "0":
            return "0"
        if c == "1":
            return "dx"
        if any(ch in c for ch in "+-/ ") and not c.lstrip("-").isalnum():
            return f"({c})*dx"
        return f"{c}*dx"


def _same_curve(*forms) -> PlaneCurve:
    c = forms[0].curve
    for w in forms[1:]:
        if w.curve != c:
            raise CurveError("tau-forms live on different curves")
    return c


def _require_nontrivial(*forms: TauForm) -> None:
    for w in forms:
        if w.is_trivial():
            raise TrivialFormError(f"tau-form {w} is trivial (A = 0)")


# ---------------------------------------------------------------------------
# tau, iota, Lambda
# ---------------------------------------------------------------------------


def tau_of(f, curve: PlaneCurve | None = None) -> TauForm:
    """tau f: A = f_x - f_y p_x/p_y, B = f^delta - f_y p^delta/p_y."""
    fx, fy, fd = fn_delta_data(f, curve)
    C = fx.curve
    return TauForm(C, fx - fy * C.px_over_py, fd - fy * C.pdelta_over_py)


def iota(g: CurveFn) -> TauForm:
    """The trivial form g * tau(t): constant value g on every fiber."""
    return TauForm(g.curve, g.curve.zero, g)


def lambda_map(w: TauForm) -> OneForm:
    """The fiberwise linear part of ``w``."""
    return OneForm(w.curve, w.A)


def differential(f: CurveFn) -> OneForm:
    """df = (f_x + f_y dy/dx) dx with dy/dx = -p_x/p_y."""
    fx, fy, _ = fn_delta_data(f)
    return OneForm(f.curve, fx - fy * f.curve.px_over_py)


def lambda_preimage(w: OneForm) -> TauForm:
    """A tau-form with the given linear part (Lambda is onto)."""
    return TauForm(w.curve, w.coeff, w.curve.zero)


def decompose(w1: TauForm, w0: TauForm) -> Tuple[CurveFn, CurveFn]:
    """The unique (f, g) with w1 = f*w0 + iota(g), for non-trivial w0."""
    _same_curve(w1, w0)
    if w0.is_trivial():
        raise TrivialFormError("decomposition base must be non-trivial")
    f = w1.A / w0.A
    return f, w1.B - f * w0.B


def recompose(f: CurveFn, g: CurveFn, w0: TauForm) -> TauForm:
    return w0 * f + iota(g)


# ---------------------------------------------------------------------------
# equivalence relations
# ---------------------------------------------------------------------------


def sim_equivalent(w1: TauForm, w2: TauForm) -> bool:
    """w1 ~ w2: w1 = f*w2 for some rational f."""
    _same_curve(w1, w2)
    _require_nontrivial(w1, w2)
    return w1.A * w2.B == w2.A * w1.B


def canonical_ratio(w: TauForm) -> CurveFn:
    """B/A, a complete invariant of the ~-class of a non-trivial form."""
    _require_nontrivial(w)
    return w.B / w.A


def parallel(w1: TauForm, w2: TauForm) -> bool:
    """w2 = w1 + iota(g) for some g; equivalently equal Lambda-images."""
    _same_curve(w1, w2)
    return w1.A == w2.A


def sim_class_meets_parallel_class(w1: TauForm, w2: TauForm) -> TauForm:
    """The unique member of w1's ~-class that is parallel to w2."""
    _require_nontrivial(w1, w2)
    return w1 * (w2.A / w1.A)


# ---------------------------------------------------------------------------
# null sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NullSection:
    """The rational section a |-> (a, u(a), v(a)) of tau C on which w vanishes."""

    u: CurveFn
    v: CurveFn

    def __str__(self) -> str:
        return f"u = {self.u}, v = {self.v}"


def null_set(w: TauForm) -> NullSection:
    _require_nontrivial(w)
    C = w.curve
    u = -w.B / w.A
    v = -(C.px_over_py * u + C.pdelta_over_py)
    return NullSection(u, v)


# ---------------------------------------------------------------------------
# zeros and poles
# ---------------------------------------------------------------------------

REGULAR, ZERO_POINT, POLE = "regular", "zero", "pole"


def chart_at(w: TauForm, pt: CurvePoint) -> Tuple[CurveFn, CurveFn]:
    """Fiber coefficients in a chart valid at ``pt``.

    The u-chart needs p_y(pt) != 0; otherwise u is eliminated instead and
    the form reads A' v + B' with A' = -A p_y/p_x, B' = B - A p^delta/p_x.
    """
    C = w.curve
    F = pt.field
    vals = {"x": pt.x, "y": pt.y}
    if eval_mpoly(C.p.partial("y"), vals, F.one):
        return w.A, w.B
    return -w.A * C.py / C.px, w.B - w.A * C.pdelta / C.px


def classify_point(w: TauForm, pt: CurvePoint) -> str:
    """'pole' if the fiber map is undefined at pt, 'zero' if its linear part vanishes there."""
    if pt.curve != w.curve:
        raise CurveError("point lies on a different curve")
    lin, const = chart_at(w, pt)
    vl = valuation(lin, pt)
    vc = valuation(const, pt)
    if (vl is not None and vl < 0) or (vc is not None and vc < 0):
        return POLE
    if vl is None or vl > 0:
        return ZERO_POINT
    return REGULAR


# ---------------------------------------------------------------------------
# morphisms and pullback
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CurveMorphism:
    """Rational map (x, y) |-> (r, s) from ``source`` into ``target``."""

    source: PlaneCurve
    target: PlaneCurve
    r: CurveFn
    s: CurveFn

    def __post_init__(self):
        if self.r.curve != self.source or self.s.curve != self.source:
            raise MorphismError("morphism components must be functions on the source curve")
        if not _evaluate_poly(self.target.p, self.r, self.s).is_zero():
            raise MorphismError(f"components do not satisfy the target equation {self.target.p} = 0")
        # the u-chart of the target needs a non-constant x-component
        if self.r.is_constant():
            raise MorphismError("x-component is constant, so the morphism is not dominant")

    def pull(self, f: CurveFn) -> CurveFn:
        """f o phi."""
        if f.curve != self.target:
            raise CurveError("function does not live on the morphism's target")
        return f.substitute(self.r, self.s)

    def compose(self, before: "CurveMorphism") -> "CurveMorphism":
        """self o before."""
        if before.target != self.source:
            raise MorphismError("morphisms are not composable")
        return CurveMorphism(before.source, self.target, before.pull(self.r), before.pull(self.s))

    def is_dominant(self) -> bool:
        return not self.r.is_constant()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CurveMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.r == other.r
            and self.s == other.s
        )

    def __hash__(self) -> int:
        return hash((self.r, self.s))

    def __str__(self) -> str:
        return f"({self.r}, {self.s})"


def identity_morphism(C: PlaneCurve) -> CurveMorphism:
    return CurveMorphism(C, C, C.x, C.y)


def _evaluate_poly(p: MPoly, r: CurveFn, s: CurveFn) -> CurveFn:
    C = r.curve
    out = C.zero
    p = p.with_variables(("x", "y"))
    for (ex, ey), c in p.terms.items():
        out = out + (r ** ex) * (s ** ey) * c
    return out


def pullback(w: TauForm, phi: CurveMorphism) -> TauForm:
    """phi^{tau*} w(a) = w_{phi(a)}(phi^(1)(a)).

    The target u-coordinate of phi^(1)(a, u) is tau(r)(a, u); substituting it
    into A*u + B of the target form gives the source chart pair.
    """
    if w.curve != phi.target:
        raise CurveError("tau-form does not live on the morphism's target")
    if not phi.is_dominant():
        raise MorphismError("pullback requires a dominant morphism")
    A2 = phi.pull(w.A)
    B2 = phi.pull(w.B)
    tr = tau_of(phi.r)
    return TauForm(phi.source, A2 * tr.A, A2 * tr.B + B2)


def oneform_pullback(w: OneForm, phi: CurveMorphism) -> OneForm:
    """phi^* (a dx) = a(phi) * dr."""
    return OneForm(phi.source, phi.pull(w.coeff) * differential(phi.r).coeff)


# ---------------------------------------------------------------------------
# gcd normalization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimitiveSection:
    content: MPoly
    a: MPoly
    b: MPoly

    def __str__(self) -> str:
        return f"content = {self.content}, primitive = ({self.a}, {self.b})"


def primitive_section(a: MPoly, b: MPoly) -> PrimitiveSection:
    """Split (a, b) = content * (a', b') with gcd(a', b') = 1.

    ``content`` generates the largest free rank-one submodule containing
    a*m + b*n; the primitive pair is normalized to coefficients in Z[t] with no
    common Z[t] factor and a positive leading coefficient.
    """
    if a.is_zero() and b.is_zero():
        raise ValueError("primitive_section needs (a, b) != (0, 0)")
    a, b = a._unify(b)
    g = ufd.gcd_mpoly(a, b)
    a1, b1 = ufd.divexact(a, g), ufd.divexact(b, g)
    c, (a2, b2) = ufd.primitive_pair([a1, b1])
    return PrimitiveSection((g * c).with_variables(a.variables), a2, b2)


# ---------------------------------------------------------------------------
# global tau-forms in the constant-coefficient case
# ---------------------------------------------------------------------------


class UnsupportedCurveError(ValueError):
    pass


def _weierstrass_coefficients(C: PlaneCurve):
    """(a, b) when p = +-(y^2 - x^3 - a x - b) with rational a, b."""
    p = C.p.with_variables(("x", "y"))
    lead = p.terms.get((0, 2))
    if lead is None:
        return None
    p = p.scale(lead.inverse())
    allowed = {(0, 2), (3, 0), (1, 0), (0, 0)}
    if set(p.terms) - allowed:
        return None
    if p.terms.get((3, 0)) != BaseElem.coerce(-1):
        return None
    a = -p.terms.get((1, 0), BaseElem.coerce(0))
    b = -p.terms.get((0, 0), BaseElem.coerce(0))
    return a, b


def global_tau_basis_constant_case(C: PlaneCurve, genus: int) -> List[TauForm]:
    """K-basis of global tau-forms for P^1 (p = y) and constant Weierstrass cubics."""
    if not C.is_constant_coefficient():
        raise UnsupportedCurveError(f"curve {C.p} has a non-constant coefficient")
    if C.p == MPoly.var("y"):
        if genus != 0:
            raise UnsupportedCurveError("the affine line chart has genus 0")
        return [iota(C.one)]
    ab = _weierstrass_coefficients(C)
    if ab is None:
        raise UnsupportedCurveError(f"unsupported curve shape {C.p}; expected y or y^2 - x^3 - a*x - b")
    a, b = ab
    disc = BaseElem.coerce(4) * a ** 3 + BaseElem.coerce(27) * b ** 2
    if disc.is_zero():
        raise UnsupportedCurveError("Weierstrass cubic is singular (zero discriminant)")
    if genus != 1:
        raise UnsupportedCurveError("a smooth plane cubic has genus 1")
    return [iota(C.one), TauForm(C, C.one / C.y, C.zero)]
