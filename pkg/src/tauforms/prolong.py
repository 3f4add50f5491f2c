"""Tangent variety, first prolongation and prolongation cone of embedded varieties.

Equations of all three are affine-linear in the fiber coordinates, so they are
stored structurally: one coefficient polynomial (in the base coordinates) per
fiber coordinate plus a constant term.  The u' = 0 and u' = 1 slices of the
cone are then plain coefficient manipulations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Mapping, Sequence, Tuple

from .diffbase import ZERO, BaseElem, MPoly, Scalar, format_mpoly, var_sort_key

CONE_VAR = "u'"
_FIBER_NAMES = {"x": "u", "y": "v", "z": "w"}


class VarietyError(ValueError):
    pass


def fiber_name(base: str) -> str:
    """Fiber coordinate paired with a base coordinate (x -> u, x3 -> u3)."""
    if base in _FIBER_NAMES:
        return _FIBER_NAMES[base]
    if base.startswith("x") and base[1:].isdigit():
        return "u" + base[1:]
    return "d" + base


@dataclass(frozen=True)
class EmbeddedVariety:
    """V in K^n cut out by generators of I(V)."""

    variables: Tuple[str, ...]
    generators: Tuple[MPoly, ...]

    def __init__(self, generators: Sequence[MPoly], variables: Sequence[str] | None = None):
        gens = tuple(generators)
        if not gens:
            raise VarietyError("an embedded variety needs at least one generator")
        if any(g.is_zero() for g in gens):
            raise VarietyError("the zero polynomial is not an admissible generator")
        if variables is None:
            used = set()
            for g in gens:
                used.update(g.used_variables())
            variables = tuple(sorted(used, key=var_sort_key))
        variables = tuple(variables)
        for g in gens:
            stray = set(g.used_variables()) - set(variables)
            if stray:
                raise VarietyError(f"generator {g} uses variables {sorted(stray)} outside {variables}")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "generators", tuple(g.with_variables(variables) for g in gens))

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def fiber_variables(self) -> Tuple[str, ...]:
        return tuple(fiber_name(v) for v in self.variables)


@dataclass(frozen=True)
class AffineEquation:
    """sum_i linear[i] * fiber_vars[i] + constant = 0."""

    linear: Tuple[MPoly, ...]
    constant: MPoly

    def as_mpoly(self, fiber_vars: Sequence[str]) -> MPoly:
        out = self.constant
        for c, v in zip(self.linear, fiber_vars):
            out = out + c * MPoly.var(v)
        return out


@dataclass(frozen=True)
class LinearSystem:
    base_vars: Tuple[str, ...]
    fiber_vars: Tuple[str, ...]
    equations: Tuple[AffineEquation, ...]

    def slice(self, var: str, value: Scalar) -> "LinearSystem":
        """Substitute a constant for one fiber variable."""
        i = self.fiber_vars.index(var)
        eqs = []
        for eq in self.equations:
            lin = eq.linear[:i] + eq.linear[i + 1:]
            eqs.append(AffineEquation(lin, eq.constant + eq.linear[i].scale(BaseElem.coerce(value))))
        return LinearSystem(self.base_vars, self.fiber_vars[:i] + self.fiber_vars[i + 1:], tuple(eqs))

    def as_mpolys(self) -> Tuple[MPoly, ...]:
        return tuple(eq.as_mpoly(self.fiber_vars) for eq in self.equations)

    def lines(self) -> Tuple[str, ...]:
        return tuple(format_equation(eq, self.fiber_vars) for eq in self.equations)

    def __str__(self) -> str:
        return "\n".join(self.lines())


def _coeff_text(c: MPoly, mono: str) -> Tuple[bool, str]:
    s = format_mpoly(c)
    if len(c.terms) == 1 and not (mono and " " in s):
        neg = s.startswith("-")
        body = s[1:] if neg else s
        if not mono:
            return neg, body
        if body == "1":
            return neg, mono
        return neg, f"{body}*{mono}"
    if not mono:
        return False, s
    return False, f"({s})*{mono}"


def format_equation(eq: AffineEquation, fiber_vars: Sequence[str]) -> str:
    """Fiber terms first (in fiber order), then the constant term; '= 0'."""
    parts = []
    for c, v in zip(eq.linear, fiber_vars):
        if not c.is_zero():
            parts.append(_coeff_text(c, v))
    if not eq.constant.is_zero():
        if len(eq.constant.terms) == 1:
            parts.append(_coeff_text(eq.constant, ""))
        else:
            for e, coeff in eq.constant.sorted_terms():
                parts.append(_coeff_text(MPoly(eq.constant.variables, {e: coeff}, _clean=True), ""))
    if not parts:
        return "0 = 0"
    text = []
    for k, (neg, body) in enumerate(parts):
        if k == 0:
            text.append(f"-{body}" if neg else body)
        else:
            text.append(f" - {body}" if neg else f" + {body}")
    return "".join(text) + " = 0"


def _jacobian_rows(V: EmbeddedVariety):
    for g in V.generators:
        yield g, tuple(g.partial(x) for x in V.variables)


def tangent_variety(V: EmbeddedVariety) -> LinearSystem:
    """sum_i dp_j/dx_i(a) * u_i = 0 for each generator p_j."""
    zero = MPoly.const(ZERO, V.variables)
    eqs = tuple(AffineEquation(row, zero) for _, row in _jacobian_rows(V))
    return LinearSystem(V.variables, V.fiber_variables, eqs)


def prolongation(V: EmbeddedVariety) -> LinearSystem:
    """sum_i dp_j/dx_i(a) * u_i + p_j^delta(a) = 0 for each generator p_j."""
    eqs = tuple(AffineEquation(row, g.coeff_delta()) for g, row in _jacobian_rows(V))
    return LinearSystem(V.variables, V.fiber_variables, eqs)


def prolongation_cone(V: EmbeddedVariety) -> LinearSystem:
    """sum_i dp_j/dx_i(a) * u_i + p_j^delta(a) * u' = 0."""
    zero = MPoly.const(ZERO, V.variables)
    eqs = tuple(AffineEquation(row + (g.coeff_delta(),), zero) for g, row in _jacobian_rows(V))
    return LinearSystem(V.variables, V.fiber_variables + (CONE_VAR,), eqs)


# ---------------------------------------------------------------------------
# affine fiber maps, lifting maps, tau-differentials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineFiberMap:
    """u |-> sum_i linear_part[i](a) * u_i + constant_part(a) on the fiber over a."""

    base_vars: Tuple[str, ...]
    linear_part: Tuple[MPoly, ...]
    constant_part: MPoly

    def lam(self) -> Tuple[MPoly, ...]:
        """The linear map underlying the affine fiber map."""
        return self.linear_part

    def __call__(self, point: Mapping[str, Scalar], fiber: Sequence[Scalar]) -> BaseElem:
        out = self.constant_part.evaluate(point)
        for c, u in zip(self.linear_part, fiber):
            out = out + c.evaluate(point) * BaseElem.coerce(u)
        return out

    def as_mpoly(self) -> MPoly:
        out = self.constant_part
        for c, v in zip(self.linear_part, self.base_vars):
            out = out + c * MPoly.var(fiber_name(v))
        return out

    def __str__(self) -> str:
        eq = format_equation(AffineEquation(self.linear_part, self.constant_part), [fiber_name(v) for v in self.base_vars])
        return eq[: -len(" = 0")]


@dataclass(frozen=True)
class LiftingMap:
    """phi^(1)(a, u) = (phi(a), dphi_a(u) + phi^delta(a)), one entry per output coordinate."""

    base_map: Tuple[MPoly, ...]
    fiber_maps: Tuple[AffineFiberMap, ...]

    def __call__(self, point: Mapping[str, Scalar], fiber: Sequence[Scalar]):
        img = tuple(c.evaluate(point) for c in self.base_map)
        return img, tuple(m(point, fiber) for m in self.fiber_maps)

    def __str__(self) -> str:
        if not self.fiber_maps:
            return "()"
        vs = self.fiber_maps[0].base_vars
        src = ", ".join(list(vs) + [fiber_name(v) for v in vs])
        tgt = ", ".join([format_mpoly(c) for c in self.base_map] + [str(m) for m in self.fiber_maps])
        return f"({src}) |-> ({tgt})"


Ambient = "EmbeddedVariety | Sequence[str]"


def ambient_variables(V) -> Tuple[str, ...]:
    """Coordinates of an embedded variety, or of affine space given by names."""
    if isinstance(V, EmbeddedVariety):
        return V.variables
    if isinstance(V, str):
        return (V,)
    return tuple(V)


def tau_diff_ambient(f: MPoly, V) -> AffineFiberMap:
    """tau f(a, u) = df_a(u) + f^delta(a)."""
    vs = ambient_variables(V)
    extra = set(f.used_variables()) - set(vs)
    if extra:
        raise VarietyError(f"{f} uses variables {sorted(extra)} outside {vs}")
    f = f.with_variables(vs)
    return AffineFiberMap(vs, tuple(f.partial(x) for x in vs), f.coeff_delta())


def lifting_map(phi: Sequence[MPoly], V) -> LiftingMap:
    vs = ambient_variables(V)
    comps = tuple(phi)
    fibers = tuple(tau_diff_ambient(c, vs) for c in comps)
    return LiftingMap(tuple(c.with_variables(vs) for c in comps), fibers)


def total_derivative(f: MPoly, fiber: Dict[str, MPoly]) -> MPoly:
    """delta(f(v)) for a point v whose derivative is the formal symbol ``fiber[x]``.

    Expands monomial by monomial with the product rule; used as an independent
    check of tau_diff_ambient.
    """
    out = MPoly.const(ZERO)
    for e, c in f.terms.items():
        factors = []
        for v, k in zip(f.variables, e):
            factors.extend([v] * k)
        base = MPoly.const(c.delta())
        for v in factors:
            base = base * MPoly.var(v)
        out = out + base
        for i in range(len(factors)):
            term = MPoly.const(c)
            for j, v in enumerate(factors):
                term = term * (fiber[v] if i == j else MPoly.var(v))
            out = out + term
    return out
