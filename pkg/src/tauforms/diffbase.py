"""Exact arithmetic over the differential field Q(t), with derivation d/dt.

Elements of Q(t) are stored as a pair of integer polynomials in t (tuples of
Python ints, constant term first).  The pair is kept in lowest terms over
Z[t] and the denominator has a positive leading coefficient, so structural
equality is field equality.

Multivariate polynomials over Q(t) (``MPoly``) store dense exponent vectors
against an ordered tuple of variable names.  The coefficient derivation
``coeff_delta`` (p -> p^delta) applies d/dt to every coefficient.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from flint import fmpz_poly

ZPoly = Tuple[int, ...]
Exponent = Tuple[int, ...]

_ZERO: ZPoly = ()
_ONE: ZPoly = (1,)


# ---------------------------------------------------------------------------
# Integer polynomials in t
# ---------------------------------------------------------------------------


def _ztrim(c: Sequence[int]) -> ZPoly:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _zadd(a: ZPoly, b: ZPoly) -> ZPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return _ztrim(out)


def _zneg(a: ZPoly) -> ZPoly:
    return tuple(-v for v in a)


def _zsub(a: ZPoly, b: ZPoly) -> ZPoly:
    return _zadd(a, _zneg(b))


def _to_flint(a: ZPoly) -> fmpz_poly:
    return fmpz_poly(list(a))


def _from_flint(a: fmpz_poly) -> ZPoly:
    return tuple(int(c) for c in a.coeffs())


def _zmul(a: ZPoly, b: ZPoly) -> ZPoly:
    if not a or not b:
        return _ZERO
    if len(a) == 1:
        s = a[0]
        return tuple(s * v for v in b)
    if len(b) == 1:
        s = b[0]
        return tuple(s * v for v in a)
    if len(a) * len(b) > 16:
        return _from_flint(_to_flint(a) * _to_flint(b))
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return tuple(out)


def _zscale(a: ZPoly, s: int) -> ZPoly:
    if s == 0:
        return _ZERO
    return tuple(s * v for v in a)


def _zcontent(a: ZPoly) -> int:
    g = 0
    for v in a:
        g = gcd(g, v)
        if g == 1:
            break
    return g


def _zdiv_int(a: ZPoly, s: int) -> ZPoly:
    return tuple(v // s for v in a)


def _zprimitive(a: ZPoly) -> ZPoly:
    if not a:
        return a
    c = _zcontent(a)
    if a[-1] < 0:
        c = -c
    return a if c == 1 else _zdiv_int(a, c)


def _zprem(a: ZPoly, b: ZPoly) -> ZPoly:
    """Pseudo-remainder of a by b (b nonzero)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        lr = r[-1]
        r = [v * lb for v in r]
        for i, v in enumerate(b):
            r[i + shift] -= lr * v
        r = list(_ztrim(r))
    return tuple(r)


def _zgcd(a: ZPoly, b: ZPoly) -> ZPoly:
    """Primitive gcd in Z[t] with positive leading coefficient."""
    if not a:
        return _zprimitive(b) if b else _ONE
    if not b:
        return _zprimitive(a)
    if len(a) == 1 or len(b) == 1:
        return _ONE
    return _zprimitive(_from_flint(_to_flint(a).gcd(_to_flint(b))))


def _zgcd_prs(a: ZPoly, b: ZPoly) -> ZPoly:
    """Primitive pseudo-remainder sequence version of ``_zgcd``."""
    if not a:
        return _zprimitive(b) if b else _ONE
    if not b:
        return _zprimitive(a)
    if len(a) == 1 or len(b) == 1:
        return _ONE
    a, b = _zprimitive(a), _zprimitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _zprem(a, b)
        a, b = b, (_zprimitive(r) if r else r)
    return _zprimitive(a)


def _zdivexact(a: ZPoly, b: ZPoly) -> ZPoly:
    """Exact quotient a / b in Z[t]; b must divide a."""
    if len(b) == 1:
        s = b[0]
        return tuple(v // s for v in a)
    if len(a) > 4:
        q, r = divmod(_to_flint(a), _to_flint(b))
        if r != 0:
            raise ArithmeticError("inexact polynomial division in Z[t]")
        return _from_flint(q)
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c, rem = divmod(r[k + db], lb)
        if rem:
            raise ArithmeticError("inexact polynomial division in Z[t]")
        q[k] = c
        if c:
            for i, v in enumerate(b):
                r[i + k] -= c * v
    if any(r):
        raise ArithmeticError("inexact polynomial division in Z[t]")
    return tuple(q)


def _zderiv(a: ZPoly) -> ZPoly:
    return tuple(i * a[i] for i in range(1, len(a)))


# ---------------------------------------------------------------------------
# BaseElem: elements of Q(t)
# ---------------------------------------------------------------------------


Scalar = Union[int, Fraction, "BaseElem"]


class BaseElem:
    """An element of Q(t) in lowest terms over Z[t]."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Iterable[int] = _ZERO, den: Iterable[int] = _ONE, *, _canonical: bool = False):
        num = _ztrim(tuple(num))
        den = _ztrim(tuple(den))
        if not _canonical:
            if not den:
                raise ZeroDivisionError("zero denominator in Q(t)")
            num, den = _normalize(num, den)
        self.num: ZPoly = num
        self.den: ZPoly = den
        self._hash = None

    # constructors -----------------------------------------------------
    @classmethod
    def coerce(cls, v: Scalar) -> "BaseElem":
        if isinstance(v, BaseElem):
            return v
        if isinstance(v, int):
            return cls((v,) if v else _ZERO, _ONE, _canonical=True)
        if isinstance(v, Fraction):
            if v.denominator == 1:
                return cls.coerce(v.numerator)
            return cls((v.numerator,), (v.denominator,), _canonical=True)
        raise TypeError(f"cannot coerce {type(v).__name__} to BaseElem")

    @classmethod
    def t(cls) -> "BaseElem":
        return cls((0, 1), _ONE, _canonical=True)

    # predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == _ONE and self.den == _ONE

    def is_rational(self) -> bool:
        """True when the element lies in the constant subfield Q."""
        return len(self.num) <= 1 and len(self.den) == 1

    def is_poly(self) -> bool:
        return self.den == _ONE

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational constant")
        return Fraction(self.num[0] if self.num else 0, self.den[0])

    # arithmetic -------------------------------------------------------
    def __add__(self, other: Scalar) -> "BaseElem":
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            if self.den == _ONE:
                return BaseElem(_zadd(self.num, o.num), _ONE, _canonical=True)
            return BaseElem(_zadd(self.num, o.num), self.den)
        return BaseElem(
            _zadd(_zmul(self.num, o.den), _zmul(o.num, self.den)), _zmul(self.den, o.den)
        )

    __radd__ = __add__

    def __neg__(self) -> "BaseElem":
        return BaseElem(_zneg(self.num), self.den, _canonical=True)

    def __sub__(self, other: Scalar) -> "BaseElem":
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Scalar) -> "BaseElem":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "BaseElem":
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return ZERO
        if self.den == _ONE and o.den == _ONE:
            return BaseElem(_zmul(self.num, o.num), _ONE, _canonical=True)
        return BaseElem(_zmul(self.num, o.num), _zmul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> "BaseElem":
        if not self.num:
            raise ZeroDivisionError("division by zero in Q(t)")
        num, den = self.den, self.num
        if den[-1] < 0:
            num, den = _zneg(num), _zneg(den)
        return BaseElem(num, den, _canonical=True)

    def __truediv__(self, other: Scalar) -> "BaseElem":
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Scalar) -> "BaseElem":
        return BaseElem.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "BaseElem":
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def delta(self) -> "BaseElem":
        """d/dt by the quotient rule."""
        if len(self.den) == 1:
            return BaseElem(_zderiv(self.num), self.den)
        return BaseElem(
            _zsub(_zmul(_zderiv(self.num), self.den), _zmul(self.num, _zderiv(self.den))),
            _zmul(self.den, self.den),
        )

    def evaluate(self, value: Fraction) -> Fraction:
        """Specialize t to a rational value."""
        d = _zeval(self.den, value)
        if d == 0:
            raise ZeroDivisionError(f"denominator of {self} vanishes at t={value}")
        return _zeval(self.num, value) / d

    # comparison -------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, BaseElem):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == BaseElem.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.num)

    def __repr__(self) -> str:
        return f"BaseElem({self})"

    def __str__(self) -> str:
        return format_base(self)


def _zeval(a: ZPoly, value: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * value + c
    return acc


def _normalize(num: ZPoly, den: ZPoly) -> Tuple[ZPoly, ZPoly]:
    if not num:
        return _ZERO, _ONE
    if len(den) > 1 and len(num) > 1:
        g = _zgcd(num, den)
        if g != _ONE:
            num = _zdivexact(num, g)
            den = _zdivexact(den, g)
    c = gcd(_zcontent(num), _zcontent(den))
    if den[-1] < 0:
        c = -c
    if c != 1:
        num = _zdiv_int(num, c)
        den = _zdiv_int(den, c)
    return num, den


def _coerce_or_none(v: object) -> "BaseElem | None":
    if isinstance(v, BaseElem):
        return v
    if isinstance(v, (int, Fraction)):
        return BaseElem.coerce(v)
    return None


ZERO = BaseElem(_ZERO, _ONE, _canonical=True)
ONE = BaseElem(_ONE, _ONE, _canonical=True)
T = BaseElem.t()


def base_delta(a: BaseElem) -> BaseElem:
    """Return d/dt of ``a``."""
    return BaseElem.coerce(a).delta()


# ---------------------------------------------------------------------------
# printing helpers
# ---------------------------------------------------------------------------


def _format_zpoly(a: ZPoly, var: str = "t") -> str:
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((c < 0, body))
    return _join_signed(parts)


def _join_signed(parts: Sequence[Tuple[bool, str]]) -> str:
    out = []
    for i, (neg, body) in enumerate(parts):
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def _nterms(a: ZPoly) -> int:
    return sum(1 for v in a if v)


def format_base(a: BaseElem) -> str:
    num = _format_zpoly(a.num)
    if a.den == _ONE:
        return num
    den = _format_zpoly(a.den)
    if _nterms(a.num) > 1:
        num = f"({num})"
    if _nterms(a.den) > 1 or (len(a.den) > 1 and a.den[-1] != 1):
        den = f"({den})"
    return f"{num}/{den}"


def _base_is_atomic(c: BaseElem) -> bool:
    """True when ``c`` prints without parentheses inside a product."""
    return c.den == _ONE and _nterms(c.num) == 1 or c.is_rational()


# ---------------------------------------------------------------------------
# MPoly
# ---------------------------------------------------------------------------

_IDX = re.compile(r"^([A-Za-z]+)(\d*)('*)$")
_FAMILY_RANK = {"x": 0, "y": 1, "z": 2, "u": 10, "v": 11, "w": 12}


def var_sort_key(name: str) -> tuple:
    """Canonical ordering of variable names.

    Base coordinates come first (x, y, z, then x1, x2, ...), fiber coordinates
    next (u, v, w, u1, ...), primed names after their unprimed stems, and
    anything else alphabetically at the end.
    """
    m = _IDX.match(name)
    if not m:
        return (99, name, 0, 0)
    stem, idx, primes = m.group(1), m.group(2), m.group(3)
    rank = _FAMILY_RANK.get(stem, 50)
    if name == "u'":
        return (20, "", 0, 0)
    return (rank + (30 if primes and rank < 10 else 0), stem if rank == 50 else "", int(idx) if idx else 0, len(primes))


def _merge_vars(a: Sequence[str], b: Sequence[str]) -> Tuple[str, ...]:
    if tuple(a) == tuple(b):
        return tuple(a)
    return tuple(sorted(set(a) | set(b), key=var_sort_key))


class MPoly:
    """Multivariate polynomial over Q(t) with dense exponent vectors."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, Scalar] | None = None, *, _clean: bool = False):
        self.variables: Tuple[str, ...] = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        n = len(self.variables)
        if _clean:
            self.terms: Dict[Exponent, BaseElem] = dict(terms or {})
        else:
            out: Dict[Exponent, BaseElem] = {}
            for e, c in (terms or {}).items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match variables {self.variables}")
                c = BaseElem.coerce(c)
                if c:
                    out[e] = out[e] + c if e in out else c
                    if not out[e]:
                        del out[e]
            self.terms = out
        self._hash = None

    # constructors -----------------------------------------------------
    @classmethod
    def const(cls, c: Scalar, variables: Sequence[str] = ()) -> "MPoly":
        c = BaseElem.coerce(c)
        n = len(variables)
        return cls(variables, {(0,) * n: c} if c else {}, _clean=True)

    @classmethod
    def var(cls, name: str, variables: Sequence[str] | None = None) -> "MPoly":
        vs = tuple(variables) if variables is not None else (name,)
        if name not in vs:
            vs = _merge_vars(vs, (name,))
        e = tuple(1 if v == name else 0 for v in vs)
        return cls(vs, {e: ONE}, _clean=True)

    # structure --------------------------------------------------------
    def with_variables(self, variables: Sequence[str]) -> "MPoly":
        """Re-express on a superset (or equal set) of variables."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        idx = {v: i for i, v in enumerate(variables)}
        for v, e in zip(self.variables, zip(*self.terms.keys()) if self.terms else ()):
            if v not in idx and any(e):
                raise ValueError(f"variable {v} is used and cannot be dropped")
        pos = [idx.get(v) for v in self.variables]
        n = len(variables)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for k, p in zip(e, pos):
                if k:
                    ne[p] = k
            out[tuple(ne)] = c
        return MPoly(variables, out, _clean=True)

    def used_variables(self) -> Tuple[str, ...]:
        used = [False] * len(self.variables)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def compact(self) -> "MPoly":
        """Drop registered variables that do not occur."""
        return self.with_variables(self.used_variables())

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> BaseElem:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        for c in self.terms.values():
            return c
        return ZERO

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.variables:
            return 0
        i = self.variables.index(var)
        return max(e[i] for e in self.terms)

    def coefficients(self) -> Iterable[BaseElem]:
        return self.terms.values()

    def _unify(self, other: "MPoly") -> Tuple["MPoly", "MPoly"]:
        if self.variables == other.variables:
            return self, other
        vs = _merge_vars(self.variables, other.variables)
        return self.with_variables(vs), other.with_variables(vs)

    # arithmetic -------------------------------------------------------
    def _lift(self, other: object) -> "MPoly | None":
        if isinstance(other, MPoly):
            return other
        c = _coerce_or_none(other)
        if c is None:
            return None
        return MPoly.const(c, self.variables)

    def __add__(self, other: object) -> "MPoly":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self._unify(o)
        out = dict(a.terms)
        for e, c in b.terms.items():
            if e in out:
                s = out[e] + c
                if s:
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return MPoly(a.variables, out, _clean=True)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly(self.variables, {e: -c for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other: object) -> "MPoly":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "MPoly":
        return (-self) + other

    def __mul__(self, other: object) -> "MPoly":
        if not isinstance(other, MPoly):
            c = _coerce_or_none(other)
            if c is None:
                return NotImplemented
            return self.scale(c)
        a, b = self._unify(other)
        out: Dict[Exponent, BaseElem] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                c = c1 * c2
                if e in out:
                    c = out[e] + c
                    if c:
                        out[e] = c
                    else:
                        del out[e]
                else:
                    out[e] = c
        return MPoly(a.variables, out, _clean=True)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "MPoly":
        c = BaseElem.coerce(c)
        if not c:
            return MPoly(self.variables, {}, _clean=True)
        if c.is_one():
            return self
        return MPoly(self.variables, {e: v * c for e, v in self.terms.items()}, _clean=True)

    def __truediv__(self, other: Scalar) -> "MPoly":
        c = _coerce_or_none(other)
        if c is None:
            if isinstance(other, MPoly) and other.is_constant():
                c = other.constant_value()
            else:
                return NotImplemented
        return self.scale(c.inverse())

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = MPoly.const(ONE, self.variables)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # calculus ---------------------------------------------------------
    def partial(self, var: str) -> "MPoly":
        if var not in self.variables:
            raise KeyError(f"unknown variable {var!r}; polynomial has {self.variables}")
        i = self.variables.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = c * k
        return MPoly(self.variables, out, _clean=True)

    def coeff_delta(self) -> "MPoly":
        out = {}
        for e, c in self.terms.items():
            d = c.delta()
            if d:
                out[e] = d
        return MPoly(self.variables, out, _clean=True)

    # substitution -----------------------------------------------------
    def subs(self, mapping: Mapping[str, object]) -> "MPoly":
        """Substitute polynomials (or scalars) for variables."""
        keep = [v for v in self.variables if v not in mapping]
        images = {}
        target_vars: Tuple[str, ...] = tuple(keep)
        for v, img in mapping.items():
            if v not in self.variables:
                continue
            if not isinstance(img, MPoly):
                img = MPoly.const(BaseElem.coerce(img))
            images[v] = img
            target_vars = _merge_vars(target_vars, img.variables)
        images = {v: p.with_variables(target_vars) for v, p in images.items()}
        out = MPoly(target_vars, {}, _clean=True)
        pos = {v: target_vars.index(v) for v in keep}
        cache: Dict[Tuple[str, int], MPoly] = {}
        n = len(target_vars)
        for e, c in self.terms.items():
            mono = [0] * n
            term = MPoly(target_vars, {}, _clean=True)
            factors = []
            for v, k in zip(self.variables, e):
                if not k:
                    continue
                if v in images:
                    key = (v, k)
                    if key not in cache:
                        cache[key] = images[v] ** k
                    factors.append(cache[key])
                else:
                    mono[pos[v]] += k
            term = MPoly(target_vars, {tuple(mono): c}, _clean=True)
            for f in factors:
                term = term * f
            out = out + term
        return out

    def evaluate(self, values: Mapping[str, Scalar]) -> BaseElem:
        """Evaluate at Q(t) values for every variable that occurs."""
        total = ZERO
        for e, c in self.terms.items():
            term = c
            for v, k in zip(self.variables, e):
                if k:
                    if v not in values:
                        raise KeyError(f"no value supplied for {v!r}")
                    term = term * BaseElem.coerce(values[v]) ** k
            total = total + term
        return total

    def coefficient_in(self, var: str) -> Dict[int, "MPoly"]:
        """Split as sum_k c_k * var^k; returns {k: c_k} with var removed."""
        if var not in self.variables:
            return {0: self} if self.terms else {}
        i = self.variables.index(var)
        rest = self.variables[:i] + self.variables[i + 1:]
        buckets: Dict[int, Dict[Exponent, BaseElem]] = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {k: MPoly(rest, t, _clean=True) for k, t in buckets.items()}

    # comparison -------------------------------------------------------
    def _sparse(self) -> frozenset:
        return frozenset(
            (tuple((v, k) for v, k in zip(self.variables, e) if k), c) for e, c in self.terms.items()
        )

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MPoly):
            if self.variables == other.variables:
                return self.terms == other.terms
            return self._sparse() == other._sparse()
        c = _coerce_or_none(other)
        if c is None:
            return NotImplemented
        return self.is_constant() and self.constant_value() == c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._sparse())
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def sorted_terms(self) -> list:
        """Terms in canonical order: total degree descending, then lex descending."""
        return sorted(self.terms.items(), key=lambda it: (-sum(it[0]), tuple(-k for k in it[0])))

    def __repr__(self) -> str:
        return f"MPoly({self})"

    def __str__(self) -> str:
        return format_mpoly(self)


def format_monomial(variables: Sequence[str], e: Exponent) -> str:
    parts = []
    for v, k in zip(variables, e):
        if k == 1:
            parts.append(v)
        elif k:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_term(c: BaseElem, mono: str) -> Tuple[bool, str]:
    """Render c*mono as (negative?, body) for signed joining."""
    if not mono and c.den == _ONE and c.num and c.num[-1] < 0:
        # a bare polynomial in t joins the sum term by term
        return True, format_base(c)[1:]
    neg = _nterms(c.num) == 1 and c.num[-1] < 0
    if neg:
        c = -c
    if not mono:
        return neg, format_base(c)
    if c.is_one():
        return neg, mono
    body = format_base(c)
    if not _base_is_atomic(c):
        body = f"({body})"
    return neg, f"{body}*{mono}"


def format_mpoly(p: MPoly) -> str:
    if not p.terms:
        return "0"
    parts = [format_term(c, format_monomial(p.variables, e)) for e, c in p.sorted_terms()]
    return _join_signed(parts)


def coeff_delta(p: MPoly) -> MPoly:
    """Apply d/dt to every coefficient of ``p``."""
    return p.coeff_delta()


def partial(p: MPoly, xi: str) -> MPoly:
    """Formal partial derivative of ``p`` in the variable ``xi``."""
    return p.partial(xi)


def poly_vars(*names: str) -> Tuple[MPoly, ...]:
    """Convenience: generator polynomials on a shared variable list."""
    vs = tuple(sorted(names, key=var_sort_key))
    return tuple(MPoly.var(n, vs) for n in names)
