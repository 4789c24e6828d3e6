"""The function field k(Z) of a product of three copies of y^2 = x^3 - x.

Elements of the coordinate ring k[V] = k[x1,x2,x3,y1,y2,y3]/(yi^2 - xi^3 + xi)
are kept in normal form (every yi-exponent 0 or 1).  Since k[V] is a domain
and the normal form is unique, an element is zero iff its normal form is the
zero polynomial; fractions are compared by cross-multiplication and never
reduced beyond common monomial and scalar factors.

The automorphism g acts by xi -> -xi, yi -> sqrt(-1)*yi.  It has order 4, and
its invariant subfield is generated by the seven elements returned from
:func:`generators`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arith import QI
from .poly import Poly, VarSet, VarSetMismatch

__all__ = [
    "CURVE_VARS",
    "CurveRingElem",
    "FieldElem",
    "GenSet",
    "normal_form",
    "field_arith",
    "apply_g",
    "is_g_invariant",
    "generators",
    "coordinates",
    "curve_relation",
]

CURVE_VARS = VarSet(["x1", "x2", "x3", "y1", "y2", "y3"])
_NCURVES = 3


@lru_cache(maxsize=None)
def _cubic_power(field, i: int, n: int) -> Poly:
    """(xi^3 - xi)^n over CURVE_VARS."""
    x = Poly.var(f"x{i + 1}", CURVE_VARS, field)
    return (x ** 3 - x) ** n


def normal_form(f: Poly) -> CurveRingElem:
    """Rewrite yi^2 -> xi^3 - xi until every yi-exponent is below 2."""
    if f.vars != CURVE_VARS:
        raise VarSetMismatch(f"expected {CURVE_VARS}, got {f.vars}")
    if all(m[3] < 2 and m[4] < 2 and m[5] < 2 for m in f.terms):
        return CurveRingElem(f, _checked=True)
    out = Poly.zero(CURVE_VARS, f.field)
    reduced: dict = {}
    for m, c in f.terms.items():
        if m[3] < 2 and m[4] < 2 and m[5] < 2:
            reduced[m] = reduced[m] + c if m in reduced else c
            continue
        base = list(m)
        t = None
        for i in range(_NCURVES):
            e = m[3 + i]
            base[3 + i] = e & 1
            if e >= 2:
                p = _cubic_power(f.field, i, e >> 1)
                t = p if t is None else t * p
        out = out + t.shift(tuple(base)).scale(c)
    out = out + Poly(reduced, CURVE_VARS, f.field)
    return CurveRingElem(out, _checked=True)


class CurveRingElem:
    """An element of k[V], stored as its normal form."""

    __slots__ = ("poly",)

    def __init__(self, poly: Poly, _checked: bool = False):
        if not _checked:
            poly = normal_form(poly).poly
        self.poly = poly

    @property
    def field(self):
        return self.poly.field

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __bool__(self) -> bool:
        return not self.poly.is_zero()

    def _lift(self, other):
        if isinstance(other, CurveRingElem):
            return other
        if isinstance(other, Poly):
            return normal_form(other)
        try:
            return CurveRingElem(Poly.const(other, CURVE_VARS, self.field), _checked=True)
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CurveRingElem(self.poly + o.poly, _checked=True)

    __radd__ = __add__

    def __neg__(self):
        return CurveRingElem(-self.poly, _checked=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CurveRingElem(self.poly - o.poly, _checked=True)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CurveRingElem(o.poly - self.poly, _checked=True)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return normal_form(self.poly * o.poly)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> CurveRingElem:
        result = CurveRingElem(Poly.const(1, CURVE_VARS, self.field), _checked=True)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.poly == o.poly

    def __hash__(self) -> int:
        return hash(self.poly)

    def __str__(self) -> str:
        return str(self.poly)

    def __repr__(self) -> str:
        return f"CurveRingElem({str(self)!r})"


class FieldElem:
    """A fraction num/den of normal forms, den nonzero."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, CurveRingElem) else normal_form(num)
        if den is None:
            den = CurveRingElem(Poly.const(1, CURVE_VARS, num.field), _checked=True)
        elif not isinstance(den, CurveRingElem):
            den = normal_form(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in k(Z)")
        n, d = num.poly, den.poly
        if n.is_zero():
            d = Poly.const(1, CURVE_VARS, n.field)
        else:
            # Dividing both sides by a common monomial or scalar keeps them normal.
            mn, md = n.monomial_content(), d.monomial_content()
            common = tuple(min(a, b) for a, b in zip(mn, md))
            if any(common):
                n, d = n.unshift(common), d.unshift(common)
            lc = d.leading_coefficient()
            if lc != d.field.one:
                inv = d.field.one / lc
                n, d = n.scale(inv), d.scale(inv)
            if n == d:
                n = d = Poly.const(1, CURVE_VARS, n.field)
        self.num = CurveRingElem(n, _checked=True)
        self.den = CurveRingElem(d, _checked=True)

    @property
    def field(self):
        return self.num.field

    @classmethod
    def const(cls, c, field=QI) -> FieldElem:
        return cls(CurveRingElem(Poly.const(c, CURVE_VARS, field), _checked=True))

    def _lift(self, other):
        if isinstance(other, FieldElem):
            return other
        if isinstance(other, (CurveRingElem, Poly)):
            return FieldElem(other)
        try:
            return FieldElem.const(other, self.field)
        except (TypeError, ValueError):
            return None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return FieldElem(self.num + o.num, self.den)
        return FieldElem(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> FieldElem:
        if self.is_zero():
            raise ZeroDivisionError("division by zero in k(Z)")
        return FieldElem(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> FieldElem:
        if n < 0:
            return self.inverse() ** (-n)
        return FieldElem(self.num ** n, self.den ** n)

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return self.num == o.num
        return self.num * o.den == o.num * self.den

    __hash__ = None

    def __str__(self) -> str:
        if self.den.poly == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"FieldElem({str(self)!r})"

    def to_dict(self) -> dict:
        return {"num": self.num.poly.to_dict(), "den": self.den.poly.to_dict()}

    @classmethod
    def from_dict(cls, data, field=QI) -> FieldElem:
        return cls(Poly.from_dict(data["num"], field), Poly.from_dict(data["den"], field))


def field_arith(f: FieldElem, g: FieldElem, op: str) -> FieldElem:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise ValueError(f"unknown operation {op!r}")


def _g_poly(p: Poly) -> Poly:
    j = p.field.sqrt_minus_one()
    powers = [p.field.one, j, -p.field.one, -j]
    out = {}
    for m, c in p.terms.items():
        sign = -1 if (m[0] + m[1] + m[2]) & 1 else 1
        out[m] = c * powers[(m[3] + m[4] + m[5]) & 3] * sign
    return Poly(out, CURVE_VARS, p.field, _clean=True)


def apply_g(f):
    """Image of f under g: xi -> -xi, yi -> sqrt(-1)*yi."""
    if isinstance(f, FieldElem):
        return FieldElem(CurveRingElem(_g_poly(f.num.poly), _checked=True),
                         CurveRingElem(_g_poly(f.den.poly), _checked=True))
    if isinstance(f, CurveRingElem):
        return CurveRingElem(_g_poly(f.poly), _checked=True)
    return _g_poly(f)


def is_g_invariant(f: FieldElem) -> bool:
    return apply_g(f) == f


def coordinates(field=QI) -> dict[str, FieldElem]:
    """x1, x2, x3, y1, y2, y3 as elements of k(Z)."""
    return {n: FieldElem(Poly.var(n, CURVE_VARS, field)) for n in CURVE_VARS.names}


def curve_relation(i: int, field=QI) -> Poly:
    """yi^2 - xi^3 + xi as a raw (un-reduced) polynomial, i in 1..3."""
    x = Poly.var(f"x{i}", CURVE_VARS, field)
    y = Poly.var(f"y{i}", CURVE_VARS, field)
    return y ** 2 - x ** 3 + x


@dataclass(frozen=True)
class GenSet:
    b2: FieldElem
    b3: FieldElem
    a2: FieldElem
    a3: FieldElem
    u1: FieldElem
    w1: FieldElem
    lam1: FieldElem

    def items(self):
        return [(n, getattr(self, n)) for n in ("b2", "b3", "a2", "a3", "u1", "w1", "lam1")]


def generators(field=QI) -> GenSet:
    c = coordinates(field)
    x1, x2, x3, y1, y2, y3 = (c[n] for n in CURVE_VARS.names)
    return GenSet(
        b2=x2 / x1,
        b3=x3 / x1,
        a2=y2 / y1,
        a3=y3 / y1,
        u1=x1 ** 2,
        w1=y1 ** 4,
        lam1=x1 * y1 ** 2,
    )
