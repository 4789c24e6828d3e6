"""Rational functions num/den over a VarSet, and polynomial substitution.

Fractions are only lightly normalized on construction (common monomial
factor removed, denominator made monic).  Equality is cross-multiplication,
so no gcd is needed to decide it; :meth:`RatFunc.reduced` performs the full
gcd cancellation when a canonical form is wanted, e.g. for JSON output.
"""

from __future__ import annotations

from typing import Mapping

from .arith import QI
from .poly import Poly, VarSet, VarSetMismatch, gcd

__all__ = ["RatFunc", "substitute", "as_ratfunc"]


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.const(1, num.vars, num.field)
        elif den.vars != num.vars or den.field != num.field:
            raise VarSetMismatch("numerator and denominator over different rings")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = Poly.const(1, num.vars, num.field)
        elif not den.is_constant():
            mn, md = num.monomial_content(), den.monomial_content()
            common = tuple(min(a, b) for a, b in zip(mn, md))
            if any(common):
                num, den = num.unshift(common), den.unshift(common)
        lc = den.leading_coefficient()
        if lc != den.field.one:
            inv = den.field.one / lc
            num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @property
    def vars(self) -> VarSet:
        return self.num.vars

    @property
    def field(self):
        return self.num.field

    @classmethod
    def const(cls, c, vars: VarSet, field=QI) -> RatFunc:
        return cls(Poly.const(c, vars, field))

    @classmethod
    def var(cls, name: str, vars: VarSet, field=QI) -> RatFunc:
        return cls(Poly.var(name, vars, field))

    def _lift(self, other) -> RatFunc | None:
        if isinstance(other, RatFunc):
            if other.vars != self.vars:
                raise VarSetMismatch(f"{self.vars} vs {other.vars}")
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        try:
            return RatFunc(Poly.const(self.field(other), self.vars, self.field))
        except (TypeError, ValueError):
            return None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den)

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
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if n1 == d2:
            return RatFunc(n2, d1)
        if n2 == d1:
            return RatFunc(n1, d2)
        return RatFunc(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

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

    def __pow__(self, n: int) -> RatFunc:
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return self.num == o.num
        return self.num * o.den == o.num * self.den

    __hash__ = None  # equality is not structural

    def reduced(self) -> RatFunc:
        """Cancel the full gcd of numerator and denominator."""
        if self.num.is_zero() or self.den.is_constant():
            return self
        g = gcd(self.num, self.den)
        if g.is_constant():
            return self
        return RatFunc(self.num.divide_exact(g), self.den.divide_exact(g))

    def diff(self, var: str) -> RatFunc:
        n, d = self.num, self.den
        if d.is_constant():
            return RatFunc(n.diff(var), d)
        return RatFunc(n.diff(var) * d - n * d.diff(var), d * d)

    def evaluate(self, point):
        dv = self.den.evaluate(point)
        if not dv:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.evaluate(point) / dv

    def substitute(self, assignment: Mapping, target: VarSet | None = None) -> RatFunc:
        return substitute(self.num, assignment, target) / substitute(self.den, assignment, target)

    def embed(self, vars: VarSet) -> RatFunc:
        return RatFunc(self.num.embed(vars), self.den.embed(vars))

    def __str__(self) -> str:
        if self.den.is_constant() and self.den.constant_value() == self.field.one:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({str(self)!r})"

    def to_dict(self, reduce: bool = True) -> dict:
        r = self.reduced() if reduce else self
        return {"num": r.num.to_dict(), "den": r.den.to_dict()}

    @classmethod
    def from_dict(cls, data: Mapping, field=QI) -> RatFunc:
        return cls(Poly.from_dict(data["num"], field), Poly.from_dict(data["den"], field))


def as_ratfunc(value, vars: VarSet, field=QI) -> RatFunc:
    if isinstance(value, RatFunc):
        return value if value.vars == vars else value.embed(vars)
    if isinstance(value, Poly):
        return RatFunc(value if value.vars == vars else value.embed(vars))
    return RatFunc.const(value, vars, field)


def substitute(f: Poly, assignment: Mapping, target: VarSet | None = None) -> RatFunc:
    """Compose f with ``assignment`` (variable name -> rational function).

    Every variable of f must be assigned.  Values may be RatFunc, Poly or
    scalars; the result lives over ``target`` (inferred from the values when
    omitted).  The result is computed over a single common denominator
    prod(den_v ** deg_v f), so at most one division happens.
    """
    if target is None:
        target = next(
            (v.vars for v in assignment.values() if isinstance(v, (Poly, RatFunc))), f.vars
        )
    missing = [n for n in f.vars.names if n not in assignment]
    if missing:
        raise VarSetMismatch(f"unassigned variables {missing}")
    field = f.field
    vals = [as_ratfunc(assignment[n], target, field) for n in f.vars.names]
    degs = [f.degree(k) if f.terms else 0 for k in range(len(f.vars))]
    one = Poly.const(1, target, field)

    num_pows, den_pows = [], []
    for k, r in enumerate(vals):
        e = max(degs[k], 0)
        np_ = [one]
        dp = [one]
        for _ in range(e):
            np_.append(np_[-1] * r.num)
            if r.den.is_constant() and r.den.constant_value() == field.one:
                dp.append(one)
            else:
                dp.append(dp[-1] * r.den)
        num_pows.append(np_)
        den_pows.append(dp)

    num = Poly.zero(target, field)
    for m, c in f.terms.items():
        t = Poly.const(c, target, field)
        for k, e in enumerate(m):
            if degs[k] > 0:
                if e:
                    t = t * num_pows[k][e]
                if degs[k] - e:
                    t = t * den_pows[k][degs[k] - e]
        num = num + t
    den = one
    for k in range(len(vals)):
        if degs[k] > 0:
            den = den * den_pows[k][degs[k]]
    return RatFunc(num, den)
