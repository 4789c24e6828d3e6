"""Sparse multivariate polynomials over an abstract coefficient field.

A :class:`Poly` is a dict from dense exponent tuples to nonzero coefficients,
tied to a :class:`VarSet` (ordered variable names) and a coefficient field
(``arith.QI`` or an ``arith.PrimeField``).  Terms are kept in graded
lexicographic order whenever they are listed or serialized.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .arith import QI

__all__ = [
    "VarSet",
    "Poly",
    "VarSetMismatch",
    "NotDivisible",
    "UndefinedValuation",
    "poly_arith",
    "gcd",
    "valuation",
    "partial_derivative",
]


class VarSetMismatch(ValueError):
    """Operands live over different variable sets or fields."""


class NotDivisible(ArithmeticError):
    pass


class UndefinedValuation(ValueError):
    pass


@dataclass(frozen=True)
class VarSet:
    names: tuple[str, ...]

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        object.__setattr__(self, "names", names)

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name) -> bool:
        return name in self.names

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise VarSetMismatch(f"{name!r} is not a variable of {list(self.names)}") from None

    def gens(self, field=QI) -> tuple[Poly, ...]:
        return tuple(Poly.var(n, self, field) for n in self.names)

    def extend(self, *names: str) -> VarSet:
        return VarSet(self.names + tuple(n for n in names if n not in self.names))

    def __repr__(self) -> str:
        return f"VarSet({list(self.names)})"


def _grlex_key(m: tuple[int, ...]):
    return (sum(m), m)


class Poly:
    __slots__ = ("vars", "field", "terms")

    def __init__(self, terms: Mapping[tuple[int, ...], object], vars: VarSet, field=QI, _clean=False):
        self.vars = vars
        self.field = field
        if _clean:
            self.terms = dict(terms)
            return
        n = len(vars)
        clean = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != n:
                raise VarSetMismatch(f"exponent vector {m} does not match {vars}")
            c = field(c)
            if c:
                clean[m] = clean[m] + c if m in clean else c
                if not clean[m]:
                    del clean[m]
        self.terms = clean

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, vars: VarSet, field=QI) -> Poly:
        return cls({}, vars, field, _clean=True)

    @classmethod
    def const(cls, c, vars: VarSet, field=QI) -> Poly:
        c = field(c)
        if not c:
            return cls.zero(vars, field)
        return cls({(0,) * len(vars): c}, vars, field, _clean=True)

    @classmethod
    def var(cls, name: str, vars: VarSet, field=QI) -> Poly:
        m = [0] * len(vars)
        m[vars.index(name)] = 1
        return cls({tuple(m): field.one}, vars, field, _clean=True)

    @classmethod
    def monomial(cls, exps: Iterable[int], vars: VarSet, coef=1, field=QI) -> Poly:
        return cls({tuple(exps): coef}, vars, field)

    def _like(self, terms) -> Poly:
        return Poly(terms, self.vars, self.field, _clean=True)

    def _lift(self, other) -> Poly | None:
        if isinstance(other, Poly):
            if other.vars != self.vars or other.field != self.field:
                raise VarSetMismatch(f"{self.vars}/{self.field!r} vs {other.vars}/{other.field!r}")
            return other
        try:
            return Poly.const(self.field(other), self.vars, self.field)
        except (TypeError, ValueError):
            return None

    # inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        return self.terms.get((0,) * len(self.vars), self.field.zero)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree(self, var: str | int) -> int:
        k = var if isinstance(var, int) else self.vars.index(var)
        if not self.terms:
            return -1
        return max(m[k] for m in self.terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_monomial(self) -> tuple[int, ...]:
        return max(self.terms, key=_grlex_key)

    def leading_coefficient(self):
        if not self.terms:
            return self.field.zero
        return self.terms[self.leading_monomial()]

    def monic(self) -> Poly:
        if not self.terms:
            return self
        inv = self.field.one / self.leading_coefficient()
        return self._like({m: c * inv for m, c in self.terms.items()})

    def variables_used(self) -> set[int]:
        used = set()
        for m in self.terms:
            used.update(k for k, e in enumerate(m) if e)
        return used

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if len(o.terms) > len(self.terms):
            big, small = o.terms, self.terms
        else:
            big, small = self.terms, o.terms
        out = dict(big)
        for m, c in small.items():
            if m in out:
                s = out[m] + c
                if s:
                    out[m] = s
                else:
                    del out[m]
            else:
                out[m] = c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return self._like({m: -c for m, c in self.terms.items()})

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
        if not self.terms or not o.terms:
            return self._like({})
        if o.is_constant():
            c = o.constant_value()
            return self._like({m: a * c for m, a in self.terms.items()})
        if self.is_constant():
            c = self.constant_value()
            return self._like({m: c * a for m, a in o.terms.items()})
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = tuple([a + b for a, b in zip(m1, m2)])
                if m in out:
                    out[m] = out[m] + c1 * c2
                else:
                    out[m] = c1 * c2
        return self._like({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative exponent")
        result = Poly.const(1, self.vars, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> Poly:
        c = self.field(c)
        if not c:
            return self._like({})
        return self._like({m: a * c for m, a in self.terms.items()})

    def shift(self, exps: tuple[int, ...]) -> Poly:
        """Multiply by the monomial with exponent vector ``exps``."""
        return self._like({tuple([a + b for a, b in zip(m, exps)]): c for m, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.vars == other.vars and self.field == other.field and self.terms == other.terms
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    def divide_exact(self, g: Poly) -> Poly:
        """Return q with self = q*g, raising NotDivisible otherwise."""
        g = self._lift(g)
        if not g.terms:
            raise ZeroDivisionError("polynomial division by zero")
        if g.is_constant():
            return self.scale(self.field.one / g.constant_value())
        lm = g.leading_monomial()
        inv = self.field.one / g.terms[lm]
        rem = dict(self.terms)
        quot = {}
        while rem:
            m = max(rem, key=_grlex_key)
            d = tuple([a - b for a, b in zip(m, lm)])
            if min(d) < 0:
                raise NotDivisible("polynomial division is not exact")
            c = rem[m] * inv
            quot[d] = c
            for mg, cg in g.terms.items():
                mm = tuple([a + b for a, b in zip(mg, d)])
                v = rem.get(mm, self.field.zero) - c * cg
                if v:
                    rem[mm] = v
                else:
                    rem.pop(mm, None)
        return self._like(quot)

    def monomial_content(self) -> tuple[int, ...]:
        """Exponent-wise minimum over all terms (the largest monomial divisor)."""
        if not self.terms:
            return (0,) * len(self.vars)
        it = iter(self.terms)
        low = list(next(it))
        for m in it:
            for k, e in enumerate(m):
                if e < low[k]:
                    low[k] = e
        return tuple(low)

    def unshift(self, exps: tuple[int, ...]) -> Poly:
        return self._like({tuple([a - b for a, b in zip(m, exps)]): c for m, c in self.terms.items()})

    # calculus, evaluation, substitution ---------------------------------

    def diff(self, var: str | int) -> Poly:
        k = var if isinstance(var, int) else self.vars.index(var)
        out = {}
        for m, c in self.terms.items():
            e = m[k]
            if e:
                mm = list(m)
                mm[k] = e - 1
                out[tuple(mm)] = c * e
        return Poly(out, self.vars, self.field)

    def coefficients_in(self, var: str | int) -> dict[int, Poly]:
        """View as a univariate polynomial in ``var``: power -> coefficient."""
        k = var if isinstance(var, int) else self.vars.index(var)
        groups: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = m[k]
            mm = m[:k] + (0,) + m[k + 1:]
            groups.setdefault(e, {})[mm] = c
        return {e: self._like(t) for e, t in groups.items()}

    def evaluate(self, point):
        """Evaluate at a full point: a mapping name -> value or a sequence."""
        if isinstance(point, Mapping):
            vals = [self.field(point[n]) for n in self.vars.names]
        else:
            vals = [self.field(v) for v in point]
            if len(vals) != len(self.vars):
                raise VarSetMismatch("point has the wrong number of coordinates")
        acc = self.field.zero
        cache: dict = {}
        for m, c in self.terms.items():
            t = c
            for k, e in enumerate(m):
                if e:
                    key = (k, e)
                    if key not in cache:
                        cache[key] = vals[k] ** e
                    t = t * cache[key]
            acc = acc + t
        return acc

    def specialize(self, values: Mapping[str, object]) -> Poly:
        """Substitute scalars for some variables, keeping the VarSet."""
        idx = {self.vars.index(n): self.field(v) for n, v in values.items()}
        out: dict = {}
        for m, c in self.terms.items():
            mm = list(m)
            for k, v in idx.items():
                if mm[k]:
                    c = c * v ** mm[k]
                    mm[k] = 0
            if c:
                mm = tuple(mm)
                out[mm] = out[mm] + c if mm in out else c
        return Poly(out, self.vars, self.field)

    def embed(self, vars: VarSet) -> Poly:
        """Re-express over another VarSet, matching variables by name."""
        if vars == self.vars:
            return self
        pos = [vars.index(n) for n in self.vars.names]
        out = {}
        n = len(vars)
        for m, c in self.terms.items():
            mm = [0] * n
            for k, e in enumerate(m):
                if e:
                    mm[pos[k]] = e
            out[tuple(mm)] = c
        # names absent from the target are only allowed with exponent 0
        for k, name in enumerate(self.vars.names):
            if name not in vars and any(m[k] for m in self.terms):
                raise VarSetMismatch(f"{name!r} occurs but is missing from {vars}")
        return Poly(out, vars, self.field, _clean=True)

    def restrict(self, vars: VarSet) -> Poly:
        """Drop variables that do not occur; inverse of :meth:`embed`."""
        out = {}
        src = [self.vars.index(n) for n in vars.names]
        for k, name in enumerate(self.vars.names):
            if name not in vars and any(m[k] for m in self.terms):
                raise VarSetMismatch(f"{name!r} occurs but is missing from {vars}")
        for m, c in self.terms.items():
            out[tuple(m[k] for k in src)] = c
        return Poly(out, vars, self.field, _clean=True)

    def map_coefficients(self, fn, field=None) -> Poly:
        field = field or self.field
        return Poly({m: fn(c) for m, c in self.terms.items()}, self.vars, field)

    # text and JSON ------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                (n if e == 1 else f"{n}^{e}") for n, e in zip(self.vars.names, m) if e
            )
            cs = c.encode()
            neg = cs.startswith("-") and "+" not in cs[1:] and "-" not in cs[1:]
            if neg:
                cs = cs[1:]
            if ("+" in cs or "-" in cs) and mono:
                cs = f"({cs})"
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            parts.append(("-" if neg else "+", body))
        out = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, vars={list(self.vars.names)})"

    def to_dict(self) -> dict:
        return {
            "vars": list(self.vars.names),
            "terms": [{"exps": list(m), "coef": c.encode()} for m, c in self.sorted_terms()],
        }

    @classmethod
    def from_dict(cls, data: Mapping, field=QI) -> Poly:
        vars = VarSet(data["vars"])
        return cls({tuple(t["exps"]): field.parse(t["coef"]) for t in data["terms"]}, vars, field)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str, field=QI) -> Poly:
        return cls.from_dict(json.loads(text), field)


def poly_arith(f: Poly, g: Poly | int, op: str) -> Poly:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "pow":
        if not isinstance(g, int) or g < 0:
            raise ValueError("pow needs a non-negative integer exponent")
        return f ** g
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(f: Poly, v: str) -> Poly:
    return f.diff(v)


def valuation(f: Poly, v: str) -> int:
    """Largest e such that v**e divides f."""
    if f.is_zero():
        raise UndefinedValuation("valuation of the zero polynomial")
    k = f.vars.index(v)
    return min(m[k] for m in f.terms)


# gcd: recursive content / primitive part, primitive PRS in the last live variable


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd of f and g; gcd(f, 0) is f made monic."""
    g = f._lift(g)
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    return _gcd(f, g)


def _one(f: Poly) -> Poly:
    return Poly.const(1, f.vars, f.field)


def _gcd(f: Poly, g: Poly) -> Poly:
    if f.is_constant() or g.is_constant():
        return _one(f)
    # cheap common monomial factor first
    mf, mg = f.monomial_content(), g.monomial_content()
    mono = tuple(min(a, b) for a, b in zip(mf, mg))
    if any(mf) or any(mg):
        rest = _gcd_nomono(f.unshift(mf), g.unshift(mg))
        return rest.shift(mono)
    return _gcd_nomono(f, g)


def _gcd_nomono(f: Poly, g: Poly) -> Poly:
    if f.is_constant() or g.is_constant():
        return _one(f)
    if f == g:
        return f.monic()
    k = max(f.variables_used() | g.variables_used())
    df, dg = f.degree(k), g.degree(k)
    if df == 0:
        return _gcd(f, _content(g, k))
    if dg == 0:
        return _gcd(_content(f, k), g)
    cf, cg = _content(f, k), _content(g, k)
    c = _gcd(cf, cg)
    a, b = f.divide_exact(cf), g.divide_exact(cg)
    if a.degree(k) < b.degree(k):
        a, b = b, a
    while b:
        r = _prem(a, b, k)
        a, b = b, (_primitive(r, k) if r else r)
    return (c * _primitive(a, k)).monic()


def _content(f: Poly, k: int) -> Poly:
    coeffs = sorted(f.coefficients_in(k).values(), key=lambda p: len(p.terms))
    acc = coeffs[0].monic()
    for c in coeffs[1:]:
        if acc.is_constant():
            break
        acc = _gcd(acc, c)
    return acc


def _primitive(f: Poly, k: int) -> Poly:
    return f.divide_exact(_content(f, k)).monic()


def _prem(a: Poly, b: Poly, k: int) -> Poly:
    db = b.degree(k)
    cb = b.coefficients_in(k)
    lcb = cb[db]
    unit = [0] * len(a.vars)
    while a and a.degree(k) >= db:
        da = a.degree(k)
        lca = a.coefficients_in(k)[da]
        unit[k] = da - db
        a = a * lcb - (lca * b).shift(tuple(unit))
    return a

