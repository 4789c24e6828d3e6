"""Exact checks of every displayed identity in the unirationality argument.

Each check returns an :class:`IdentityReport` whose witness is the exact
difference ``lhs - rhs`` (a FieldElem in k(Z), or a Poly in a free
polynomial ring).  A report passes iff the witness is zero and every side
condition (typically "this denominator is nonzero") holds.

:func:`mutation_suite` re-runs the same comparisons with one term altered;
each of those must come back with a nonzero witness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Union

from .arith import QI
from .funcfield import (
    CURVE_VARS,
    FieldElem,
    apply_g,
    coordinates,
    curve_relation,
    generators,
    normal_form,
)
from .poly import Poly, VarSet, valuation

__all__ = [
    "IdentityReport",
    "check_I",
    "check_invariance",
    "check_VI",
    "check_order_g",
    "check_VIII_IX",
    "check_X_and_lem3",
    "check_XI_star",
    "check_XII",
    "check_H_forms",
    "check_XIII_XIV",
    "check_not_square",
    "run_all",
    "mutation_suite",
    "H_VARS",
    "h_polynomial",
    "h_polynomial_product_form",
]

Witness = Union[FieldElem, Poly, int]

H_VARS = VarSet(["a", "alpha", "b", "beta"])
SQUARE_VARS = VarSet(["a3", "b2", "b3"])


def _is_zero(w: Witness) -> bool:
    if isinstance(w, int):
        return w == 0
    return w.is_zero()


@dataclass
class IdentityReport:
    label: str
    witness: Witness
    conditions: dict[str, bool] = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return _is_zero(self.witness) and all(self.conditions.values())

    def witness_text(self) -> str:
        return "0" if _is_zero(self.witness) else str(self.witness)

    def to_dict(self) -> dict:
        out = {"id": self.label, "ok": self.ok, "witness": self.witness_text()}
        if self.conditions:
            out["conditions"] = dict(self.conditions)
        if self.info:
            out["info"] = dict(self.info)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def _compare(label: str, lhs, rhs, **conditions: bool) -> IdentityReport:
    return IdentityReport(label, lhs - rhs, dict(conditions))


def _ctx(field_=QI):
    c = coordinates(field_)
    return c, generators(field_)


def check_I(field_=QI) -> list[IdentityReport]:
    """Relation yi^2 = xi(xi^2 - 1), checked by reducing the raw polynomial."""
    return [
        IdentityReport(f"I[i={i}]", normal_form(curve_relation(i, field_)).poly)
        for i in (1, 2, 3)
    ]


def check_invariance(field_=QI) -> list[IdentityReport]:
    gens = generators(field_)
    return [IdentityReport(f"II[{name}]", apply_g(f) - f) for name, f in gens.items()]


def check_VI(field_=QI) -> IdentityReport:
    """y1 is a root of T^4 - w1, the degree bound for k(Z) over L."""
    c, g = _ctx(field_)
    return _compare("VI", c["y1"] ** 4, g.w1)


def check_order_g(field_=QI) -> IdentityReport:
    """g^4 fixes all six coordinates while g^2 moves y1."""
    c = coordinates(field_)
    diff = FieldElem.const(0, field_)
    conditions = {}
    for name, f in c.items():
        img = f
        for _ in range(4):
            img = apply_g(img)
        d = img - f
        conditions[f"g^4({name})={name}"] = d.is_zero()
        diff = diff + d
    y1 = c["y1"]
    conditions["g^2(y1)!=y1"] = not (apply_g(apply_g(y1)) - y1).is_zero()
    return IdentityReport("ord(g)=4", diff, conditions)


def check_VIII_IX(field_=QI) -> tuple[IdentityReport, IdentityReport]:
    c, g = _ctx(field_)
    x1 = c["x1"]
    u1 = g.u1
    viii = _compare("VIII", g.w1, u1 * (u1 - 1) ** 2)
    viii.conditions["w1=x1^2(x1^2-1)^2"] = (g.w1 - x1 ** 2 * (x1 ** 2 - 1) ** 2).is_zero()
    ix = _compare("IX", g.lam1, u1 * (u1 - 1))
    ix.conditions["lam1=x1^2(x1^2-1)"] = (g.lam1 - x1 ** 2 * (x1 ** 2 - 1)).is_zero()
    return viii, ix


def _ab(g, j: int):
    return (g.a2, g.b2) if j == 2 else (g.a3, g.b3)


def check_X_and_lem3(j: int, field_=QI) -> IdentityReport:
    if j not in (2, 3):
        raise ValueError("j must be 2 or 3")
    c, g = _ctx(field_)
    x1, xj = c["x1"], c[f"x{j}"]
    a, b = _ab(g, j)
    rhs = (xj / x1) * ((xj ** 2 - 1) / (x1 ** 2 - 1) - 1)
    # a_j^2 - b_j^3 != 0 is verified directly rather than inferred
    return _compare(
        f"X[j={j}]",
        a ** 2 - b,
        rhs,
        **{f"a{j}^2-b{j}!=0": not (a ** 2 - b).is_zero(), f"a{j}^2-b{j}^3!=0": not (a ** 2 - b ** 3).is_zero()},
    )


def check_XI_star(field_=QI) -> list[IdentityReport]:
    """(**) u1(a_j^2 - b_j^3) = a_j^2 - b_j for j = 2, 3, then both fractions of (XI)."""
    _, g = _ctx(field_)
    out = []
    for j in (2, 3):
        a, b = _ab(g, j)
        out.append(_compare(f"**[j={j}]", g.u1 * (a ** 2 - b ** 3), a ** 2 - b))
    for j in (2, 3):
        a, b = _ab(g, j)
        den = a ** 2 - b ** 3
        out.append(_compare(f"XI[j={j}]", (a ** 2 - b) / den, g.u1, **{f"a{j}^2-b{j}^3!=0": not den.is_zero()}))
    return out


def check_XII(field_=QI) -> IdentityReport:
    _, g = _ctx(field_)
    return _compare(
        "XII",
        (g.a2 ** 2 - g.b2) * (g.a3 ** 2 - g.b3 ** 3),
        (g.a3 ** 2 - g.b3) * (g.a2 ** 2 - g.b2 ** 3),
    )


def h_polynomial_product_form(field_=QI) -> Poly:
    """(a^2 - b)(alpha^2 - beta^3) - (alpha^2 - beta)(a^2 - b^3)."""
    a, al, b, be = H_VARS.gens(field_)
    return (a ** 2 - b) * (al ** 2 - be ** 3) - (al ** 2 - be) * (a ** 2 - b ** 3)


def h_polynomial(field_=QI) -> Poly:
    """a^2 beta(1 - beta^2) - alpha^2 b(1 - b^2) - b beta(b^2 - beta^2)."""
    a, al, b, be = H_VARS.gens(field_)
    return a ** 2 * be * (1 - be ** 2) - al ** 2 * b * (1 - b ** 2) - b * be * (b ** 2 - be ** 2)


def check_H_forms(field_=QI, *, _conic_form: Poly | None = None) -> IdentityReport:
    """Find the sign eps with product form = eps * conic form in k[a, alpha, b, beta]."""
    f1 = h_polynomial_product_form(field_)
    f2 = h_polynomial(field_) if _conic_form is None else _conic_form
    a2al2 = (2, 2, 0, 0)
    if f1 == f2:
        eps = 1
    elif f1 == -f2:
        eps = -1
    else:
        eps = None
    witness = f1 - f2 if eps is None else f1 - f2.scale(eps)
    rep = IdentityReport("H-equivalence", witness, {"no a^2*alpha^2 term": a2al2 not in f1.terms})
    rep.info["epsilon"] = eps
    return rep


def check_XIII_XIV(field_=QI) -> tuple[IdentityReport, IdentityReport]:
    _, g = _ctx(field_)
    a2, a3, b2, b3 = g.a2, g.a3, g.b2, g.b3
    den = b3 * (1 - b3 ** 2)
    num = a3 ** 2 * b2 * (1 - b2 ** 2) + b2 * b3 * (b2 ** 2 - b3 ** 2)
    nonzero = not den.is_zero()
    xiii = _compare("XIII", a2 ** 2 * den, num)
    xiv = _compare("XIV", a2 ** 2, num / den, **{"b3(1-b3^2)!=0": nonzero})
    return xiii, xiv


def _xiv_parts(field_=QI) -> tuple[Poly, Poly]:
    a3, b2, b3 = SQUARE_VARS.gens(field_)
    num = a3 ** 2 * b2 * (1 - b2 ** 2) + b2 * b3 * (b2 ** 2 - b3 ** 2)
    den = b3 * (1 - b3 ** 2)
    return num, den


def _square_report(label: str, num: Poly, den: Poly) -> IdentityReport:
    vn = valuation(num, "b3")
    vd = valuation(den, "b3")
    vnd = valuation(num * den, "b3")
    # b3 is prime in k[a3, b2, b3]; a square has even valuation there
    rep = IdentityReport(
        label,
        (vnd + 1) % 2,
        {"val(N)=0": vn == 0, "val(D)=1": vd == 1, "N not constant": not num.is_constant()},
    )
    rep.info.update({"val_num": vn, "val_den": vd, "val_num_den": vnd})
    return rep


def check_not_square(field_=QI) -> IdentityReport:
    num, den = _xiv_parts(field_)
    return _square_report("not-square", num, den)


def run_all(field_=QI) -> list[IdentityReport]:
    """Every check, in the order the argument uses them."""
    reports = []
    reports += check_I(field_)
    reports += check_invariance(field_)
    reports.append(check_order_g(field_))
    reports.append(check_VI(field_))
    reports += check_VIII_IX(field_)
    reports += [check_X_and_lem3(2, field_), check_X_and_lem3(3, field_)]
    reports += check_XI_star(field_)
    reports.append(check_XII(field_))
    reports.append(check_H_forms(field_))
    reports += check_XIII_XIV(field_)
    reports.append(check_not_square(field_))
    return reports


def mutation_suite(field_=QI) -> list[IdentityReport]:
    """Single-term corruptions of the checked claims; all must fail."""
    c, g = _ctx(field_)
    x1, y1 = c["x1"], c["y1"]
    u1 = g.u1
    out = []

    x1p = Poly.var("x1", CURVE_VARS, field_)
    y1p = Poly.var("y1", CURVE_VARS, field_)
    out.append(IdentityReport("I*", normal_form(y1p ** 2 - x1p ** 3 - x1p).poly))
    out.append(IdentityReport("II*[x1]", apply_g(x1) - x1))
    out.append(IdentityReport("ord(g)*", apply_g(apply_g(y1)) - y1))
    out.append(_compare("VI*", y1 ** 4, g.lam1))
    out.append(_compare("VIII*", g.w1, u1 * (u1 - 1)))
    out.append(_compare("IX*", g.lam1, u1 * (u1 + 1)))
    for j in (2, 3):
        a, b = _ab(g, j)
        xj = c[f"x{j}"]
        out.append(_compare(f"X*[j={j}]", a ** 2 - b, (xj / x1) * ((xj ** 2 + 1) / (x1 ** 2 - 1) - 1)))
    out.append(_compare("***[j=2]", u1 * (g.a2 ** 2 - g.b2 ** 2), g.a2 ** 2 - g.b2))
    out.append(_compare("XI*[j=3]", (g.a3 ** 2 - g.b3) / (g.a3 ** 2 - g.b3 ** 2), u1))
    out.append(_compare(
        "XII*",
        (g.a2 ** 2 - g.b2) * (g.a3 ** 2 - g.b3 ** 3),
        (g.a3 ** 2 - g.b3) * (g.a2 ** 2 - g.b2 ** 2),
    ))
    a2, a3, b2, b3 = g.a2, g.a3, g.b2, g.b3
    out.append(_compare(
        "XIII*",
        a2 ** 2 * b3 * (1 - b3 ** 2),
        a3 ** 2 * b2 * (1 - b2 ** 2) - b2 * b3 * (b2 ** 2 - b3 ** 2),
    ))
    out.append(_compare(
        "XIV*",
        a2 ** 2,
        (a3 ** 2 * b2 * (1 - b2 ** 2) + b2 * b3 * (b2 ** 2 - b3 ** 2)) / (b3 * (1 + b3 ** 2)),
    ))
    a, al, b, be = H_VARS.gens(field_)
    flipped = a ** 2 * be * (1 - be ** 2) - al ** 2 * b * (1 - b ** 2) + b * be * (b ** 2 - be ** 2)
    h = check_H_forms(field_, _conic_form=flipped)
    h.label = "H-equivalence*"
    out.append(h)
    num, _ = _xiv_parts(field_)
    _, _, b3p = SQUARE_VARS.gens(field_)
    out.append(_square_report("not-square*", num, b3p ** 2 * (1 - b3p ** 2)))
    return out
